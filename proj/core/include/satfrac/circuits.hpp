#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "satfrac/design.hpp"
#include "satfrac/intmat.hpp"
#include "satfrac/kernel_vector.hpp"

namespace satfrac {

struct CircuitOptions {
  enum class Orientation {
    kAuto,    // pick the cheaper sweep from the matrix shape
    kPrimal,  // enumerate independent rank-size column subsets (bases)
    kDual,    // enumerate corank-1 flats of the kernel representation
  };
  Orientation orientation = Orientation::kAuto;
  int threads = 1;
  // Guard: abort with LimitError when more distinct circuits than this show
  // up (0 = unlimited).
  std::int64_t max_circuits = 0;
};

// The complete set of circuits (support-minimal primitive kernel vectors,
// one per sign pair) of an integer matrix.
struct CircuitBasis {
  std::string source_digest;  // matrix_digest of the matrix they belong to
  int K = 0;                  // vector length = matrix column count
  int rank = 0;               // rank of the matrix
  std::vector<KernelVector> circuits;  // sorted by canonical_less
};

// Enumerates every circuit of `a`.  Exact over arbitrary precision; the
// fast 64-bit path is used while it provably does not overflow.
CircuitBasis enumerate_circuits(const IntMatrix& a, const CircuitOptions& opts = {});

// The unique (up to sign) kernel vector supported inside basis_cols + {e}:
// basis_cols must be independent columns, e a column dependent on them.
// Returned in canonical form.
KernelVector fundamental_circuit(const IntMatrix& a, const std::vector<int>& basis_cols,
                                 int e);

// Circuits with support size <= max_support, order preserved.
std::vector<KernelVector> filter_by_support_size(const std::vector<KernelVector>& vectors,
                                                 int max_support);

// A group of kernel vectors that look alike: either a true orbit of the
// design symmetry group (orbit_classes) or a value-pattern class
// (value_pattern_classes).  Classes are sorted by representative.
struct VectorClass {
  KernelVector representative;  // canonical_less-minimal member
  std::int64_t size = 0;
};

// The multiset of signed nonzero entries, normalized up to global sign:
// entries sorted ascending, overall sign chosen to make the sequence
// lexicographically smallest.  Constant on symmetry orbits.
std::vector<std::int32_t> value_pattern(const KernelVector& v);

// Partition by value_pattern.  This is the coarse, design-independent
// grouping used in summaries ("classes"); every symmetry orbit lies inside
// exactly one value-pattern class.
std::vector<VectorClass> value_pattern_classes(const std::vector<KernelVector>& vectors);

// Partition of `vectors` (indexed by design points) into true orbits of the
// design symmetry group (level permutations within each factor combined
// with permutations of factors that have equal level counts), vectors
// identified up to sign.  Requires the set to be closed under the group
// action, which holds for circuit sets and Graver bases of design matrices.
std::vector<VectorClass> orbit_classes(const std::vector<KernelVector>& vectors,
                                       const FactorialDesign& design);

// The cell permutations generating the design symmetry group: one adjacent
// level transposition per factor and level, plus one swap per adjacent pair
// of equal-level factors.  Each permutation maps point index i to perm[i].
std::vector<std::vector<std::int64_t>> symmetry_generators(const FactorialDesign& design);

}  // namespace satfrac
