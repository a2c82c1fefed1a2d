#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "satfrac/intmat.hpp"
#include "satfrac/kernel_vector.hpp"

namespace satfrac {

struct GraverOptions {
  int threads = 1;  // used while enumerating the circuit seed
  // Seed the pair completion with the full circuit set on top of a kernel
  // lattice basis.  Circuits are always Graver elements, so a warm start
  // hands the completion most of its final set up front; disabling it gives
  // an independently seeded run for cross-checking.
  bool warm_start_with_circuits = true;
  // Precomputed circuit set to use as the warm-start seed; each vector is
  // validated against the matrix.  When null, circuits are enumerated on
  // demand.  Ignored unless warm_start_with_circuits is set.
  const std::vector<KernelVector>* circuit_seed = nullptr;
  // Guards; 0 = unlimited.  When a guard trips, graver_basis throws
  // LimitError unless allow_partial is set, in which case the elements found
  // so far are returned with complete = false.  A truncated completion may
  // contain vectors a longer run would have removed and may miss true
  // elements, but it always retains every seeded circuit.
  std::int64_t max_elements = 0;
  std::int64_t max_pair_ops = 0;
  bool allow_partial = false;
};

// Graver basis: all conformally-minimal nonzero integer kernel vectors,
// one per sign pair.
struct GraverBasis {
  std::string source_digest;
  int K = 0;
  int rank = 0;
  bool complete = true;
  std::vector<KernelVector> elements;  // sorted by canonical_less
};

GraverBasis graver_basis(const IntMatrix& a, const GraverOptions& opts = {});

// Conformal normal form: repeatedly subtract basis elements g (either sign)
// with g+ <= v+ and g- <= v- entrywise until none applies.  The result is
// zero exactly when v is a conformal sum of basis elements.
IntVector conformal_reduce(IntVector v, const std::vector<KernelVector>& basis);

// True iff no basis element other than +-v conformally dominates v.
// Precondition: v lies in the kernel the basis was computed from.
bool is_primitive(const KernelVector& v, const GraverBasis& basis);
bool is_primitive(const KernelVector& v, const IntMatrix& a);

}  // namespace satfrac
