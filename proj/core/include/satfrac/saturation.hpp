#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "satfrac/circuits.hpp"
#include "satfrac/design.hpp"
#include "satfrac/intmat.hpp"

namespace satfrac {

enum class SaturationMethod { kCircuits, kDeterminant };

struct SaturationReport {
  bool saturated = false;
  SaturationMethod method = SaturationMethod::kCircuits;
  // Circuit route: the first circuit (in basis order) whose support lies
  // inside the fraction, present exactly when not saturated.
  std::optional<KernelVector> blocking_circuit;
  // Determinant route: det of the fraction's design submatrix.
  std::optional<Int> determinant;
};

// Precomputed support bitmasks for repeated saturation checks against one
// circuit set.  Only circuits whose support can fit in a p-point fraction
// are kept.
class CircuitSupportIndex {
 public:
  CircuitSupportIndex(const CircuitBasis& basis, int p);

  int p() const { return p_; }

  // Index (into the retained list) of the first circuit whose support is
  // contained in the point set, or nullopt.
  std::optional<std::size_t> first_contained(const std::vector<std::int64_t>& points) const;
  const KernelVector& circuit(std::size_t i) const { return circuits_[i]; }

 private:
  friend struct SaturationCountAccess;
  int K_;
  int p_;
  int words_;
  std::vector<KernelVector> circuits_;
  std::vector<std::uint64_t> masks_;  // circuit i occupies words_ entries at i*words_
};

// A fraction with exactly p = rank points is saturated iff its design
// submatrix is nonsingular.  The circuit route decides this containment-
// only; the determinant route eliminates the submatrix directly.  The two
// always agree.
SaturationReport is_saturated_by_circuits(const Fraction& fraction,
                                          const CircuitBasis& basis);
SaturationReport is_saturated_by_circuits(const Fraction& fraction,
                                          const CircuitSupportIndex& index);
SaturationReport is_saturated_by_determinant(const Fraction& fraction, const IntMatrix& a);

struct SaturationCounts {
  Int total = 0;       // all p-subsets of the design
  Int saturated = 0;
  Int non_saturated = 0;
};

struct CountOptions {
  int threads = 1;
  // Guard for the explicit-subset (circuit) route; 0 = unlimited.
  std::int64_t max_subsets = 0;
};

// Counts saturated fractions by sweeping independent column subsets
// (rank-based; never visits singular subsets explicitly).
SaturationCounts count_saturated(const IntMatrix& a, const CountOptions& opts = {});

// Same count via the circuit criterion over explicit p-subsets; slower but
// independent of the elimination machinery.
SaturationCounts count_saturated_by_circuits(const IntMatrix& a, const CircuitBasis& basis,
                                             const CountOptions& opts = {});

// Emits a 0/1 integer feasibility program in CPLEX LP format whose solutions
// are exactly the saturated p-point fractions: one binary variable per
// design point, one cover constraint per circuit support, one cardinality
// constraint.
void export_ilp(const CircuitBasis& basis, int p, std::ostream& os);

}  // namespace satfrac
