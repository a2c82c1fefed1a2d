#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "satfrac/intmat.hpp"

namespace satfrac {

enum class Tri { kFalse, kTrue, kUnknown };

// A square submatrix pinned by row and column indices, with its determinant.
struct MinorCertificate {
  std::vector<int> rows;
  std::vector<int> cols;
  Int value;
};

struct UnimodularityReport {
  // All nonzero rank-size minors share one absolute value.
  Tri unimodular = Tri::kUnknown;
  // Every square submatrix has determinant -1, 0 or 1.
  Tri totally_unimodular = Tri::kUnknown;
  // Shared absolute value of the maximal minors when unimodular.
  std::optional<Int> minor_magnitude;
  // Witness for a negative answer: a maximal minor differing in magnitude
  // from reference_minor (unimodularity), or a small minor outside {-1,0,1}
  // (total unimodularity, when one is cheap to extract).
  std::optional<MinorCertificate> reference_minor;
  std::optional<MinorCertificate> violating_minor;
  // Row subset with no valid signing (total unimodularity refutation).
  std::optional<std::vector<int>> violating_rows;
};

struct UnimodularOptions {
  // Node budget for the subset searches; exceeding it yields kUnknown.
  // 0 = unlimited.
  std::int64_t max_work = 50'000'000;
};

// Decides whether all nonzero rank-size minors of `a` have the same absolute
// value, sweeping whichever of the matrix and its kernel representation has
// smaller rank (complementary maximal minors agree up to one global factor).
// A refutation stops at the first mismatched pair of bases.
UnimodularityReport is_unimodular(const IntMatrix& a, const UnimodularOptions& opts = {});

// Decides total unimodularity via the row-signing characterization: the
// matrix is totally unimodular iff every subset of rows can be split into
// two parts whose difference of partial sums is a 0/+-1 vector.  Runs on the
// transpose when that is the cheaper side.  A true verdict also settles
// unimodularity for full-row-rank matrices.
UnimodularityReport is_totally_unimodular(const IntMatrix& a,
                                          const UnimodularOptions& opts = {});

// The block matrix [[A, 0], [I, I]] on doubled columns.  Total
// unimodularity is preserved by this construction, and its kernel consists
// of the pairs (u, -u) with A u = 0.
IntMatrix lawrence_lifting(const IntMatrix& a);

}  // namespace satfrac
