#include "satfrac/unimodular.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "internal/checked_int.hpp"
#include "internal/sweep.hpp"
#include "satfrac/errors.hpp"

namespace satfrac {

namespace {

struct WorkBudget {
  std::int64_t left;
  bool unlimited;

  explicit WorkBudget(std::int64_t max_work)
      : left(max_work), unlimited(max_work == 0) {}

  // Returns false when the budget is exhausted.
  bool spend() {
    if (unlimited) return true;
    return --left >= 0;
  }
};

struct BudgetExhausted {};

// Sweeps all bases of `m`, tracking the absolute values of their
// determinants; stops at the first mismatch.  Returns kTrue/kFalse with the
// witnessing column sets, or kUnknown on budget exhaustion.
Tri sweep_equal_minors(const IntMatrix& m, WorkBudget& budget, Int& magnitude,
                       std::vector<int>& first_cols, std::vector<int>& bad_cols) {
  const int r = rank(m);
  detail::SubsetSweep<Int> sweep(m, r);
  bool have_first = false;
  try {
    detail::for_each_independent_subset(sweep, r, [&] {
      if (!budget.spend()) throw BudgetExhausted{};
      Int d = sweep.pivot(r);
      if (d < 0) d = -d;
      if (!have_first) {
        have_first = true;
        magnitude = d;
        first_cols = sweep.chosen_cols();
      } else if (d != magnitude) {
        bad_cols = sweep.chosen_cols();
        throw detail::StopEnumeration{};
      }
    });
  } catch (const BudgetExhausted&) {
    return Tri::kUnknown;
  } catch (const detail::StopEnumeration&) {
    return Tri::kFalse;
  }
  return Tri::kTrue;
}

std::vector<int> complement_of(const std::vector<int>& cols, int k) {
  std::vector<char> in(k, 0);
  for (int c : cols) in[c] = 1;
  std::vector<int> out;
  out.reserve(k - cols.size());
  for (int c = 0; c < k; ++c) {
    if (in[c] == 0) out.push_back(c);
  }
  return out;
}

}  // namespace

UnimodularityReport is_unimodular(const IntMatrix& a, const UnimodularOptions& opts) {
  UnimodularityReport report;
  const int K = a.cols();
  const int r = rank(a);
  if (r != a.rows()) {
    throw std::invalid_argument("is_unimodular: matrix must have full row rank");
  }
  WorkBudget budget(opts.max_work);

  std::vector<int> all_rows(r);
  for (int i = 0; i < r; ++i) all_rows[i] = i;

  Int magnitude;
  std::vector<int> first_cols, bad_cols;
  const bool use_dual = K - r < r;
  Tri verdict;
  if (!use_dual) {
    verdict = sweep_equal_minors(a, budget, magnitude, first_cols, bad_cols);
  } else {
    // Complementary maximal minors of a kernel lattice basis match those of
    // the matrix up to one global factor, so equality of magnitudes can be
    // decided on the smaller-rank side.  Certificates are complemented back
    // and their determinants recomputed on `a`.
    const std::vector<IntVector> kernel = kernel_lattice_basis(a);
    const int rp = static_cast<int>(kernel.size());
    IntMatrix g(rp, K);
    for (int i = 0; i < rp; ++i) {
      for (int c = 0; c < K; ++c) g.at(i, c) = kernel[i][c];
    }
    verdict = sweep_equal_minors(g, budget, magnitude, first_cols, bad_cols);
    if (verdict != Tri::kUnknown) {
      first_cols = complement_of(first_cols, K);
      if (verdict == Tri::kFalse) bad_cols = complement_of(bad_cols, K);
      magnitude = abs(determinant(a.select_columns(first_cols)));
    }
  }

  report.unimodular = verdict;
  if (verdict == Tri::kUnknown) return report;
  report.reference_minor = MinorCertificate{all_rows, first_cols,
                                            determinant(a.select_columns(first_cols))};
  if (verdict == Tri::kTrue) {
    report.minor_magnitude = magnitude;
  } else {
    report.violating_minor =
        MinorCertificate{all_rows, bad_cols, determinant(a.select_columns(bad_cols))};
  }
  return report;
}

namespace {

// Signing search for one row subset: can the rows be signed so that every
// column sum lands in {-1,0,1}?  Entries are already known to be in
// {-1,0,1}, so a partial sum s_c is still rescuable iff |s_c| does not
// exceed 1 plus the number of nonzero entries below it; at full depth that
// bound degenerates to the exact condition.
bool signable(const IntMatrix& m, const std::vector<int>& rows, WorkBudget& budget) {
  const int n = m.cols();
  const int k = static_cast<int>(rows.size());
  std::vector<std::vector<int>> e(k, std::vector<int>(n));
  for (int j = 0; j < k; ++j) {
    for (int c = 0; c < n; ++c) e[j][c] = m.at(rows[j], c).convert_to<int>();
  }
  // remaining[j][c]: nonzero entries in column c over rows j..k-1.
  std::vector<std::vector<int>> remaining(k + 1, std::vector<int>(n, 0));
  for (int j = k - 1; j >= 0; --j) {
    for (int c = 0; c < n; ++c) {
      remaining[j][c] = remaining[j + 1][c] + (e[j][c] != 0 ? 1 : 0);
    }
  }
  std::vector<int> sums(n, 0);
  auto rec = [&](auto&& self, int j) -> bool {
    if (!budget.spend()) throw BudgetExhausted{};
    if (j == k) return true;
    for (int sign : {+1, -1}) {
      bool feasible = true;
      for (int c = 0; c < n && feasible; ++c) {
        feasible = std::abs(sums[c] + sign * e[j][c]) <= 1 + remaining[j + 1][c];
      }
      if (!feasible) continue;
      for (int c = 0; c < n; ++c) sums[c] += sign * e[j][c];
      if (self(self, j + 1)) return true;
      for (int c = 0; c < n; ++c) sums[c] -= sign * e[j][c];
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace

UnimodularityReport is_totally_unimodular(const IntMatrix& a,
                                          const UnimodularOptions& opts) {
  UnimodularityReport report;
  // Entry check: any entry outside {-1,0,1} is already a 1x1 violation.
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      const Int& e = a.at(r, c);
      if (e < -1 || e > 1) {
        report.totally_unimodular = Tri::kFalse;
        report.violating_minor = MinorCertificate{{r}, {c}, e};
        return report;
      }
    }
  }
  // The characterization is transpose-invariant; exponentiate over the
  // smaller dimension.
  const bool transpose = a.cols() < a.rows();
  const IntMatrix m = transpose ? a.transposed() : a;
  const int k = m.rows();

  WorkBudget budget(opts.max_work);
  std::vector<int> rows;
  try {
    // All nonempty row subsets, by increasing top element so small subsets
    // come early.
    auto rec = [&](auto&& self, int next) -> bool {
      for (int r2 = next; r2 < k; ++r2) {
        rows.push_back(r2);
        if (!signable(m, rows, budget)) return false;
        if (!self(self, r2 + 1)) return false;
        rows.pop_back();
      }
      return true;
    };
    if (!rec(rec, 0)) {
      report.totally_unimodular = Tri::kFalse;
      report.violating_rows = rows;  // row indices of m; columns if transposed
      return report;
    }
  } catch (const BudgetExhausted&) {
    report.totally_unimodular = Tri::kUnknown;
    return report;
  }
  report.totally_unimodular = Tri::kTrue;
  // Total unimodularity forces every maximal minor into {-1,0,1}, which for
  // a full-row-rank matrix settles unimodularity as well.
  if (rank(a) == a.rows()) {
    report.unimodular = Tri::kTrue;
    report.minor_magnitude = 1;
  }
  return report;
}

IntMatrix lawrence_lifting(const IntMatrix& a) {
  const int p = a.rows();
  const int K = a.cols();
  IntMatrix l(p + K, 2 * K);
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < K; ++c) l.at(r, c) = a.at(r, c);
  }
  for (int i = 0; i < K; ++i) {
    l.at(p + i, i) = 1;
    l.at(p + i, K + i) = 1;
  }
  return l;
}

}  // namespace satfrac
