#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "internal/checked_int.hpp"
#include "satfrac/intmat.hpp"

namespace satfrac::detail {

// Incremental fraction-free column elimination used by every subset sweep
// (circuit enumeration, basis counting, unimodularity checks).
//
// A path root -> depth k corresponds to an independent column subset
// c_1 < ... < c_k.  Each push eliminates one pivot row Bareiss-style and
// reduces *all* non-chosen columns against the new pivot, so moving to a
// sibling subtree never recomputes shared prefixes.  The t-values recorded
// when level k was formed are exactly the row-echelon entries U[k][col], and
// the pivots d_k are the leading principal minors of the chosen submatrix
// (up to row order), which makes exact leaf solves cheap:
//
//  * solve_scaled(e): z with A_chosen * x = col_e, z = d_depth * x.  All
//    divisions are exact (the z_j are minors of the bordered submatrix).
//  * null_covector(): at depth rows-1, the integer covector y of maximal
//    minors with y^T A_chosen = 0.
//
// T is C64 (checked int64) or Int; on C64 overflow the caller reruns with Int.
template <typename T>
class SubsetSweep {
 public:
  SubsetSweep(const IntMatrix& a, int max_depth)
      : m_(a.rows()), k_(a.cols()), max_depth_(max_depth) {
    if (max_depth_ > m_) {
      throw std::invalid_argument("SubsetSweep: depth exceeds row count");
    }
    frames_.resize(max_depth_ + 1);
    for (Frame& f : frames_) {
      f.red.resize(static_cast<std::size_t>(k_) * m_);
      f.tv.resize(k_);
      f.dead.assign(k_, 0);
      f.alive.reserve(k_);
    }
    Frame& root = frames_[0];
    for (int c = 0; c < k_; ++c) {
      bool nonzero = false;
      for (int r = 0; r < m_; ++r) {
        root.red[static_cast<std::size_t>(c) * m_ + r] = Scalar<T>::from_int(a.at(r, c));
        nonzero = nonzero || a.at(r, c) != 0;
      }
      root.dead[c] = nonzero ? 0 : 1;
      if (nonzero) root.alive.push_back(c);
    }
    row_used_.assign(m_, 0);
    chosen_.assign(k_, 0);
  }

  int rows() const { return m_; }
  int cols() const { return k_; }
  int depth() const { return depth_; }
  const std::vector<int>& chosen_cols() const { return chosen_cols_; }
  bool is_chosen(int col) const { return chosen_[col] != 0; }

  // True when `col` is linearly dependent on the current prefix.
  bool is_dependent(int col) const {
    return chosen_[col] == 0 && frames_[depth_].dead[col] != 0;
  }

  // Candidate columns still independent of the current prefix, ascending.
  const std::vector<int>& alive_cols() const { return frames_[depth_].alive; }

  // d_level for level in 1..depth (d_0 = 1): the leading minor of the chosen
  // columns after `level` pivots.
  T pivot(int level) const { return level == 0 ? T(1) : frames_[level].d; }

  // Row-echelon value of `col` recorded when `level` was formed.
  T tval(int level, int col) const { return frames_[level].tv[col]; }

  bool push(int col) {
    const Frame& pf = frames_[depth_];
    if (chosen_[col] != 0 || pf.dead[col] != 0) return false;
    const T* pcol = &pf.red[static_cast<std::size_t>(col) * m_];
    int prow = -1;
    for (int r = 0; r < m_; ++r) {
      if (row_used_[r] == 0 && !Scalar<T>::is_zero(pcol[r])) {
        prow = r;
        break;
      }
    }
    if (prow < 0) return false;

    const T prev = pivot(depth_);
    ++depth_;
    Frame& f = frames_[depth_];
    f.chosen_col = col;
    f.pivot_row = prow;
    f.d = pcol[prow];
    f.alive.clear();
    row_used_[prow] = 1;
    chosen_[col] = 1;
    chosen_cols_.push_back(col);

    for (int u = 0; u < k_; ++u) {
      if (chosen_[u] != 0 || pf.dead[u] != 0) {
        f.tv[u] = T(0);
        f.dead[u] = 1;
        continue;
      }
      const T* pu = &pf.red[static_cast<std::size_t>(u) * m_];
      T* fu = &f.red[static_cast<std::size_t>(u) * m_];
      const T t = pu[prow];
      f.tv[u] = t;
      bool all_zero = true;
      for (int r = 0; r < m_; ++r) {
        if (row_used_[r] != 0) continue;
        fu[r] = (f.d * pu[r] - t * pcol[r]) / prev;
        all_zero = all_zero && Scalar<T>::is_zero(fu[r]);
      }
      f.dead[u] = all_zero ? 1 : 0;
      if (!all_zero) f.alive.push_back(u);
    }
    return true;
  }

  void pop() {
    Frame& f = frames_[depth_];
    row_used_[f.pivot_row] = 0;
    chosen_[f.chosen_col] = 0;
    chosen_cols_.pop_back();
    --depth_;
  }

  // Scaled solution z (length depth) of A_chosen * x = col_e with
  // z = pivot(depth) * x; z_j is stored at index j-1.  Exact for any column
  // e with recorded history, including columns dependent on the prefix.
  void solve_scaled(int e, std::vector<T>& z) const {
    const int k = depth_;
    z.assign(k, T(0));
    if (k == 0) return;
    const T dk = pivot(k);
    z[k - 1] = tval(k, e);
    for (int j = k - 1; j >= 1; --j) {
      T num = dk * tval(j, e);
      for (int i = j + 1; i <= k; ++i) {
        num = num - tval(j, chosen_cols_[i - 1]) * z[i - 1];
      }
      z[j - 1] = num / pivot(j);
    }
  }

  // Integer covector y (length rows) with y^T A_chosen = 0, defined at
  // depth == rows-1.  Up to sign, y is the vector of maximal minors of the
  // chosen submatrix.
  void null_covector(std::vector<T>& y) const {
    const int k = depth_;
    if (k != m_ - 1) {
      throw std::logic_error("null_covector: need depth == rows - 1");
    }
    int free_row = -1;
    for (int r = 0; r < m_; ++r) {
      if (row_used_[r] == 0) {
        free_row = r;
        break;
      }
    }
    y.assign(m_, T(0));
    y[free_row] = pivot(k);
    for (int j = k; j >= 1; --j) {
      // Reduced image of chosen column j as it looked when level j was
      // formed; live on rows r_j, r_{j+1}, ..., free_row.
      const Frame& f = frames_[j];
      const T* scol = &frames_[j - 1].red[static_cast<std::size_t>(f.chosen_col) * m_];
      T sum = y[free_row] * scol[free_row];
      for (int i = j + 1; i <= k; ++i) {
        const int ri = frames_[i].pivot_row;
        sum = sum + y[ri] * scol[ri];
      }
      y[f.pivot_row] = (-sum) / f.d;
    }
  }

 private:
  struct Frame {
    std::vector<T> red;        // reduced columns, flattened col-major [col*m + row]
    std::vector<T> tv;         // per column: value at this level's pivot row
    std::vector<std::uint8_t> dead;
    std::vector<int> alive;    // non-chosen columns with a nonzero residual
    int chosen_col = -1;
    int pivot_row = -1;
    T d = T(0);
  };

  int m_;
  int k_;
  int max_depth_;
  int depth_ = 0;
  std::vector<Frame> frames_;
  std::vector<std::uint8_t> row_used_;
  std::vector<std::uint8_t> chosen_;
  std::vector<int> chosen_cols_;
};

// Thrown by leaf callbacks to stop an enumeration early (e.g. when a result
// cap is reached with allow_partial semantics).
struct StopEnumeration {};

// Depth-first enumeration of all independent column subsets of size
// `target`, lexicographically.  `leaf` runs with the sweep positioned at
// each subset.  Root-level choices are restricted to
// first_col % stride == offset, which is how work is split across threads.
template <typename T, typename LeafFn>
void for_each_independent_subset(SubsetSweep<T>& sweep, int target, LeafFn&& leaf,
                                 int offset = 0, int stride = 1) {
  if (target == 0) {
    leaf();
    return;
  }
  auto rec = [&](auto&& self, int from) -> void {
    const std::vector<int>& alive = sweep.alive_cols();
    const int remaining = target - sweep.depth();
    auto it = std::lower_bound(alive.begin(), alive.end(), from);
    for (; it != alive.end(); ++it) {
      if (static_cast<int>(alive.end() - it) < remaining) break;
      const int c = *it;
      if (sweep.depth() == 0 && stride > 1 && c % stride != offset) continue;
      if (!sweep.push(c)) continue;
      if (sweep.depth() == target) {
        leaf();
      } else {
        self(self, c + 1);
      }
      sweep.pop();
    }
  };
  rec(rec, 0);
}

// Visits every corank-1 flat (hyperplane) of the column matroid of the swept
// matrix exactly once, with the sweep positioned at the greedy-lex generating
// subset of the flat (size rows-1).  Works entirely through a pruning rule:
// whenever a column that was skipped while independent becomes dependent on
// the chosen prefix, the closure of any completion would contain a smaller
// generating subset, so the whole subtree is abandoned.  This turns the
// otherwise massively redundant subset enumeration into one leaf per flat.
//
// Requires the matrix to have full row rank.  Root-level splitting by
// (column % stride == offset) partitions the flats across workers, because
// each flat is owned by the first column of its greedy generating subset.
template <typename T, typename LeafFn>
void for_each_corank1_flat(SubsetSweep<T>& sweep, LeafFn&& leaf, int offset = 0,
                           int stride = 1) {
  const int target = sweep.rows() - 1;
  if (target == 0) {
    if (offset == 0) leaf();
    return;
  }
  std::vector<int> skipped;
  auto violated = [&] {
    for (int s : skipped) {
      if (sweep.is_dependent(s)) return true;
    }
    return false;
  };
  auto rec = [&](auto&& self, int from) -> void {
    const std::vector<int>& alive = sweep.alive_cols();
    const int remaining = target - sweep.depth();
    const std::size_t mark = skipped.size();
    auto it = std::lower_bound(alive.begin(), alive.end(), from);
    for (; it != alive.end(); ++it) {
      if (static_cast<int>(alive.end() - it) < remaining) break;
      const int c = *it;
      if (sweep.depth() == 0 && stride > 1 && c % stride != offset) {
        skipped.push_back(c);
        continue;
      }
      sweep.push(c);
      if (!violated()) {
        if (sweep.depth() == target) {
          leaf();
        } else {
          self(self, c + 1);
        }
      }
      sweep.pop();
      skipped.push_back(c);
    }
    skipped.resize(mark);
  };
  rec(rec, 0);
}

}  // namespace satfrac::detail
