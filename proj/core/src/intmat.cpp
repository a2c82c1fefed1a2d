#include "satfrac/intmat.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace satfrac {

namespace {

void check_dims(int rows, int cols) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("IntMatrix: negative dimension");
  }
}

}  // namespace

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  entries_.assign(static_cast<std::size_t>(rows) * cols, Int(0));
}

IntMatrix::IntMatrix(int rows, int cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_dims(rows, cols);
  if (entries_.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("IntMatrix: entry count does not match dimensions");
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  }
  return t;
}

IntMatrix IntMatrix::select_columns(const std::vector<int>& idx) const {
  IntMatrix s(rows_, static_cast<int>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] < 0 || idx[j] >= cols_) {
      throw std::invalid_argument("select_columns: index out of range");
    }
    for (int r = 0; r < rows_; ++r) s.at(r, static_cast<int>(j)) = at(r, idx[j]);
  }
  return s;
}

IntMatrix IntMatrix::select_rows(const std::vector<int>& idx) const {
  IntMatrix s(static_cast<int>(idx.size()), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= rows_) {
      throw std::invalid_argument("select_rows: index out of range");
    }
    for (int c = 0; c < cols_; ++c) s.at(static_cast<int>(i), c) = at(idx[i], c);
  }
  return s;
}

IntVector IntMatrix::row(int r) const {
  IntVector v(cols_);
  for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

IntVector IntMatrix::column(int c) const {
  IntVector v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

namespace {

// Fraction-free (Bareiss) elimination on a working copy.  Returns the number
// of pivots; when `det` is non-null the matrix must be square and the signed
// product of pivot updates, i.e. the determinant, is stored there.
int bareiss_eliminate(IntMatrix work, Int* det) {
  const int m = work.rows();
  const int n = work.cols();
  Int prev(1);
  int sign = 1;
  int pivot_row = 0;
  for (int col = 0; col < n && pivot_row < m; ++col) {
    int sel = -1;
    for (int r = pivot_row; r < m; ++r) {
      if (work.at(r, col) != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) {
      if (det != nullptr) {
        *det = 0;
        return pivot_row;
      }
      continue;
    }
    if (sel != pivot_row) {
      for (int c = col; c < n; ++c) std::swap(work.at(sel, c), work.at(pivot_row, c));
      sign = -sign;
    }
    const Int& piv = work.at(pivot_row, col);
    for (int r = pivot_row + 1; r < m; ++r) {
      const Int factor = work.at(r, col);
      for (int c = col + 1; c < n; ++c) {
        work.at(r, c) = (piv * work.at(r, c) - factor * work.at(pivot_row, c)) / prev;
      }
      work.at(r, col) = 0;
    }
    prev = piv;
    ++pivot_row;
  }
  if (det != nullptr) {
    // Square matrix with full pivot count: the last pivot is the determinant
    // up to the accumulated row-swap sign.
    *det = (pivot_row == work.rows()) ? Int(sign) * prev : Int(0);
  }
  return pivot_row;
}

}  // namespace

int rank(const IntMatrix& m) { return bareiss_eliminate(m, nullptr); }

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("determinant: matrix is not square");
  }
  if (m.rows() == 0) return Int(1);
  Int det(0);
  bareiss_eliminate(m, &det);
  return det;
}

std::optional<std::vector<Rational>> solve_unique(const IntMatrix& m,
                                                  const IntVector& rhs) {
  if (static_cast<int>(rhs.size()) != m.rows()) {
    throw std::invalid_argument("solve_unique: rhs size does not match rows");
  }
  const int rows = m.rows();
  const int n = m.cols();
  // Rational Gaussian elimination on the augmented system.
  std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(n + 1));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < n; ++c) aug[r][c] = Rational(m.at(r, c));
    aug[r][n] = Rational(rhs[r]);
  }
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < rows; ++col) {
    int sel = -1;
    for (int r = row; r < rows; ++r) {
      if (aug[r][col] != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(aug[sel], aug[row]);
    const Rational piv = aug[row][col];
    for (int c = col; c <= n; ++c) aug[row][c] /= piv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || aug[r][col] == 0) continue;
      const Rational factor = aug[r][col];
      for (int c = col; c <= n; ++c) aug[r][c] -= factor * aug[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (static_cast<int>(pivot_col.size()) < n) return std::nullopt;  // rank deficient
  for (int r = row; r < rows; ++r) {
    if (aug[r][n] != 0) return std::nullopt;  // inconsistent
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) x[pivot_col[i]] = aug[i][n];
  return x;
}

std::vector<IntVector> kernel_lattice_basis(const IntMatrix& m) {
  const int rows = m.rows();
  const int n = m.cols();
  // Column-style integer elimination: reduce the columns of a working copy
  // with unimodular column operations, mirroring every operation on an
  // identity matrix.  Columns of the mirror whose working column becomes
  // zero form a basis of the full kernel lattice (the operations are
  // invertible over the integers, so no index is lost).
  IntMatrix work = m;
  IntMatrix mirror = IntMatrix::identity(n);
  std::vector<bool> retired(n, false);

  auto col_axpy = [&](int dst, int src, const Int& q) {
    // column[dst] -= q * column[src]
    for (int r = 0; r < rows; ++r) work.at(r, dst) -= q * work.at(r, src);
    for (int r = 0; r < n; ++r) mirror.at(r, dst) -= q * mirror.at(r, src);
  };

  for (int r = 0; r < rows; ++r) {
    for (;;) {
      int best = -1;
      int active = 0;
      for (int c = 0; c < n; ++c) {
        if (retired[c] || work.at(r, c) == 0) continue;
        ++active;
        if (best < 0 || abs(work.at(r, c)) < abs(work.at(r, best))) best = c;
      }
      if (active == 0) break;
      if (active == 1) {
        retired[best] = true;  // pivot column for this row
        break;
      }
      for (int c = 0; c < n; ++c) {
        if (c == best || retired[c] || work.at(r, c) == 0) continue;
        const Int q = work.at(r, c) / work.at(r, best);  // truncated quotient
        if (q != 0) col_axpy(c, best, q);
      }
    }
  }

  std::vector<IntVector> basis;
  for (int c = 0; c < n; ++c) {
    if (retired[c]) continue;
    IntVector v = mirror.column(c);
    // Sign-normalize for deterministic output; scale is part of the lattice
    // structure and must not be touched.
    for (const Int& e : v) {
      if (e == 0) continue;
      if (e < 0) {
        for (Int& x : v) x = -x;
      }
      break;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

IntVector primitive_normalize(IntVector v) {
  Int g(0);
  for (const Int& e : v) g = gcd(g, e);
  if (g == 0) {
    throw std::invalid_argument("primitive_normalize: zero vector");
  }
  for (Int& e : v) e /= g;
  for (const Int& e : v) {
    if (e == 0) continue;
    if (e < 0) {
      for (Int& x : v) x = -x;
    }
    break;
  }
  return v;
}

std::string matrix_digest(const IntMatrix& m) {
  // Two independent FNV-1a passes over a canonical text serialization give a
  // 128-bit content key.  Not cryptographic; collisions across the handful of
  // matrices a cache directory ever sees are not a practical concern.
  std::ostringstream os;
  os << m.rows() << 'x' << m.cols();
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) os << ',' << m.at(r, c);
  }
  const std::string text = os.str();

  constexpr std::uint64_t kFnvBasis = 0xcbf29ce484222325ULL;
  constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
  std::uint64_t h1 = kFnvBasis;
  for (unsigned char ch : text) {
    h1 ^= ch;
    h1 *= kFnvPrime;
  }
  std::uint64_t h2 = kFnvBasis;
  for (auto it = text.rbegin(); it != text.rend(); ++it) {
    h2 ^= static_cast<unsigned char>(*it);
    h2 *= kFnvPrime;
  }

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(32);
  for (int i = 15; i >= 0; --i) out.push_back(hex[(h1 >> (4 * i)) & 0xf]);
  for (int i = 15; i >= 0; --i) out.push_back(hex[(h2 >> (4 * i)) & 0xf]);
  return out;
}

}  // namespace satfrac
