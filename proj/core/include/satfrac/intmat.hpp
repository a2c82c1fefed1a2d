#pragma once

#include <optional>
#include <string>
#include <vector>

#include "satfrac/bigint.hpp"

namespace satfrac {

// Dense matrix of arbitrary-precision integers, row major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);  // zero-filled
  IntMatrix(int rows, int cols, std::vector<Int> entries);

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Int& at(int r, int c) const {
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
  }

  IntMatrix transposed() const;
  // Submatrix keeping the given columns, in the given order.
  IntMatrix select_columns(const std::vector<int>& idx) const;
  // Submatrix keeping the given rows, in the given order.
  IntMatrix select_rows(const std::vector<int>& idx) const;

  IntVector row(int r) const;
  IntVector column(int c) const;

  bool operator==(const IntMatrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> entries_;
};

// Rank over the rationals, computed with fraction-free elimination.
int rank(const IntMatrix& m);

// Exact determinant of a square matrix (Bareiss elimination).
Int determinant(const IntMatrix& m);

// Unique rational solution of m * x = rhs, or nullopt when the system is
// singular/inconsistent (i.e. no unique solution exists).
std::optional<std::vector<Rational>> solve_unique(const IntMatrix& m,
                                                  const IntVector& rhs);

// Lattice basis of { v integer : m * v = 0 }.  The result has exactly
// cols - rank(m) vectors and generates the full integer kernel lattice,
// not merely a finite-index sublattice.  Each vector is sign-normalized
// so its first nonzero entry is positive.
std::vector<IntVector> kernel_lattice_basis(const IntMatrix& m);

// Divide by the gcd of the entries and flip signs so the first nonzero
// entry is positive.  Rejects the zero vector.
IntVector primitive_normalize(IntVector v);

// Stable content hash of dimensions plus entries (32 hex digits).  Used to
// key cached bases to the matrix they were computed from.
std::string matrix_digest(const IntMatrix& m);

}  // namespace satfrac
