#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "satfrac/bigint.hpp"

namespace satfrac {

// A primitive integer kernel vector in canonical form: entries are coprime
// and the first nonzero entry is positive.  Entries of the vectors handled
// here are tiny (single digits in every instance we touch), so they are
// stored as 32-bit integers; constructors reject anything larger.
class KernelVector {
 public:
  KernelVector() = default;

  // Canonicalizes: divides by the gcd and fixes the sign.  Rejects zero
  // vectors and entries that do not fit in 32 bits.
  static KernelVector canonical(const std::vector<std::int64_t>& entries);
  static KernelVector canonical(const IntVector& entries);

  const std::vector<std::int32_t>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  std::int32_t operator[](int i) const { return entries_[i]; }

  int support_size() const { return support_size_; }
  std::vector<int> support() const;
  std::int32_t max_abs() const;

  IntVector to_int_vector() const;

  bool operator==(const KernelVector& other) const { return entries_ == other.entries_; }

 private:
  static KernelVector make_canonical(std::vector<std::int32_t> v);

  std::vector<std::int32_t> entries_;
  int support_size_ = 0;
};

// Deterministic order used for every serialized basis: ascending support
// size, then support indices, then entries, all lexicographically.
bool canonical_less(const KernelVector& a, const KernelVector& b);

}  // namespace satfrac
