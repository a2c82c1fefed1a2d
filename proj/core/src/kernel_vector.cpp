#include "satfrac/kernel_vector.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace satfrac {

KernelVector KernelVector::make_canonical(std::vector<std::int32_t> v) {
  std::int64_t g = 0;
  for (std::int32_t e : v) g = std::gcd(g, static_cast<std::int64_t>(e));
  if (g == 0) {
    throw std::invalid_argument("KernelVector: zero vector");
  }
  std::int32_t sign = 0;
  for (std::int32_t e : v) {
    if (e != 0) {
      sign = e > 0 ? 1 : -1;
      break;
    }
  }
  KernelVector out;
  out.entries_ = std::move(v);
  for (std::int32_t& e : out.entries_) {
    e = static_cast<std::int32_t>(sign * (e / g));
    if (e != 0) ++out.support_size_;
  }
  return out;
}

KernelVector KernelVector::canonical(const std::vector<std::int64_t>& entries) {
  std::vector<std::int32_t> v(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < std::numeric_limits<std::int32_t>::min() ||
        entries[i] > std::numeric_limits<std::int32_t>::max()) {
      throw std::invalid_argument("KernelVector: entry does not fit in 32 bits");
    }
    v[i] = static_cast<std::int32_t>(entries[i]);
  }
  return make_canonical(std::move(v));
}

KernelVector KernelVector::canonical(const IntVector& entries) {
  std::vector<std::int32_t> v(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < std::numeric_limits<std::int32_t>::min() ||
        entries[i] > std::numeric_limits<std::int32_t>::max()) {
      throw std::invalid_argument("KernelVector: entry does not fit in 32 bits");
    }
    v[i] = entries[i].convert_to<std::int32_t>();
  }
  return make_canonical(std::move(v));
}

std::vector<int> KernelVector::support() const {
  std::vector<int> s;
  s.reserve(support_size_);
  for (int i = 0; i < size(); ++i) {
    if (entries_[i] != 0) s.push_back(i);
  }
  return s;
}

std::int32_t KernelVector::max_abs() const {
  std::int32_t m = 0;
  for (std::int32_t e : entries_) m = std::max(m, std::abs(e));
  return m;
}

IntVector KernelVector::to_int_vector() const {
  IntVector v(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) v[i] = entries_[i];
  return v;
}

bool canonical_less(const KernelVector& a, const KernelVector& b) {
  if (a.support_size() != b.support_size()) return a.support_size() < b.support_size();
  // Same support size: compare support index sequences, then entries.  With
  // equal support sizes, comparing supports lexicographically is equivalent
  // to comparing the positions of nonzeros in order.
  const int n = std::min(a.size(), b.size());
  for (int i = 0; i < n; ++i) {
    const bool az = a[i] == 0;
    const bool bz = b[i] == 0;
    if (az != bz) return !az && bz ? true : false;
  }
  for (int i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

}  // namespace satfrac
