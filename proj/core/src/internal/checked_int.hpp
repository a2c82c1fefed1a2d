#pragma once

#include <cstdint>
#include <limits>

#include "satfrac/bigint.hpp"

namespace satfrac::detail {

// Thrown by C64 arithmetic on 64-bit overflow; callers rerun the affected
// computation with arbitrary-precision integers.
struct Overflow64 {};

// int64 wrapper whose +, -, * throw Overflow64 instead of wrapping.
// Division is only ever used where it is exact (fraction-free elimination),
// so it needs no check beyond the usual INT64_MIN/-1 corner, which cannot
// occur once products are checked.
struct C64 {
  std::int64_t v = 0;

  C64() = default;
  C64(std::int64_t x) : v(x) {}  // NOLINT: implicit by design

  friend C64 operator+(C64 a, C64 b) {
    C64 r;
    if (__builtin_add_overflow(a.v, b.v, &r.v)) throw Overflow64{};
    return r;
  }
  friend C64 operator-(C64 a, C64 b) {
    C64 r;
    if (__builtin_sub_overflow(a.v, b.v, &r.v)) throw Overflow64{};
    return r;
  }
  friend C64 operator*(C64 a, C64 b) {
    C64 r;
    if (__builtin_mul_overflow(a.v, b.v, &r.v)) throw Overflow64{};
    return r;
  }
  friend C64 operator-(C64 a) {
    if (a.v == std::numeric_limits<std::int64_t>::min()) throw Overflow64{};
    return C64(-a.v);
  }
  friend C64 operator/(C64 a, C64 b) { return C64(a.v / b.v); }
  friend C64 operator%(C64 a, C64 b) { return C64(a.v % b.v); }

  C64& operator+=(C64 o) { return *this = *this + o; }
  C64& operator-=(C64 o) { return *this = *this - o; }

  friend bool operator==(C64 a, C64 b) { return a.v == b.v; }
  friend bool operator!=(C64 a, C64 b) { return a.v != b.v; }
  friend bool operator<(C64 a, C64 b) { return a.v < b.v; }
};

// Uniform access to the two scalar types the elimination engine runs on.
template <typename T>
struct Scalar;

template <>
struct Scalar<C64> {
  static C64 from_int(const Int& x) {
    if (x < std::numeric_limits<std::int64_t>::min() ||
        x > std::numeric_limits<std::int64_t>::max()) {
      throw Overflow64{};
    }
    return C64(x.convert_to<std::int64_t>());
  }
  static std::int64_t to_int64(C64 x) { return x.v; }
  static Int to_int(C64 x) { return Int(x.v); }
  static bool is_zero(C64 x) { return x.v == 0; }
};

template <>
struct Scalar<Int> {
  static Int from_int(const Int& x) { return x; }
  static std::int64_t to_int64(const Int& x) {
    if (x < std::numeric_limits<std::int64_t>::min() ||
        x > std::numeric_limits<std::int64_t>::max()) {
      throw Overflow64{};
    }
    return x.convert_to<std::int64_t>();
  }
  static Int to_int(const Int& x) { return x; }
  static bool is_zero(const Int& x) { return x == 0; }
};

}  // namespace satfrac::detail
