#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace satfrac {

// Arbitrary-precision integer and rational types used by all exact kernels.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Int>;

}  // namespace satfrac
