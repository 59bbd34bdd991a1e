#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace planarmaps {

// Arbitrary precision, always reduced, positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) { return r.str(); }
inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace planarmaps
