#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace drstokes {

/// Exact arbitrary-precision rational used by the polynomial layer and the
/// scalar-substituted operator expressions.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact binary value of a finite double.
inline Rational rational_from_double(double x) { return Rational(x); }

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace drstokes
