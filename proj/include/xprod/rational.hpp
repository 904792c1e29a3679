#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace xprod {

using BigInt = boost::multiprecision::cpp_int;
/// Always reduced, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline std::string to_string(const BigInt& v) { return v.str(); }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const auto den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt ipow(const BigInt& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

}  // namespace xprod
