#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace shs6v {

/// Exact rational scalar. Identity suites run on this type so that
/// algebraic statements can be checked with equality, not tolerances.
/// Expression templates are off so the type behaves like a plain value in
/// generic code.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int::backend_type>,
    boost::multiprecision::et_off>;

/// Error for parameter values a formula cannot accept (poles, roots of
/// unity, degenerate coefficients).
class singular_parameter : public std::runtime_error {
 public:
  explicit singular_parameter(const std::string& what) : std::runtime_error(what) {}
};

inline Rational make_frac(long long num, long long den) {
  if (den == 0) throw singular_parameter("make_frac: zero denominator");
  return Rational(num) / Rational(den);
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.template convert_to<double>(); }

/// x^n by binary exponentiation; n may be negative for nonzero x.
template <class S>
S pow_int(const S& x, long long n) {
  if (n < 0) {
    if (x == S(0)) throw singular_parameter("pow_int: negative power of zero");
    return S(1) / pow_int(x, -n);
  }
  S result(1);
  S base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace shs6v
