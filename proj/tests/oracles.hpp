#pragma once

// Test-only oracles for the telegraph module. Everything here stays
// independent of the production code paths it checks: residue extraction
// works on explicit polynomial Taylor expansions, not on the DP recurrence.

#include <stdexcept>
#include <vector>

#include "shs6v/telegraph.hpp"

namespace shs6v_test {

template <class S>
using Poly = std::vector<S>;  // coefficients, lowest degree first

template <class S>
Poly<S> poly_mul(const Poly<S>& a, const Poly<S>& b, std::size_t max_order) {
  Poly<S> out(std::min(a.size() + b.size() - 1, max_order + 1), S(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= max_order; ++j)
      if (i + j < out.size()) out[i + j] += a[i] * b[j];
  return out;
}

template <class S>
Poly<S> poly_pow(const Poly<S>& a, int n, std::size_t max_order) {
  Poly<S> out{S(1)};
  for (int k = 0; k < n; ++k) out = poly_mul(out, a, max_order);
  return out;
}

/// First max_order+1 Taylor coefficients of n(t)/d(t); requires d(0) != 0.
template <class S>
Poly<S> series_div(const Poly<S>& n, const Poly<S>& d, std::size_t max_order) {
  if (d.empty() || d[0] == S(0)) throw std::invalid_argument("series_div: d(0) = 0");
  Poly<S> out(max_order + 1, S(0));
  for (std::size_t k = 0; k <= max_order; ++k) {
    S acc = k < n.size() ? n[k] : S(0);
    for (std::size_t j = 1; j <= k && j < d.size(); ++j) acc -= d[j] * out[k - j];
    out[k] = acc / d[0];
  }
  return out;
}

/// Residue form of the discrete Riemann kernel: the contour integrand has a
/// pole of order DX+1 at z0 = -1/(b2(1-b1)); the residue is the t^DX Taylor
/// coefficient of
///   (b2-b1) (1 + b1(1-b1)(z0+t))^DX (1 + b2(1-b2)(z0+t))^DY
///   / (1 + b1(1-b2)(z0+t))^{DY+1}
/// divided by (b2(1-b1))^{DX+1}.
template <class S>
S discrete_riemann_residue(const shs6v::DiscreteCoeffs<S>& d, int DX, int DY) {
  const S one(1);
  const S pole_coeff = d.b2 * (one - d.b1);
  const S z0 = -one / pole_coeff;
  const std::size_t ord = static_cast<std::size_t>(DX);

  auto linear = [&](const S& c) { return Poly<S>{one + c * z0, c}; };
  Poly<S> num = poly_mul(poly_pow(linear(d.b1 * (one - d.b1)), DX, ord),
                         poly_pow(linear(d.b2 * (one - d.b2)), DY, ord), ord);
  for (auto& c : num) c *= d.b2 - d.b1;
  const Poly<S> den = poly_pow(linear(d.b1 * (one - d.b2)), DY + 1, ord);
  const Poly<S> series = series_div(num, den, ord);
  return series[ord] / shs6v::pow_int(pole_coeff, DX + 1);
}

}  // namespace shs6v_test
