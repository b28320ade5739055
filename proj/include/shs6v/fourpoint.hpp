#pragma once

#include "shs6v/scaling.hpp"
#include "shs6v/weights.hpp"

namespace shs6v {

/// Heights around one vertex, reduced to what the update law sees:
/// H00 = H(x,y), h = H(x,y+1) - H(x,y) in [0,J], v = H(x,y) - H(x+1,y) in [0,I].
struct LocalStencil {
  long long H00 = 0;
  int h = 0;
  int v = 0;
};

namespace detail {

template <class S>
void validate_stencil(const ModelParams<S>& p, const LocalStencil& s) {
  if (s.h < 0 || s.h > p.J) throw std::invalid_argument("stencil: h out of [0, J]");
  if (s.v < 0 || s.v > p.I) throw std::invalid_argument("stencil: v out of [0, I]");
}

}  // namespace detail

/// The one-vertex residual of the discrete telegraph operator applied to
/// q^H, given the output v' = H(x,y+1) - H(x+1,y+1):
///   q^{H00} (q^{h-v'} - b1 q^h - b2 q^{-v} + b1 + b2 - 1).
template <class S>
S xi_value(const ModelParams<S>& p, const LocalStencil& s, int vprime) {
  detail::validate_stencil(p, s);
  if (vprime < 0 || vprime > p.I) throw std::invalid_argument("xi_value: v' out of [0, I]");
  const S b1 = p.b1();
  const S b2 = p.b2();
  return pow_int(p.q, s.H00) *
         (pow_int(p.q, s.h - vprime) - b1 * pow_int(p.q, s.h) - b2 * pow_int(p.q, -s.v) + b1 +
          b2 - S(1));
}

/// E[xi | stencil], by exhaustive enumeration of the vertex outputs.
/// Identically zero; the rational instantiation checks this exactly.
template <class S>
S conditional_mean_xi(const ModelParams<S>& p, const LocalStencil& s) {
  detail::validate_stencil(p, s);
  S total(0);
  for (const auto& out : row_distribution(p, s.v, s.h))
    total += out.weight * xi_value(p, s, out.i2);
  return total;
}

/// E[xi^2 | stencil], by the same enumeration.
template <class S>
S conditional_m2_xi(const ModelParams<S>& p, const LocalStencil& s) {
  detail::validate_stencil(p, s);
  S total(0);
  for (const auto& out : row_distribution(p, s.v, s.h)) {
    const S xi = xi_value(p, s, out.i2);
    total += out.weight * xi * xi;
  }
  return total;
}

/// E[|xi|^ell | stencil] for integer ell >= 1.
template <class S>
S conditional_abs_moment_xi(const ModelParams<S>& p, const LocalStencil& s, int ell) {
  detail::validate_stencil(p, s);
  if (ell < 1) throw std::invalid_argument("conditional_abs_moment_xi: ell must be >= 1");
  S total(0);
  for (const auto& out : row_distribution(p, s.v, s.h)) {
    S xi = xi_value(p, s, out.i2);
    if (xi < S(0)) xi = -xi;
    total += out.weight * pow_int(xi, ell);
  }
  return total;
}

/// Remainder of the quadratic four-point expansion:
///   E[xi^2] - [ (beta1+beta2) dx dy / L
///             + J (beta2-beta1) beta2 q^{H00} dx / L^2
///             + I (beta1-beta2) beta1 q^{H00} dy / L^2 ]
/// with dx = q^{H00}(q^{-v} - 1), dy = q^{H00}(q^{h} - 1). Decays like L^{-4}
/// uniformly over stencils with |H00| <= L.
inline double remainder_R(const ScalingContext& sc, const LocalStencil& s) {
  const ModelParams<double> p = sc.params();
  const double m2 = conditional_m2_xi(p, s);
  const double qH = pow_int(p.q, s.H00);
  const double dx = qH * (pow_int(p.q, -static_cast<long long>(s.v)) - 1.0);
  const double dy = qH * (pow_int(p.q, s.h) - 1.0);
  const double L = static_cast<double>(sc.L);
  const double bracket = (sc.beta1 + sc.beta2) * dx * dy / L +
                         sc.J * (sc.beta2 - sc.beta1) * sc.beta2 * qH * dx / (L * L) +
                         sc.I * (sc.beta1 - sc.beta2) * sc.beta1 * qH * dy / (L * L);
  return m2 - bracket;
}

}  // namespace shs6v
