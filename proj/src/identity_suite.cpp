#include "shs6v/identity_suite.hpp"

#include "shs6v/fourpoint.hpp"
#include "shs6v/weights.hpp"

namespace shs6v {

std::vector<std::pair<Rational, Rational>> rational_param_points(int I, int J) {
  std::vector<std::pair<Rational, Rational>> pts;
  const long long k = I + J - 1;

  // q > 1: alpha = -q^{-I-J+1} * s with s in (0, 1)
  const Rational qs_hi[5] = {Rational(2), Rational(3), make_frac(3, 2), make_frac(5, 2),
                             make_frac(7, 4)};
  const Rational scale_hi[5] = {make_frac(1, 2), make_frac(1, 3), make_frac(2, 3),
                                make_frac(1, 5), make_frac(9, 10)};
  for (int i = 0; i < 5; ++i) pts.emplace_back(qs_hi[i], -pow_int(qs_hi[i], -k) * scale_hi[i]);

  // q in (0, 1): alpha = -q^{-I-J+1} * s with s > 1
  const Rational qs_lo[5] = {make_frac(1, 2), make_frac(1, 3), make_frac(2, 3), make_frac(2, 5),
                             make_frac(4, 7)};
  const Rational scale_lo[5] = {Rational(2), make_frac(3, 2), Rational(3), make_frac(5, 2),
                                Rational(7)};
  for (int i = 0; i < 5; ++i) pts.emplace_back(qs_lo[i], -pow_int(qs_lo[i], -k) * scale_lo[i]);
  return pts;
}

std::string rational_point_label(const Rational& q, const Rational& alpha) {
  return "q=" + q.str() + " alpha=" + alpha.str();
}

namespace {

using Params = ModelParams<Rational>;

bool check_three_routes(const Params& p) {
  for (int i1 = 0; i1 <= p.I; ++i1)
    for (int j1 = 0; j1 <= p.J; ++j1)
      for (int i2 = 0; i2 <= p.I; ++i2)
        for (int j2 = 0; j2 <= p.J; ++j2) {
          const VertexConfig c{i1, j1, i2, j2};
          const Rational hg = lJ_weight_hypergeom(p, c);
          if (hg != lJ_weight_fused(p, c)) return false;
          if (hg != lJ_weight_fused_reversed(p, c)) return false;
          if (!c.conservative() && hg != Rational(0)) return false;
        }
  return true;
}

bool check_stochasticity(const Params& p) {
  for (int i1 = 0; i1 <= p.I; ++i1)
    for (int j1 = 0; j1 <= p.J; ++j1) {
      Rational sum(0);
      for (const auto& out : row_distribution(p, i1, j1)) {
        if (out.weight < Rational(0)) return false;
        sum += out.weight;
      }
      if (sum != Rational(1)) return false;
    }
  return true;
}

bool check_mean_xi(const Params& p) {
  for (int h = 0; h <= p.J; ++h)
    for (int v = 0; v <= p.I; ++v)
      for (long long H00 = -3; H00 <= 3; ++H00)
        if (conditional_mean_xi(p, LocalStencil{H00, h, v}) != Rational(0)) return false;
  return true;
}

bool check_m2_closed_forms(const Params& p) {
  const Rational one(1);
  const Rational& q = p.q;
  const Rational& alpha = p.alpha;
  const Rational denom = (one + alpha) * (one + alpha);
  const Rational qI = pow_int(q, p.I);
  for (int v = 0; v <= p.I; ++v)
    for (long long H00 = -3; H00 <= 3; ++H00) {
      const Rational q2H = pow_int(q, 2 * H00);
      const Rational qv = pow_int(q, v);
      const Rational m2_h0 = alpha * (q - one) * (q - one) * pow_int(q, -2LL * v) * (one - qv) *
                             (one + alpha * qv) / denom * q2H;
      if (conditional_m2_xi(p, LocalStencil{H00, 0, v}) != m2_h0) return false;
      const Rational m2_h1 = (q - one) * (q - one) * pow_int(q, -2LL * (p.I + v)) * (qI - qv) *
                             (alpha * qI + qv) / denom * q2H;
      if (conditional_m2_xi(p, LocalStencil{H00, 1, v}) != m2_h1) return false;
    }
  return true;
}

bool check_reversal_four_term(const Params& p) {
  const Rational one(1);
  const Rational& q = p.q;
  const Rational& alpha = p.alpha;
  const Rational denom = (one + q) * (one + alpha) * (one + alpha * q);
  for (int v = 0; v <= p.I; ++v) {
    const Rational qv = pow_int(q, v);
    const Rational four = q * (alpha * q + p.nu * qv) * (one + alpha * qv) +
                          q * alpha * (one - p.nu * qv) * (one - qv * q) +
                          alpha * q * (one - qv) * (one - p.nu * qv / q) +
                          (one + alpha * qv * q) * (alpha + p.nu * qv);
    const VertexConfig c{v, 1, v, 1};
    if (lJ_weight_fused(p, c) != four / denom) return false;
    if (lJ_weight_fused_reversed(p, c) != four / denom) return false;
  }
  return true;
}

bool check_quadratic_witness(const Params& p) {
  // h = 0 pins gamma2 = m2 / dx; the values implied by v = 1 and v = 2
  // must disagree, so no exact quadratic identity exists
  auto implied_gamma2 = [&](int v) {
    const Rational dx = pow_int(p.q, -static_cast<long long>(v)) - Rational(1);
    return conditional_m2_xi(p, LocalStencil{0, 0, v}) / dx;
  };
  return implied_gamma2(1) != implied_gamma2(2);
}

}  // namespace

std::vector<IdentityResult> run_identity_suite(int maxI, int maxJ) {
  std::vector<IdentityResult> results;
  for (int I = 1; I <= maxI; ++I)
    for (int J = 1; J <= maxJ; ++J)
      for (const auto& [q, alpha] : rational_param_points(I, J)) {
        const auto p = Params::create(q, alpha, I, J);
        const std::string pt = rational_point_label(q, alpha);
        auto push = [&](const char* name, bool pass) {
          results.push_back({name, I, J, pt, pass});
        };
        push("three-route-agreement", check_three_routes(p));
        push("row-stochasticity", check_stochasticity(p));
        push("mean-xi-zero", check_mean_xi(p));
        if (J == 1) push("m2-closed-form-J1", check_m2_closed_forms(p));
        if (J == 2) push("reversal-four-term-J2", check_reversal_four_term(p));
        if (I == 2 && J == 1) push("no-quadratic-identity-I2J1", check_quadratic_witness(p));
      }
  return results;
}

}  // namespace shs6v
