#include "shs6v/scaling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace shs6v {

namespace {

struct QAlpha {
  double q, alpha;
};

QAlpha derive(long L, double beta1, double beta2, int J) {
  const double q = std::exp((beta1 - beta2) / static_cast<double>(L));
  const double c = std::exp(-J * beta2 / static_cast<double>(L));
  // closed-form inversion of (1 + alpha q^J)/(1 + alpha) = c
  const double alpha = (c - 1.0) / (pow_int(q, J) - c);
  return {q, alpha};
}

}  // namespace

ScalingContext make_scaling(long L, double beta1, double beta2, int I, int J) {
  if (L < 1) throw std::invalid_argument("make_scaling: L must be >= 1");
  if (I < 1 || J < 1) throw std::invalid_argument("make_scaling: I, J must be >= 1");
  if (!(beta1 > 0.0) || !(beta2 > 0.0))
    throw std::domain_error("make_scaling: beta1, beta2 must be positive");
  if (beta1 == beta2) throw std::domain_error("make_scaling: beta1 = beta2 gives degenerate q = 1");

  const QAlpha qa = derive(L, beta1, beta2, J);
  if (!stochasticity_ok(qa.q, qa.alpha, I, J)) {
    const char* branch = qa.q < 1.0 ? "q in (0,1) requires alpha < -q^{-I-J+1}"
                                    : "q > 1 requires -q^{-I-J+1} < alpha < 0";
    throw std::domain_error("make_scaling: L = " + std::to_string(L) +
                            " is below the stochasticity threshold; " + branch);
  }

  ScalingContext sc;
  sc.L = L;
  sc.beta1 = beta1;
  sc.beta2 = beta2;
  sc.I = I;
  sc.J = J;
  sc.q = qa.q;
  sc.alpha = qa.alpha;
  sc.nu = pow_int(qa.q, -static_cast<long long>(I));
  sc.b1 = (qa.alpha + sc.nu) / (1.0 + qa.alpha);
  sc.b2 = (1.0 + qa.alpha * pow_int(qa.q, J)) / (1.0 + qa.alpha);
  sc.frak_q = std::exp(beta1 - beta2);

  sc.l_min = L;
  for (long Lp = 1; Lp <= L; ++Lp) {
    const QAlpha t = derive(Lp, beta1, beta2, J);
    if (stochasticity_ok(t.q, t.alpha, I, J)) {
      sc.l_min = Lp;
      break;
    }
  }
  return sc;
}

std::pair<double, double> expansion_check(const ScalingContext& sc) {
  const double L = static_cast<double>(sc.L);
  const double dev_b1 = std::fabs(sc.b1 - (1.0 - sc.I * sc.beta1 / L)) * L * L;
  const double dev_b2 = std::fabs(sc.b2 - (1.0 - sc.J * sc.beta2 / L)) * L * L;
  return {dev_b1, dev_b2};
}

double diagonal_dominance(const ScalingContext& sc) {
  const ModelParams<double> p = sc.params();
  double worst = 0.0;
  for (int i1 = 0; i1 <= p.I; ++i1)
    for (int j1 = 0; j1 <= p.J; ++j1)
      for (const auto& out : row_distribution(p, i1, j1)) {
        const double target = (out.i2 == i1 && out.j2 == j1) ? 1.0 : 0.0;
        worst = std::max(worst, std::fabs(out.weight - target));
      }
  return worst * static_cast<double>(sc.L);
}

}  // namespace shs6v
