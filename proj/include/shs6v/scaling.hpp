#pragma once

#include <utility>

#include "shs6v/weights.hpp"

namespace shs6v {

/// The large-L parameter regime: q = e^{(beta1-beta2)/L} and alpha chosen so
/// that (1 + alpha q^J)/(1 + alpha) = e^{-J beta2 / L}. In this regime a
/// vertex keeps the direction of incoming lines up to O(1/L) corrections.
struct ScalingContext {
  long L = 0;
  double beta1 = 0, beta2 = 0;
  int I = 1, J = 1;
  // derived
  double q = 0, alpha = 0, nu = 0;
  double b1 = 0, b2 = 0;
  double frak_q = 0;  // e^{beta1 - beta2}
  long l_min = 0;     // smallest L passing the stochasticity check

  ModelParams<double> params() const { return ModelParams<double>::create(q, alpha, I, J); }
};

/// Builds the context; throws std::domain_error when beta1 = beta2 (q would
/// be 1) or when L is below the stochasticity threshold, naming the violated
/// branch.
ScalingContext make_scaling(long L, double beta1, double beta2, int I, int J);

/// Deviations of (b1, b2) from their first-order forms, scaled by L^2:
/// (|b1 - (1 - I beta1/L)| L^2, |b2 - (1 - J beta2/L)| L^2). Both stay
/// bounded as L grows.
std::pair<double, double> expansion_check(const ScalingContext& sc);

/// max over all vertex configurations of |weight - 1{i1=i2, j1=j2}| * L;
/// stays bounded as L grows.
double diagonal_dominance(const ScalingContext& sc);

}  // namespace shs6v
