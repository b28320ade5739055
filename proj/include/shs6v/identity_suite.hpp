#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shs6v/scalar.hpp"

namespace shs6v {

/// Five rational (q, alpha) points inside each stochasticity branch for the
/// given (I, J): first the q > 1 branch, then q in (0, 1).
std::vector<std::pair<Rational, Rational>> rational_param_points(int I, int J);

std::string rational_point_label(const Rational& q, const Rational& alpha);

struct IdentityResult {
  std::string identity;
  int I = 0, J = 0;
  std::string point;
  bool pass = false;
};

/// Exact rational verification sweep over 1 <= I <= maxI, 1 <= J <= maxJ:
/// three-route weight agreement, row stochasticity and nonnegativity, the
/// vanishing conditional mean, the J = 1 closed-form second moments, the
/// J = 2 reversal witness, and the I = 2, J = 1 no-exact-quadratic witness.
/// Every check is equality of rationals.
std::vector<IdentityResult> run_identity_suite(int maxI, int maxJ);

}  // namespace shs6v
