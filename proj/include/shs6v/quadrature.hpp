#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace shs6v {

/// Adaptive Gauss-Legendre integration: a 15-point panel is accepted when
/// bisecting it changes the value by less than the tolerance, otherwise the
/// halves are refined with the split tolerance.
inline double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                             double abs_tol, int max_depth = 32) {
  using rule = boost::math::quadrature::gauss<double, 15>;
  struct Rec {
    static double go(const std::function<double(double)>& f, double a, double b, double whole,
                     double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double left = rule::integrate(f, a, m);
      const double right = rule::integrate(f, m, b);
      if (depth <= 0 || std::fabs(left + right - whole) <= tol) return left + right;
      return go(f, a, m, left, 0.5 * tol, depth - 1) + go(f, m, b, right, 0.5 * tol, depth - 1);
    }
  };
  if (a == b) return 0.0;
  return Rec::go(f, a, b, rule::integrate(f, a, b), abs_tol, max_depth);
}

/// Gauss-Legendre nodes and weights on [a, b], computed by Newton iteration
/// on the Legendre recurrence.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(int n, double a,
                                                                               double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_rule: order must be >= 1");
  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * k + 1) * z * p1 - k * p2) / (k + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  const double mid = 0.5 * (a + b), scale = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    x[i] = mid + scale * x[i];
    w[i] *= scale;
  }
  return {x, w};
}

}  // namespace shs6v
