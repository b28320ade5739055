#include "shs6v/telegraph.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "shs6v/quadrature.hpp"

namespace shs6v {

namespace {

void check_domain(double X, double Y, double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0) || !(x <= X) || !(y <= Y))
    throw std::out_of_range("riemann kernel: need 0 <= x <= X and 0 <= y <= Y");
}

}  // namespace

double riemann_continuum(const TelegraphCoeffs& c, double X, double Y, double x, double y) {
  check_domain(X, Y, x, y);
  const double tx = X - x, ty = Y - y;
  const double a = c.beta2_eff * tx;   // Laguerre argument from the analytic part
  const double cc = c.beta1_eff * ty;  // strength of the essential singularity
  const double prefactor = std::exp((c.beta1_eff - c.beta2_eff) * ty - c.beta1_eff * tx);

  // Laurent coefficients of the analytic part are e^{-a} L_j(a); pairing
  // them with the (-cc)^j / j! expansion of the essential factor gives the
  // residue as a single series.
  const int min_terms = 12 + static_cast<int>(2.0 * std::sqrt(std::fabs(a * cc)) + a);
  const int max_terms = 20000;
  double lag = 1.0, lag_prev = 0.0;  // L_0; the recurrence bootstraps L_1
  double pw = 1.0;                   // (-cc)^j / j!
  double sum = 0.0;
  int small_run = 0;
  for (int j = 0; j < max_terms; ++j) {
    const double term = lag * pw;
    sum += term;
    if (std::fabs(term) <= 1e-14 * std::max(std::fabs(sum), 1e-300)) {
      if (++small_run >= 4 && j >= min_terms) return prefactor * sum;
    } else {
      small_run = 0;
    }
    pw *= -cc / (j + 1);
    const double lag_next = ((2 * j + 1 - a) * lag - j * lag_prev) / (j + 1);
    lag_prev = lag;
    lag = lag_next;
  }
  throw std::runtime_error("riemann_continuum: residue series did not converge");
}

double riemann_contour_quadrature(const TelegraphCoeffs& c, double X, double Y, double x,
                                  double y, int nodes) {
  check_domain(X, Y, x, y);
  const double b1 = c.beta1_eff, b2 = c.beta2_eff;
  const double tx = X - x, ty = Y - y;
  const double r = 0.5 * std::fabs(b2 - b1);
  std::complex<double> acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double theta = 2.0 * M_PI * k / nodes;
    const std::complex<double> z = std::complex<double>(-b1, 0.0) +
                                   r * std::complex<double>(std::cos(theta), std::sin(theta));
    const std::complex<double> f = (b2 - b1) / ((z + b1) * (z + b2)) *
                                   std::exp((b1 - b2) * (-tx * z / (z + b2) + ty * z / (z + b1)));
    acc += f * (z + b1);
  }
  return (acc / static_cast<double>(nodes)).real();
}

BoundaryCurve boundary_curve_numeric(std::function<double(double)> value) {
  auto deriv = [value](double t) {
    const double h = std::max(1e-6, 1e-6 * std::fabs(t));
    if (t < h) return (-3.0 * value(t) + 4.0 * value(t + h) - value(t + 2 * h)) / (2.0 * h);
    return (value(t + h) - value(t - h)) / (2.0 * h);
  };
  return {std::move(value), std::move(deriv)};
}

double solve_telegraph(const TelegraphCoeffs& c, const BoundaryCurve& chi,
                       const BoundaryCurve& psi, double X, double Y, double abs_tol) {
  if (!(X >= 0.0) || !(Y >= 0.0))
    throw std::invalid_argument("solve_telegraph: corner must be in the quadrant");
  if (std::fabs(chi.value(0.0) - psi.value(0.0)) > 1e-9)
    throw std::domain_error("solve_telegraph: boundary mismatch at the origin");

  double u = psi.value(0.0) * riemann_continuum(c, X, Y, 0.0, 0.0);
  u += adaptive_gauss(
      [&](double yy) {
        return riemann_continuum(c, X, Y, 0.0, yy) *
               (psi.deriv(yy) + c.beta2_eff * psi.value(yy));
      },
      0.0, Y, abs_tol);
  u += adaptive_gauss(
      [&](double xx) {
        return riemann_continuum(c, X, Y, xx, 0.0) *
               (chi.deriv(xx) + c.beta1_eff * chi.value(xx));
      },
      0.0, X, abs_tol);
  return u;
}

MeanFieldEvaluator::MeanFieldEvaluator(const TelegraphCoeffs& c, BoundaryCurve chi,
                                       BoundaryCurve psi, double abs_tol)
    : c_(c), chi_(std::move(chi)), psi_(std::move(psi)), tol_(abs_tol) {}

double MeanFieldEvaluator::value(double x, double y) const {
  return solve_telegraph(c_, chi_, psi_, x, y, tol_);
}

namespace {

double richardson_partial(const std::function<double(double)>& f, double t) {
  const double h = std::min(1e-3, t > 0 ? 0.5 * t : 1e-3);
  if (t < 1e-12) {
    // one-sided at the domain edge
    return (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2 * h)) / (2.0 * h);
  }
  const double d1 = (f(t + h) - f(t - h)) / (2.0 * h);
  const double d2 = (f(t + 0.5 * h) - f(t - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

double MeanFieldEvaluator::dx(double x, double y) const {
  return richardson_partial([&](double t) { return value(t, y); }, x);
}

double MeanFieldEvaluator::dy(double x, double y) const {
  return richardson_partial([&](double t) { return value(x, t); }, y);
}

double clt_covariance(const CovarianceParams& cp, const MeanFieldEvaluator& qh, double X1,
                      double Y1, double X2, double Y2, int order) {
  const TelegraphCoeffs cij(cp.I * cp.beta1, cp.J * cp.beta2);
  const double Xm = std::min(X1, X2), Ym = std::min(Y1, Y2);
  if (Xm <= 0.0 || Ym <= 0.0) return 0.0;

  const auto [xs, wx] = gauss_legendre_rule(order, 0.0, Xm);
  const auto [ys, wy] = gauss_legendre_rule(order, 0.0, Ym);
  double total = 0.0;
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      const double xq = xs[i], yq = ys[j];
      const double q = qh.value(xq, yq);
      const double qx = qh.dx(xq, yq);
      const double qy = qh.dy(xq, yq);
      const double t1 = (cp.beta1 + cp.beta2) * qx * qy;
      const double t2 = cp.J * (cp.beta2 - cp.beta1) * cp.beta2 * q * qx;
      const double t3 = cp.I * (cp.beta1 - cp.beta2) * cp.beta1 * q * qy;
      double theta = t1 + t2 + t3;
      const double scale = std::fabs(t1) + std::fabs(t2) + std::fabs(t3);
      // tolerate the finite-difference noise floor of the partials
      if (theta < -(1e-9 + 1e-7 * scale)) {
        std::ostringstream msg;
        msg << "clt_covariance: negative noise coefficient theta = " << theta << " at (x, y) = ("
            << xq << ", " << yq << "); the mean field is outside the admissible cone";
        throw std::runtime_error(msg.str());
      }
      if (theta < 0.0) theta = 0.0;  // finite-difference noise only
      total += wx[i] * wy[j] * riemann_continuum(cij, X1, Y1, xq, yq) *
               riemann_continuum(cij, X2, Y2, xq, yq) * theta;
    }
  return total;
}

}  // namespace shs6v
