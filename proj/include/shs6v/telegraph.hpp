#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "shs6v/scalar.hpp"

namespace shs6v {

/// Coefficients of the hyperbolic equation u_XY + beta1_eff u_Y + beta2_eff u_X = f.
/// For the vertex-model limit these are (I beta1, J beta2).
struct TelegraphCoeffs {
  double beta1_eff;  // multiplies u_Y
  double beta2_eff;  // multiplies u_X

  TelegraphCoeffs(double b1e, double b2e) : beta1_eff(b1e), beta2_eff(b2e) {
    if (!(b1e > 0.0) || !(b2e > 0.0))
      throw std::domain_error("TelegraphCoeffs: coefficients must be positive");
    if (b1e == b2e)
      throw std::domain_error("TelegraphCoeffs: equal coefficients collapse the two poles");
  }
};

/// Riemann kernel R(X, Y; x, y) of the telegraph operator, evaluated by the
/// residue series at the essential singularity (Laurent expansion of the
/// contour integrand around the pole at -beta1_eff). Terms are generated by
/// the Laguerre three-term recurrence and the sum is truncated when terms
/// fall below 1e-14 of the partial sum. Throws on non-convergence.
double riemann_continuum(const TelegraphCoeffs& c, double X, double Y, double x, double y);

/// Independent evaluation of the same contour integral by the trapezoid
/// rule on a circle of radius |beta2_eff - beta1_eff|/2 around the pole.
/// Test oracle and fallback; spectrally accurate for analytic integrands.
double riemann_contour_quadrature(const TelegraphCoeffs& c, double X, double Y, double x,
                                  double y, int nodes = 4096);

/// Boundary data for the continuum solver: the function and its derivative.
struct BoundaryCurve {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
};

/// Makes a curve from a value function alone, differentiating numerically.
BoundaryCurve boundary_curve_numeric(std::function<double(double)> value);

/// Solution of u_XY + beta1_eff u_Y + beta2_eff u_X = 0 with u(.,0) = chi,
/// u(0,.) = psi, via the Riemann representation
///   psi(0) R(X,Y;0,0) + int_0^Y R(X,Y;0,y)(psi' + beta2_eff psi) dy
///                     + int_0^X R(X,Y;x,0)(chi' + beta1_eff chi) dx,
/// with adaptive Gauss-Legendre quadrature at the given absolute tolerance.
double solve_telegraph(const TelegraphCoeffs& c, const BoundaryCurve& chi,
                       const BoundaryCurve& psi, double X, double Y, double abs_tol = 1e-10);

/// Coefficients of the discrete telegraph recurrence
///   Phi(X+1,Y+1) - b1 Phi(X,Y+1) - b2 Phi(X+1,Y) + (b1+b2-1) Phi(X,Y) = g.
template <class S>
struct DiscreteCoeffs {
  S b1, b2;
  DiscreteCoeffs(const S& b1_, const S& b2_) : b1(b1_), b2(b2_) {
    if (!(b1 > S(0)) || !(b1 < S(1)) || !(b2 > S(0)) || !(b2 < S(1)))
      throw std::domain_error("DiscreteCoeffs: b1, b2 must lie in (0, 1)");
    if (b1 == b2)
      throw std::domain_error("DiscreteCoeffs: b1 = b2 is rejected (coincident poles)");
  }
};

/// Table of the discrete Riemann kernel over offsets; the kernel depends on
/// (X - x, Y - y) only. Filled by the Green's-function recurrence:
/// corner 1, edges b1^dx and b2^dy, interior
///   G(dx,dy) = b1 G(dx-1,dy) + b2 G(dx,dy-1) - (b1+b2-1) G(dx-1,dy-1).
template <class S>
class DiscreteRiemannTable {
 public:
  DiscreteRiemannTable(const DiscreteCoeffs<S>& d, int dx_max, int dy_max)
      : nx_(dx_max + 1), ny_(dy_max + 1) {
    if (dx_max < 0 || dy_max < 0)
      throw std::invalid_argument("DiscreteRiemannTable: negative extent");
    t_.assign(static_cast<std::size_t>(nx_) * ny_, S(0));
    cell(0, 0) = S(1);
    for (int dx = 1; dx < nx_; ++dx) cell(dx, 0) = cell(dx - 1, 0) * d.b1;
    for (int dy = 1; dy < ny_; ++dy) cell(0, dy) = cell(0, dy - 1) * d.b2;
    const S corner = d.b1 + d.b2 - S(1);
    for (int dy = 1; dy < ny_; ++dy)
      for (int dx = 1; dx < nx_; ++dx)
        cell(dx, dy) =
            d.b1 * cell(dx - 1, dy) + d.b2 * cell(dx, dy - 1) - corner * cell(dx - 1, dy - 1);
  }

  const S& at(int dx, int dy) const {
    if (dx < 0 || dx >= nx_ || dy < 0 || dy >= ny_)
      throw std::out_of_range("DiscreteRiemannTable: offset outside the table");
    return t_[static_cast<std::size_t>(dy) * nx_ + dx];
  }

 private:
  S& cell(int dx, int dy) { return t_[static_cast<std::size_t>(dy) * nx_ + dx]; }
  int nx_, ny_;
  std::vector<S> t_;
};

/// Single value R^d(X, Y; x, y).
template <class S>
S riemann_discrete(const DiscreteCoeffs<S>& d, long X, long Y, long x, long y) {
  if (x < 0 || y < 0 || x > X || y > Y)
    throw std::invalid_argument("riemann_discrete: need 0 <= x <= X, 0 <= y <= Y");
  const DiscreteRiemannTable<S> t(d, static_cast<int>(X - x), static_cast<int>(Y - y));
  return t.at(static_cast<int>(X - x), static_cast<int>(Y - y));
}

/// Full solution grid of the discrete telegraph recurrence with boundary
/// columns chi (y = 0), psi (x = 0) and source g, evaluated through the
/// four-term kernel representation at every grid point. chi has X+1
/// entries, psi has Y+1, g is row-major on the (X+1) x (Y+1) grid with the
/// x = 0 and y = 0 entries ignored. Returns a row-major (X+1) x (Y+1) grid.
template <class S>
std::vector<S> solve_discrete_telegraph(const DiscreteCoeffs<S>& d, const std::vector<S>& chi,
                                        const std::vector<S>& psi, const std::vector<S>& g,
                                        int X, int Y) {
  if (static_cast<int>(chi.size()) != X + 1 || static_cast<int>(psi.size()) != Y + 1)
    throw std::invalid_argument("solve_discrete_telegraph: boundary lengths must be X+1, Y+1");
  if (static_cast<int>(g.size()) != (X + 1) * (Y + 1))
    throw std::invalid_argument("solve_discrete_telegraph: source grid has wrong size");
  if (chi[0] != psi[0])
    throw std::domain_error("solve_discrete_telegraph: boundary mismatch at the origin");

  const DiscreteRiemannTable<S> R(d, X, Y);
  std::vector<S> phi(static_cast<std::size_t>(X + 1) * (Y + 1), S(0));
  for (int Xt = 0; Xt <= X; ++Xt)
    for (int Yt = 0; Yt <= Y; ++Yt) {
      S acc = psi[0] * R.at(Xt, Yt);
      for (int y = 1; y <= Yt; ++y) acc += R.at(Xt, Yt - y) * (psi[y] - d.b2 * psi[y - 1]);
      for (int x = 1; x <= Xt; ++x) acc += R.at(Xt - x, Yt) * (chi[x] - d.b1 * chi[x - 1]);
      for (int x = 1; x <= Xt; ++x)
        for (int y = 1; y <= Yt; ++y)
          acc += R.at(Xt - x, Yt - y) * g[static_cast<std::size_t>(y) * (X + 1) + x];
      phi[static_cast<std::size_t>(Yt) * (X + 1) + Xt] = acc;
    }
  return phi;
}

/// Mean field q^h with partial derivatives, backed by the continuum solver.
/// Derivatives use two-step central differences with Richardson
/// extrapolation (steps 1e-3 and 5e-4, shrunk near the domain edge).
class MeanFieldEvaluator {
 public:
  MeanFieldEvaluator(const TelegraphCoeffs& c, BoundaryCurve chi, BoundaryCurve psi,
                     double abs_tol = 1e-10);

  double value(double x, double y) const;
  double dx(double x, double y) const;
  double dy(double x, double y) const;

 private:
  TelegraphCoeffs c_;
  BoundaryCurve chi_, psi_;
  double tol_;
};

struct CovarianceParams {
  int I;
  double beta1;
  int J;
  double beta2;
};

/// Covariance of the limit fluctuation field at two points: tensor-product
/// Gauss-Legendre quadrature over the common rectangle
/// [0, X1 ^ X2] x [0, Y1 ^ Y2] of R_IJ(X1,Y1;x,y) R_IJ(X2,Y2;x,y) theta(x,y)
/// with noise coefficient
///   theta = (beta1+beta2) qx qy + J(beta2-beta1) beta2 q qx
///         + I(beta1-beta2) beta1 q qy.
/// Throws if theta is genuinely negative at a quadrature node.
double clt_covariance(const CovarianceParams& cp, const MeanFieldEvaluator& qh, double X1,
                      double Y1, double X2, double Y2, int order = 32);

}  // namespace shs6v
