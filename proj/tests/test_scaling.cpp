#include <doctest.h>

#include <cmath>
#include <vector>

#include "shs6v/scaling.hpp"

using namespace shs6v;

TEST_CASE("make_scaling satisfies its defining relation") {
  for (const auto [b1, b2] : std::vector<std::pair<double, double>>{{2, 1}, {1, 2}, {3, 0.5}})
    for (const auto [I, J] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 3}, {3, 3}})
      for (long L : {16L, 100L, 512L, 3200L}) {
        const ScalingContext sc = make_scaling(L, b1, b2, I, J);
        const double target = std::exp(-J * b2 / static_cast<double>(L));
        const double lhs = (1.0 + sc.alpha * pow_int(sc.q, J)) / (1.0 + sc.alpha);
        CHECK(std::fabs(lhs - target) <= 1e-15);
        CHECK(std::fabs(sc.b2 - target) <= 1e-15);  // b2 is the defining relation
        CHECK(std::fabs(sc.q - std::exp((b1 - b2) / static_cast<double>(L))) == 0.0);
        CHECK(sc.frak_q == std::exp(b1 - b2));
      }
}

TEST_CASE("alpha tends to -beta2/beta1") {
  const ScalingContext sc = make_scaling(1000000, 2.0, 1.0, 1, 1);
  CHECK(std::fabs(sc.alpha + 0.5) <= 1e-4);
}

TEST_CASE("make_scaling rejects degenerate inputs") {
  CHECK_THROWS_AS(make_scaling(100, 1.0, 1.0, 1, 1), std::domain_error);
  CHECK_THROWS_AS(make_scaling(100, -1.0, 1.0, 1, 1), std::domain_error);
  CHECK_THROWS_AS(make_scaling(0, 2.0, 1.0, 1, 1), std::invalid_argument);
}

TEST_CASE("stochasticity branch matches the sign of beta1 - beta2") {
  for (const auto [b1, b2] :
       std::vector<std::pair<double, double>>{{2, 1}, {1, 2}, {3, 0.5}, {0.5, 3}})
    for (const auto [I, J] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 3}, {3, 3}})
      for (long L = 16; L <= 4096; L *= 2) {
        const ScalingContext sc = make_scaling(L, b1, b2, I, J);
        CHECK((sc.q > 1) == (b1 > b2));
        CHECK(stochasticity_ok(sc.q, sc.alpha, I, J));
        // strict interior of the branch interval
        const double thr = pow_int(sc.q, -(I + J - 1));
        if (sc.q > 1) {
          CHECK(sc.alpha > -thr);
          CHECK(sc.alpha < 0);
        } else {
          CHECK(sc.alpha < -thr);
        }
        CHECK(sc.l_min <= L);
      }
}

TEST_CASE("expansion deviations from first order stay bounded") {
  for (const auto [I, J] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 3}}) {
    std::vector<double> dev1s, dev2s;
    for (long L = 100; L <= 3200; L *= 2) {
      const auto [dev1, dev2] = expansion_check(make_scaling(L, 2.0, 1.0, I, J));
      dev1s.push_back(dev1);
      dev2s.push_back(dev2);
    }
    // bounded: no growth beyond a fixed multiple of the first value
    for (double d : dev1s) CHECK(d <= 3.0 * dev1s.front() + 1.0);
    for (double d : dev2s) CHECK(d <= 3.0 * dev2s.front() + 1.0);
  }
}

TEST_CASE("diagonal dominance of the transfer weights") {
  // exact diagonal entry at the empty configuration
  const ScalingContext sc0 = make_scaling(100, 2.0, 1.0, 2, 2);
  CHECK(lJ_weight_hypergeom(sc0.params(), VertexConfig{0, 0, 0, 0}) == 1.0);

  for (const auto [I, J] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 3}}) {
    std::vector<double> devs;
    for (long L = 100; L <= 3200; L *= 2)
      devs.push_back(diagonal_dominance(make_scaling(L, 2.0, 1.0, I, J)));
    double lo = devs[0], hi = devs[0];
    for (double d : devs) {
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    CHECK(hi / lo <= 1.5);
  }
}

TEST_CASE("J=1 off-diagonal entries approach beta2 m / L and beta1 (I-m) / L") {
  const int I = 3;
  const double beta1 = 2.0, beta2 = 1.0;
  const ScalingContext sc = make_scaling(3200, beta1, beta2, I, 1);
  const auto p = sc.params();
  const double L = static_cast<double>(sc.L);
  for (int m = 1; m <= I; ++m) {
    const double w = lJ_weight_hypergeom(p, VertexConfig{m, 0, m - 1, 1});
    CHECK(std::fabs(w * L - beta2 * m) <= 0.01);
  }
  for (int m = 0; m < I; ++m) {
    const double w = lJ_weight_hypergeom(p, VertexConfig{m, 1, m + 1, 0});
    CHECK(std::fabs(w * L - beta1 * (I - m)) <= 0.01);
  }
}
