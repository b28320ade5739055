#include <doctest.h>

#include <cmath>
#include <vector>

#include "param_points.hpp"
#include "shs6v/rng.hpp"
#include "shs6v/weights.hpp"

using namespace shs6v;
using shs6v_test::rational_param_points;

namespace {

std::vector<VertexConfig> all_configs(int I, int J) {
  std::vector<VertexConfig> cs;
  for (int i1 = 0; i1 <= I; ++i1)
    for (int j1 = 0; j1 <= J; ++j1)
      for (int i2 = 0; i2 <= I; ++i2)
        for (int j2 = 0; j2 <= J; ++j2) cs.push_back({i1, j1, i2, j2});
  return cs;
}

}  // namespace

TEST_CASE("ModelParams validates the stochasticity branches") {
  CHECK_NOTHROW(ModelParams<Rational>::create(Rational(2), make_frac(-1, 8), 1, 1));
  CHECK_NOTHROW(ModelParams<Rational>::create(make_frac(1, 2), Rational(-3), 1, 1));
  // alpha on the wrong side of the threshold
  CHECK_THROWS_AS(ModelParams<Rational>::create(Rational(2), Rational(-1), 1, 1),
                  std::domain_error);
  CHECK_THROWS_AS(ModelParams<Rational>::create(make_frac(1, 2), Rational(-2), 1, 1),
                  std::domain_error);
  CHECK_THROWS_AS(ModelParams<Rational>::create(Rational(2), make_frac(1, 8), 1, 1),
                  std::domain_error);
  CHECK_THROWS_AS(ModelParams<Rational>::create(Rational(1), make_frac(-1, 8), 1, 1),
                  std::domain_error);
  // nu is forced to q^{-I}
  const auto p = ModelParams<Rational>::create(Rational(2), make_frac(-1, 16), 2, 2);
  CHECK(p.nu == make_frac(1, 4));
}

TEST_CASE("l1_weight matches the four defining entries") {
  // q=2, I=1 (nu = 1/2), spectral = -1/4
  const auto p = ModelParams<Rational>::create(Rational(2), make_frac(-1, 4), 1, 1);
  const Rational s = make_frac(-1, 4);
  CHECK(l1_weight(p, s, 0, 0, 0, 0) == Rational(1));
  CHECK(l1_weight(p, s, 1, 0, 1, 0) == make_frac(2, 3));
  CHECK(l1_weight(p, s, 0, 1, 0, 1) == make_frac(1, 3));   // (spectral + nu)/(1 + spectral)
  CHECK(l1_weight(p, s, 1, 1, 1, 1) == Rational(1));       // forced output at m = I
  CHECK(l1_weight(p, s, 1, 1, 2, 0) == Rational(0));       // 1 - q^{I-I} vanishes
  CHECK(l1_weight(p, s, 0, 1, 0, 0) == Rational(0));       // not one of the four entries

  // row stochasticity at every (m, j1), several spectral values
  const Rational spectrals[3] = {make_frac(-1, 4), make_frac(-1, 3), make_frac(-2, 5)};
  for (const auto& sp : spectrals)
    for (int m = 0; m <= 1; ++m)
      for (int j1 = 0; j1 <= 1; ++j1) {
        Rational sum(0);
        for (int m2 = 0; m2 <= 1; ++m2)
          for (int j2 = 0; j2 <= 1; ++j2) sum += l1_weight(p, sp, m, j1, m2, j2);
        CHECK(sum == Rational(1));
      }

  CHECK_THROWS_AS(l1_weight(p, Rational(-1), 0, 0, 0, 0), singular_parameter);
}

TEST_CASE("hypergeometric route reduces to l1_weight at J = 1") {
  for (int I = 1; I <= 3; ++I)
    for (const auto& [q, alpha] : rational_param_points(I, 1)) {
      const auto p = ModelParams<Rational>::create(q, alpha, I, 1);
      for (int m = 0; m <= I; ++m)
        for (int j1 = 0; j1 <= 1; ++j1)
          for (int m2 = 0; m2 <= I; ++m2)
            for (int j2 = 0; j2 <= 1; ++j2) {
              const Rational lhs = lJ_weight_hypergeom(p, {m, j1, m2, j2});
              const Rational rhs = l1_weight(p, alpha, m, j1, m2, j2);
              REQUIRE(lhs == rhs);
            }
    }
}

TEST_CASE("three routes agree exactly for I,J <= 3") {
  for (int I = 1; I <= 3; ++I)
    for (int J = 1; J <= 3; ++J)
      for (const auto& [q, alpha] : rational_param_points(I, J)) {
        const auto p = ModelParams<Rational>::create(q, alpha, I, J);
        for (const auto& c : all_configs(I, J)) {
          const Rational hg = lJ_weight_hypergeom(p, c);
          const Rational fu = lJ_weight_fused(p, c);
          const Rational rv = lJ_weight_fused_reversed(p, c);
          REQUIRE(hg == fu);
          REQUIRE(fu == rv);
        }
      }
}

TEST_CASE("weights vanish off conservation and are nonnegative on it") {
  for (int I = 1; I <= 3; ++I)
    for (int J = 1; J <= 3; ++J)
      for (const auto& [q, alpha] : rational_param_points(I, J)) {
        const auto p = ModelParams<Rational>::create(q, alpha, I, J);
        for (const auto& c : all_configs(I, J)) {
          const Rational w = lJ_weight_hypergeom(p, c);
          if (c.i1 + c.j1 != c.i2 + c.j2)
            REQUIRE(w == Rational(0));
          else
            REQUIRE(w >= Rational(0));
        }
      }
}

TEST_CASE("row sums are exactly one") {
  for (int I = 1; I <= 3; ++I)
    for (int J = 1; J <= 3; ++J)
      for (const auto& [q, alpha] : rational_param_points(I, J)) {
        const auto p = ModelParams<Rational>::create(q, alpha, I, J);
        for (int i1 = 0; i1 <= I; ++i1)
          for (int j1 = 0; j1 <= J; ++j1) {
            Rational sum(0);
            for (const auto& out : row_distribution(p, i1, j1)) sum += out.weight;
            REQUIRE(sum == Rational(1));
          }
      }
}

TEST_CASE("row_distribution endpoints") {
  const auto p = ModelParams<Rational>::create(Rational(2), make_frac(-1, 32), 2, 3);
  const auto empty = row_distribution(p, 0, 0);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].i2 == 0);
  CHECK(empty[0].j2 == 0);
  CHECK(empty[0].weight == Rational(1));

  // (I, J) input forces the unique output (I, J)
  const auto full = row_distribution(p, p.I, p.J);
  REQUIRE(full.size() == 1);
  CHECK(full[0].i2 == p.I);
  CHECK(full[0].j2 == p.J);
  CHECK(full[0].weight == Rational(1));
}

TEST_CASE("row_distribution sums to one in binary64") {
  std::vector<ModelParams<double>> cases;
  cases.push_back(ModelParams<double>::create(1.01, -0.4, 3, 4));
  // near-critical q from the large-L regime, where cancellation is worst
  {
    const double q = std::exp(1.0 / 1600), c = std::exp(-8.0 / 1600);
    cases.push_back(ModelParams<double>::create(q, (c - 1) / (pow_int(q, 8) - c), 3, 8));
  }
  for (const auto& p : cases)
    for (int i1 = 0; i1 <= p.I; ++i1)
      for (int j1 = 0; j1 <= p.J; ++j1) {
        double sum = 0;
        for (const auto& out : row_distribution(p, i1, j1)) {
          CHECK(out.weight >= -1e-15);
          sum += out.weight;
        }
        CHECK(std::fabs(sum - 1.0) <= 1e-14);
      }
}

TEST_CASE("empty-column pass-through agrees across routes") {
  // (0, j; 0, j) evaluated on the hypergeometric route equals the fused value
  for (int J = 1; J <= 3; ++J)
    for (const auto& [q, alpha] : rational_param_points(2, J)) {
      const auto p = ModelParams<Rational>::create(q, alpha, 2, J);
      for (int j = 0; j <= J; ++j) {
        const VertexConfig c{0, j, 0, j};
        REQUIRE(lJ_weight_hypergeom(p, c) == lJ_weight_fused(p, c));
      }
    }
}

TEST_CASE("reversal identity four-term witness at J = 2") {
  // the (v,1;v,1) entry equals the common four-term sum of both fusion orders
  for (int I = 1; I <= 3; ++I)
    for (const auto& [q, alpha] : rational_param_points(I, 2)) {
      const auto p = ModelParams<Rational>::create(q, alpha, I, 2);
      const Rational nu = p.nu;
      for (int v = 0; v <= I; ++v) {
        const Rational qv = pow_int(q, v);
        const Rational four_terms =
            q * (alpha * q + nu * qv) * (Rational(1) + alpha * qv) +
            q * alpha * (Rational(1) - nu * qv) * (Rational(1) - qv * q) +
            alpha * q * (Rational(1) - qv) * (Rational(1) - nu * qv / q) +
            (Rational(1) + alpha * qv * q) * (alpha + nu * qv);
        const Rational denom =
            (Rational(1) + q) * (Rational(1) + alpha) * (Rational(1) + alpha * q);
        const VertexConfig c{v, 1, v, 1};
        REQUIRE(lJ_weight_fused(p, c) == four_terms / denom);
        REQUIRE(lJ_weight_fused_reversed(p, c) == four_terms / denom);
      }
    }
}

TEST_CASE("fusion corruption hook breaks the fused route") {
  const auto p = ModelParams<Rational>::create(Rational(2), make_frac(-1, 8), 1, 2);
  const VertexConfig c{1, 1, 1, 1};
  const Rational clean = lJ_weight_fused(p, c);
  set_fusion_corruption(true);
  const Rational corrupted = lJ_weight_fused(p, c);
  set_fusion_corruption(false);
  CHECK(clean != corrupted);
  CHECK(lJ_weight_fused(p, c) == clean);
}

TEST_CASE("randomized parameter sweep keeps the binary64 invariants") {
  // property-style check over the whole admissible cone, fixed seed
  RngStream rng(0xfeedULL);
  for (int trial = 0; trial < 200; ++trial) {
    const int I = 1 + static_cast<int>(rng.next_uniform() * 3);
    const int J = 1 + static_cast<int>(rng.next_uniform() * 3);
    const bool upper = rng.next_uniform() < 0.5;
    const double q = upper ? 1.0 + 2.0 * rng.next_uniform()
                           : 0.2 + 0.7 * rng.next_uniform();
    const double thr = pow_int(q, -(I + J - 1));
    const double alpha = upper ? -thr * (0.05 + 0.9 * rng.next_uniform())
                               : -thr * (1.05 + 3.0 * rng.next_uniform());
    const auto p = ModelParams<double>::create(q, alpha, I, J);
    for (int i1 = 0; i1 <= I; ++i1)
      for (int j1 = 0; j1 <= J; ++j1) {
        double sum = 0.0;
        for (const auto& out : row_distribution(p, i1, j1)) {
          REQUIRE(out.weight >= -1e-13);
          const double fused = lJ_weight_fused(p, VertexConfig{i1, j1, out.i2, out.j2});
          REQUIRE(std::fabs(out.weight - fused) <=
                  1e-10 * std::max(1.0, std::fabs(out.weight)));
          sum += out.weight;
        }
        REQUIRE(std::fabs(sum - 1.0) <= 1e-13);
      }
  }
}

TEST_CASE("rational and binary64 weights agree") {
  for (int I = 1; I <= 2; ++I)
    for (int J = 1; J <= 2; ++J) {
      const Rational q = make_frac(5, 4);
      const Rational alpha = -pow_int(q, -(I + J - 1)) / 2;
      const auto pr = ModelParams<Rational>::create(q, alpha, I, J);
      const auto pd = ModelParams<double>::create(to_double(q), to_double(alpha), I, J);
      for (const auto& c : all_configs(I, J)) {
        const double exact = to_double(lJ_weight_hypergeom(pr, c));
        const double approx = lJ_weight_hypergeom(pd, c);
        CHECK(approx == doctest::Approx(exact).epsilon(1e-12));
      }
    }
}
