#pragma once

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shs6v/qnum.hpp"
#include "shs6v/scalar.hpp"

namespace shs6v {

/// True when (q, alpha) lie in one of the two parameter branches that make
/// the row weights a probability distribution: q in (0,1) with
/// alpha < -q^{-I-J+1}, or q > 1 with -q^{-I-J+1} < alpha < 0.
template <class S>
bool stochasticity_ok(const S& q, const S& alpha, int I, int J) {
  if (!(q > S(0)) || q == S(1)) return false;
  const S thr = pow_int(q, -static_cast<long long>(I + J - 1));
  if (q < S(1)) return alpha < -thr;
  return alpha > -thr && alpha < S(0);
}

/// Model parameters (q, alpha, I, J) with nu = q^{-I} derived on construction.
/// Construction rejects parameters outside the stochastic branches, so all
/// downstream formulas may assume alpha < 0, alpha != -q^{-k} for k <= I+J-1,
/// and 1 + alpha q^k != 0 for 0 <= k < J.
template <class S>
struct ModelParams {
  S q;
  S alpha;
  S nu;  // q^{-I}
  int I = 1;
  int J = 1;

  static ModelParams create(const S& q, const S& alpha, int I, int J) {
    if (I < 1 || J < 1) throw std::invalid_argument("ModelParams: I, J must be >= 1");
    if (!(q > S(0)) || q == S(1))
      throw std::domain_error("ModelParams: q must be positive and != 1");
    if (!stochasticity_ok(q, alpha, I, J)) {
      const char* branch = q < S(1) ? "q in (0,1) requires alpha < -q^{-I-J+1}"
                                    : "q > 1 requires -q^{-I-J+1} < alpha < 0";
      throw std::domain_error(std::string("ModelParams: stochasticity violated: ") + branch);
    }
    ModelParams p;
    p.q = q;
    p.alpha = alpha;
    p.nu = pow_int(q, -static_cast<long long>(I));
    p.I = I;
    p.J = J;
    return p;
  }

  /// b1 = (alpha + nu) / (1 + alpha)
  S b1() const { return (alpha + nu) / (S(1) + alpha); }
  /// b2 = (1 + alpha q^J) / (1 + alpha)
  S b2() const { return (S(1) + alpha * pow_int(q, J)) / (S(1) + alpha); }
};

/// Vertex configuration: (vertical in, horizontal in; vertical out, horizontal out).
struct VertexConfig {
  int i1 = 0;
  int j1 = 0;
  int i2 = 0;
  int j2 = 0;
  bool conservative() const { return i1 + j1 == i2 + j2; }
};

/// Horizontal-spin-1/2 vertex weight with the given spectral parameter.
/// Nonzero entries, with d = 1 + spectral:
///   (m,0;m,0)   -> (1 + spectral q^m) / d
///   (m,0;m-1,1) -> spectral (1 - q^m) / d
///   (m,1;m,1)   -> (spectral + q^{m-I}) / d
///   (m,1;m+1,0) -> (1 - q^{m-I}) / d
/// The last entry vanishes at m = I, which keeps the vertical multiplicity
/// inside [0, I].
template <class S>
S l1_weight(const ModelParams<S>& p, const S& spectral, int m, int j1, int m2, int j2) {
  if (m < 0 || m > p.I) throw std::invalid_argument("l1_weight: m out of [0, I]");
  if ((j1 != 0 && j1 != 1) || (j2 != 0 && j2 != 1))
    throw std::invalid_argument("l1_weight: j bits must be 0 or 1");
  const S denom = S(1) + spectral;
  if (denom == S(0)) throw singular_parameter("l1_weight: spectral parameter equals -1");
  if (j1 == 0 && j2 == 0 && m2 == m) return (S(1) + spectral * pow_int(p.q, m)) / denom;
  if (j1 == 0 && j2 == 1 && m2 == m - 1) return spectral * (S(1) - pow_int(p.q, m)) / denom;
  if (j1 == 1 && j2 == 1 && m2 == m) return (spectral + pow_int(p.q, m - p.I)) / denom;
  if (j1 == 1 && j2 == 0 && m2 == m + 1) return (S(1) - pow_int(p.q, m - p.I)) / denom;
  return S(0);
}

namespace detail {

template <class S>
void validate_config(const ModelParams<S>& p, const VertexConfig& c) {
  if (c.i1 < 0 || c.i1 > p.I || c.i2 < 0 || c.i2 > p.I)
    throw std::invalid_argument("vertex config: vertical occupation out of [0, I]");
  if (c.j1 < 0 || c.j1 > p.J || c.j2 < 0 || c.j2 > p.J)
    throw std::invalid_argument("vertex config: horizontal occupation out of [0, J]");
}

/// Test hook: when enabled, one entry of the fusion input distribution is
/// multiplied by q, which breaks every identity that involves the fused
/// route. Used by the identity checker's self-test mode only.
inline bool& fusion_corruption_flag() {
  static bool flag = false;
  return flag;
}

/// Weight assigned to a bit-string (h_1, ..., h_J) of total h when the
/// horizontal input lines are split over the column: q^{i-1} per set bit
/// (q^{J-i} when reversed), normalized by Z_J(h).
template <class S>
S fusion_input_weight(const ModelParams<S>& p, int h, unsigned mask, bool reversed) {
  long long e = 0;
  for (int i = 1; i <= p.J; ++i)
    if ((mask >> (i - 1)) & 1u) e += reversed ? (p.J - i) : (i - 1);
  S w = pow_int(p.q, e) / z_norm(p.J, h, p.q);
  if (fusion_corruption_flag() && !reversed && h == 1 && mask == 1u) w *= p.q;
  return w;
}

/// Transition weight of a column of J spin-1/2 vertices from vertical value
/// i1 and horizontal input bits `in` to vertical value i2 and output bits
/// `out`, summed over the intermediate vertical values. The spectral
/// parameter of row k (from the bottom) is alpha q^{k-1}, or alpha q^{J-k}
/// when reversed.
template <class S>
S fused_column_weight(const ModelParams<S>& p, int i1, int i2, unsigned in, unsigned out,
                      bool reversed) {
  std::vector<S> cur(p.I + 1, S(0)), nxt(p.I + 1, S(0));
  cur[i1] = S(1);
  for (int k = 1; k <= p.J; ++k) {
    std::fill(nxt.begin(), nxt.end(), S(0));
    const int hk = (in >> (k - 1)) & 1u;
    const int hpk = (out >> (k - 1)) & 1u;
    const S spectral = p.alpha * pow_int(p.q, reversed ? (p.J - k) : (k - 1));
    for (int v = 0; v <= p.I; ++v) {
      if (cur[v] == S(0)) continue;
      const int v2 = v + hk - hpk;
      if (v2 < 0 || v2 > p.I) continue;
      nxt[v2] += cur[v] * l1_weight(p, spectral, v, hk, v2, hpk);
    }
    std::swap(cur, nxt);
  }
  return cur[i2];
}

template <class S>
S lJ_weight_fused_impl(const ModelParams<S>& p, const VertexConfig& c, bool reversed) {
  validate_config(p, c);
  if (!c.conservative()) return S(0);
  S total(0);
  const unsigned full = 1u << p.J;
  for (unsigned in = 0; in < full; ++in) {
    if (std::popcount(in) != c.j1) continue;
    const S lam = fusion_input_weight(p, c.j1, in, reversed);
    for (unsigned out = 0; out < full; ++out) {
      if (std::popcount(out) != c.j2) continue;
      total += lam * fused_column_weight(p, c.i1, c.i2, in, out, reversed);
    }
  }
  return total;
}

}  // namespace detail

/// Enables or disables the fusion-weight corruption used by the identity
/// checker's self-test mode.
inline void set_fusion_corruption(bool on) { detail::fusion_corruption_flag() = on; }

/// General-J vertex weight from the explicit formula: a q-power prefactor,
/// a ratio of q-Pochhammer symbols, and a regularized terminating 4-phi-3
/// sum. This is the fast production route; the fused routes below compute
/// the same quantity independently.
template <class S>
S lJ_weight_hypergeom(const ModelParams<S>& p, const VertexConfig& c) {
  detail::validate_config(p, c);
  if (!c.conservative()) return S(0);
  const S& q = p.q;
  const long long s = c.i1 + c.j1;
  // combined power of q in the prefactor; always an integer for
  // conservative configurations
  const long long qexp = s * (s - 1) / 2 - static_cast<long long>(c.j1) * (c.j1 - 1) / 2;

  S w = pow_int(q, qexp);
  w *= pow_int(q, -static_cast<long long>(p.I) * (c.j1 - c.i2));  // nu^{j1 - i2}
  w *= pow_int(p.alpha, c.j2 - c.j1 + c.i2);
  w *= q_pochhammer_ext(-p.alpha * pow_int(q, p.I), q, c.j2 - c.i1);
  w /= q_pochhammer(q, q, c.i2);
  const S den = q_pochhammer(-p.alpha, q, c.i2 + c.j2);
  if (den == S(0))
    throw singular_parameter("lJ_weight_hypergeom: alpha = -q^{-k} pole in (-alpha;q)_n");
  w /= den;
  w /= q_pochhammer_ext(pow_int(q, p.J + 1 - c.j1), q, c.j1 - c.j2);

  const std::array<S, 3> a = {pow_int(q, -static_cast<long long>(c.i1)),
                              -p.alpha * pow_int(q, p.J),
                              -pow_int(q, 1 - static_cast<long long>(p.I)) / p.alpha};
  const std::array<S, 3> b = {p.nu, pow_int(q, 1 + c.j2 - static_cast<long long>(c.i1)),
                              pow_int(q, p.J + 1 - static_cast<long long>(c.i2) - c.j2)};
  w *= reg_phi_4_3(c.i2, a, b, q, q);
  return w;
}

/// General-J vertex weight by fusion: split the horizontal input over a
/// column of J spin-1/2 vertices with spectral parameters alpha q^{k-1}
/// (bottom to top), weight the splits by the q^{i-1} input distribution,
/// and collapse the outputs.
template <class S>
S lJ_weight_fused(const ModelParams<S>& p, const VertexConfig& c) {
  return detail::lJ_weight_fused_impl(p, c, /*reversed=*/false);
}

/// Same fusion sum with the spectral parameters progressing top to bottom
/// and the input distribution weighted by q^{J-i}. Agrees with
/// lJ_weight_fused identically; the two routes are kept separate so the
/// agreement can be verified exactly.
template <class S>
S lJ_weight_fused_reversed(const ModelParams<S>& p, const VertexConfig& c) {
  return detail::lJ_weight_fused_impl(p, c, /*reversed=*/true);
}

template <class S>
struct RowOutcome {
  int i2 = 0;
  int j2 = 0;
  S weight;
};

/// All admissible outputs (i2, j2) with i2 + j2 = i1 + j1 and their
/// probabilities, ordered by increasing i2.
template <class S>
std::vector<RowOutcome<S>> row_distribution(const ModelParams<S>& p, int i1, int j1) {
  if (i1 < 0 || i1 > p.I || j1 < 0 || j1 > p.J)
    throw std::invalid_argument("row_distribution: input occupation out of range");
  const int s = i1 + j1;
  std::vector<RowOutcome<S>> out;
  for (int i2 = std::max(0, s - p.J); i2 <= std::min(p.I, s); ++i2) {
    const int j2 = s - i2;
    out.push_back({i2, j2, lJ_weight_hypergeom(p, VertexConfig{i1, j1, i2, j2})});
  }
  return out;
}

/// binary64 rows are evaluated in extended precision and rounded once.
/// Near q = 1 the hypergeometric terms cancel to O(1/L) and a direct
/// binary64 evaluation loses ~eps*L, which would push row sums outside
/// the 1e-14 contract.
inline std::vector<RowOutcome<double>> row_distribution(const ModelParams<double>& p, int i1,
                                                        int j1) {
  const auto pl = ModelParams<long double>::create(p.q, p.alpha, p.I, p.J);
  std::vector<RowOutcome<double>> out;
  for (const auto& o : row_distribution<long double>(pl, i1, j1))
    out.push_back({o.i2, o.j2, static_cast<double>(o.weight)});
  return out;
}

}  // namespace shs6v
