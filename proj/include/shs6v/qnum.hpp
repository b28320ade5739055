#pragma once

#include <array>
#include <string>

#include "shs6v/scalar.hpp"

namespace shs6v {

namespace detail {

/// Throws if q^k = 1 for some 1 <= k <= n, which would put a zero factor
/// of (q;q)_n into a denominator.
template <class S>
void reject_root_of_unity(const S& q, int n) {
  S p = q;
  for (int k = 1; k <= n; ++k) {
    if (p == S(1))
      throw singular_parameter("q is a root of unity: q^" + std::to_string(k) + " = 1");
    p *= q;
  }
}

}  // namespace detail

/// q-Pochhammer symbol (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k), n >= 0.
template <class S>
S q_pochhammer(const S& a, const S& q, int n) {
  if (n < 0) throw std::invalid_argument("q_pochhammer: n must be nonnegative");
  S result(1);
  S aq = a;
  for (int k = 0; k < n; ++k) {
    result *= S(1) - aq;
    aq *= q;
  }
  return result;
}

/// (a;q)_n extended to negative n via (a;q)_{-m} = prod_{k=1}^{m} 1/(1 - a q^{-k}).
template <class S>
S q_pochhammer_ext(const S& a, const S& q, int n) {
  if (n >= 0) return q_pochhammer(a, q, n);
  S result(1);
  S aq = a;
  const S qinv = S(1) / q;
  for (int k = 1; k <= -n; ++k) {
    aq *= qinv;
    const S factor = S(1) - aq;
    if (factor == S(0))
      throw singular_parameter("q_pochhammer_ext: zero factor at negative index");
    result /= factor;
  }
  return result;
}

/// Regularized terminating basic hypergeometric sum, r = 3 case:
///   sum_{k=0}^{n} z^k (q^{-n};q)_k / (q;q)_k
///                 prod_{i=1}^{3} (a_i;q)_k (b_i q^k;q)_{n-k}.
template <class S>
S reg_phi_4_3(int n, const std::array<S, 3>& a, const std::array<S, 3>& b, const S& q,
              const S& z) {
  if (n < 0) throw std::invalid_argument("reg_phi_4_3: n must be nonnegative");
  detail::reject_root_of_unity(q, n);
  const S qmn = pow_int(q, -static_cast<long long>(n));
  S total(0);
  S zk(1);                 // z^k
  S poch_qmn(1);           // (q^{-n};q)_k
  S poch_q(1);             // (q;q)_k
  S qk(1);                 // q^k
  for (int k = 0; k <= n; ++k) {
    S term = zk * poch_qmn / poch_q;
    for (int i = 0; i < 3; ++i) {
      term *= q_pochhammer(a[i], q, k);
      term *= q_pochhammer(b[i] * qk, q, n - k);
    }
    total += term;
    // advance the k-indexed factors
    poch_qmn *= S(1) - qmn * qk;
    qk *= q;
    poch_q *= S(1) - qk;
    zk *= z;
  }
  return total;
}

/// Normalizer Z_J(h) = q^{h(h-1)/2} (q;q)_J / ((q;q)_h (q;q)_{J-h}), 0 <= h <= J.
template <class S>
S z_norm(int J, int h, const S& q) {
  if (J < 1) throw std::invalid_argument("z_norm: J must be positive");
  if (h < 0 || h > J) throw std::invalid_argument("z_norm: h out of [0, J]");
  detail::reject_root_of_unity(q, J);
  const S num = q_pochhammer(q, q, J);
  const S den = q_pochhammer(q, q, h) * q_pochhammer(q, q, J - h);
  return pow_int(q, static_cast<long long>(h) * (h - 1) / 2) * num / den;
}

}  // namespace shs6v
