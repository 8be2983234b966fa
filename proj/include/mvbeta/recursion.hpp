#pragma once

// Second evaluation path for the mixed moments, built only from the shift
// identities for A = XY - Z^2 = det W and B = 1 - X - Y + A = det(I - W):
//   E_{a,b}[A f] = a(a-1/2) / ((a+b)(a+b-1/2)) * E_{a+1,b}[f]
//   E_{a,b}[B f] = b(b-1/2) / ((a+b)(a+b-1/2)) * E_{a,b+1}[f]
// plus the one-step Z^2 reduction and the binomial expansion of (A + Z^2)^r.
// Nothing here calls into closed_form.hpp.

#include "mvbeta/core.hpp"

#include <stdexcept>

namespace mvbeta {

/// value * E_{shifted_params}[f] equals E_{params}[A f] (or [B f]).
template <Scalar S>
struct ShiftFactor {
  S value;
  BetaParams<S> shifted_params;
};

template <Scalar S>
ShiftFactor<S> lemma_factor_A(const BetaParams<S>& p) {
  const S h = half<S>();
  const S ab = p.alpha + p.beta;
  return {p.alpha * (p.alpha - h) / (ab * (ab - h)), p.shifted(1, 0)};
}

template <Scalar S>
ShiftFactor<S> lemma_factor_B(const BetaParams<S>& p) {
  const S h = half<S>();
  const S ab = p.alpha + p.beta;
  return {p.beta * (p.beta - h) / (ab * (ab - h)), p.shifted(0, 1)};
}

/// E[X] from taking expectations of B = 1 - X - Y + A with E[X] = E[Y]:
/// factor_B = 1 - 2 E[X] + factor_A.
template <Scalar S>
S marginal_mean_via_lemma(const BetaParams<S>& p) {
  return (S(1) + lemma_factor_A(p).value - lemma_factor_B(p).value) / S(2);
}

/// E_{a,b}[X^m] = E_{a,b}[X] E_{a+1,b}[X^(m-1)], each mean from the lemma.
template <Scalar S>
S marginal_moment_recursive(const BetaParams<S>& p, unsigned m) {
  S out = S(1);
  BetaParams<S> q = p;
  for (unsigned i = 0; i < m; ++i) {
    out *= marginal_mean_via_lemma(q);
    q = q.shifted(1, 0);
  }
  return out;
}

/// c with E[Z^2t X^m] = c * E[Z^(2t-2) X^(m+1)]. Requires t >= 1.
template <Scalar S>
S reduce_z_step(const BetaParams<S>& p, unsigned m, unsigned t) {
  if (t == 0) throw std::invalid_argument("reduce_z_step requires t >= 1");
  const S h = half<S>();
  const S ab = p.alpha + p.beta;
  const S st = S(t);
  return (st - h) * (p.beta + st - S(1)) /
         ((ab + st - S(3) / S(2)) * (ab + S(2 * t + m - 1)));
}

/// E[X^m Z^2t]: t reduction steps (t -> t-1, m -> m+1), then the marginal.
template <Scalar S>
S moment_xz_recursive(const BetaParams<S>& p, unsigned m, unsigned t) {
  S out = S(1);
  for (; t > 0; --t, ++m) out *= reduce_z_step(p, m, t);
  return out * marginal_moment_recursive(p, m);
}

/// E[X^m Y^r Z^2t] for m >= r via X^m Y^r = X^(m-r) (A + Z^2)^r:
///   sum_i C(r,i) E[A^(r-i) X^(m-r) Z^(2(t+i))],
/// each A power peeled off with lemma_factor_A at alpha, alpha+1, ...
template <Scalar S>
S moment_mixed_recursive(const BetaParams<S>& p, unsigned m, unsigned r,
                         unsigned t) {
  if (m < r)
    throw std::invalid_argument(
        "moment_mixed_recursive requires m >= r (swap first)");
  S sum = S(0);
  for (unsigned i = 0; i <= r; ++i) {
    S term = binomial<S>(r, i);
    BetaParams<S> q = p;
    for (unsigned k = 0; k < r - i; ++k) {
      const ShiftFactor<S> f = lemma_factor_A(q);
      term *= f.value;
      q = f.shifted_params;
    }
    sum += term * moment_xz_recursive(q, m - r, t + i);
  }
  return sum;
}

template <Scalar S>
S moment_recursive(const BetaParams<S>& p, const MomentIndex& idx) {
  if (!idx.z_even()) return S(0);
  if (idx.m >= idx.r) return moment_mixed_recursive(p, idx.m, idx.r, idx.t());
  return moment_mixed_recursive(p, idx.r, idx.m, idx.t());
}

}  // namespace mvbeta
