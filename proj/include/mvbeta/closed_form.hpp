#pragma once

// Closed-form mixed moments of B(alpha, beta; I_2):
//   E[X^m]             = (alpha)_m / (alpha + beta)_m
//   E[X^m Z^2t]        = (2t-1)!!/2^t * prod_{i<t} (beta+i)/(alpha+beta-1/2+i)
//                        * (alpha)_{t+m} / (alpha+beta)_{2t+m}
//   E[X^m Y^r Z^2t]    = finite binomial sum over i = 0..r (m >= r)
// where (a)_n is the rising factorial.

#include "mvbeta/core.hpp"
#include "mvbeta/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <stdexcept>
#include <vector>

namespace mvbeta {

/// Above this exponent the float path switches to log-space evaluation.
inline constexpr unsigned kLogSpaceOrder = 1000;

template <Scalar S>
S moment_marginal(const BetaParams<S>& p, unsigned m) {
  S out = S(1);
  for (unsigned i = 0; i < m; ++i)
    out *= (p.alpha + S(i)) / (p.alpha + p.beta + S(i));
  return out;
}

namespace detail {

inline double log_moment_xz(const BetaParams<double>& p, unsigned m, unsigned t) {
  const double a = p.alpha, b = p.beta;
  return log_pochhammer(0.5, t) + log_pochhammer(b, t) -
         log_pochhammer(a + b - 0.5, t) + log_pochhammer(a, t + m) -
         log_pochhammer(a + b, 2 * t + m);
}

inline double log_binomial(unsigned n, unsigned k) {
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

inline double log_moment_mixed(const BetaParams<double>& p, unsigned m,
                               unsigned r, unsigned t) {
  const double a = p.alpha, b = p.beta;
  const double common = log_pochhammer(a + b - 0.5 + t, r);
  std::vector<double> terms(r + 1);
  for (unsigned i = 0; i <= r; ++i)
    terms[i] = log_binomial(r, i) + log_pochhammer(a - 0.5, r - i) +
               log_pochhammer(t + 0.5, i) + log_pochhammer(b + t, i) -
               log_pochhammer(a + b + 2.0 * t + m, i) - common;
  const double peak = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double term : terms) sum += std::exp(term - peak);
  return log_moment_xz(p, m, t) + peak + std::log(sum);
}

}  // namespace detail

/// E[X^m Z^2t]. Factors are grouped so each partial product stays <= ~1,
/// which keeps the double path free of intermediate overflow.
template <Scalar S>
S moment_xz(const BetaParams<S>& p, unsigned m, unsigned t) {
  if constexpr (std::floating_point<S>) {
    if (std::max(m, t) > kLogSpaceOrder)
      return static_cast<S>(std::exp(detail::log_moment_xz(
          BetaParams<double>(p.alpha, p.beta), m, t)));
  }
  const S h = half<S>();
  const S ab = p.alpha + p.beta;
  S out = S(1);
  for (unsigned j = 0; j < t; ++j)
    out *= (S(j) + h) * (p.beta + S(j)) /
           ((ab - h + S(j)) * (ab + S(t + m + j)));
  for (unsigned i = 0; i < t + m; ++i)
    out *= (p.alpha + S(i)) / (ab + S(i));
  return out;
}

/// E[X^m Y^r Z^2t] for m >= r. Throws std::invalid_argument when m < r; the
/// swap belongs to moment().
template <Scalar S>
S moment_mixed(const BetaParams<S>& p, unsigned m, unsigned r, unsigned t) {
  if (m < r)
    throw std::invalid_argument("moment_mixed requires m >= r (swap first)");
  if constexpr (std::floating_point<S>) {
    if (std::max({m, r, t}) > kLogSpaceOrder)
      return static_cast<S>(std::exp(detail::log_moment_mixed(
          BetaParams<double>(p.alpha, p.beta), m, r, t)));
  }
  const S h = half<S>();
  const S ab = p.alpha + p.beta;
  const S st = S(t);
  S sum = S(0);
  S choose = S(1);
  for (unsigned i = 0; i <= r; ++i) {
    // (alpha-1/2)_{r-i} (t+1/2)_i / (alpha+beta-1/2+t)_r
    S term = choose;
    for (unsigned j = 0; j < r - i; ++j)
      term *= (p.alpha - h + S(j)) / (ab - h + st + S(j));
    for (unsigned j = 0; j < i; ++j)
      term *= (st + h + S(j)) / (ab - h + st + S(r - i + j));
    // (beta+t)_i / (alpha+beta+2t+m)_i
    for (unsigned j = 0; j < i; ++j)
      term *= (p.beta + st + S(j)) / (ab + S(2 * t + m + j));
    sum += term;
    choose = choose * S(r - i) / S(i + 1);
  }
  return moment_xz(p, m, t) * sum;
}

/// E[X^m Y^r Z^z_pow] for any index: zero for odd Z powers, (m, r) swapped so
/// the larger exponent goes first.
template <Scalar S>
S moment(const BetaParams<S>& p, const MomentIndex& idx) {
  if (!idx.z_even()) return S(0);
  const unsigned hi = std::max(idx.m, idx.r);
  const unsigned lo = std::min(idx.m, idx.r);
  return moment_mixed(p, hi, lo, idx.t());
}

}  // namespace mvbeta
