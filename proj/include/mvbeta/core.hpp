#pragma once

#include "mvbeta/scalar.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mvbeta {

/// Parameters (alpha, beta) of B(alpha, beta; I_2). Both must exceed 1/2.
template <Scalar S>
struct BetaParams {
  S alpha;
  S beta;

  BetaParams(S a, S b) : alpha(std::move(a)), beta(std::move(b)) {
    if (!(alpha > half<S>()))
      throw std::invalid_argument("alpha must be > 1/2");
    if (!(beta > half<S>()))
      throw std::invalid_argument("beta must be > 1/2");
  }

  BetaParams shifted(long long d_alpha, long long d_beta) const {
    return BetaParams(alpha + S(d_alpha), beta + S(d_beta));
  }

  friend bool operator==(const BetaParams&, const BetaParams&) = default;
};

inline BetaParams<double> to_double(const BetaParams<Rational>& p) {
  return {to_double(p.alpha), to_double(p.beta)};
}
inline BetaParams<double> to_double(const BetaParams<double>& p) { return p; }

/// Exponents of the monomial X^m Y^r Z^z_pow. The raw Z power is kept so odd
/// powers are representable.
struct MomentIndex {
  unsigned m = 0;
  unsigned r = 0;
  unsigned z_pow = 0;

  bool z_even() const { return z_pow % 2 == 0; }
  /// Half the Z power; only meaningful when z_even().
  unsigned t() const { return z_pow / 2; }
  MomentIndex swapped() const { return {r, m, z_pow}; }

  friend bool operator==(const MomentIndex&, const MomentIndex&) = default;
};

/// Sample point w = [[x, z], [z, y]].
struct Sym2Matrix {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double det() const { return x * y - z * z; }
  /// det(I - w)
  double det_complement() const { return (1.0 - x) * (1.0 - y) - z * z; }
};

/// True iff w and I - w are both positive definite.
inline bool in_domain(const Sym2Matrix& w) {
  return w.x > 0.0 && w.det() > 0.0 && (1.0 - w.x) > 0.0 &&
         w.det_complement() > 0.0;
}

enum class EstimateMethod { monte_carlo, quadrature };

inline std::string to_string(EstimateMethod m) {
  return m == EstimateMethod::monte_carlo ? "monte_carlo" : "quadrature";
}

struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples_or_cells = 1;
  EstimateMethod method = EstimateMethod::monte_carlo;
};

/// Rising factorial a (a+1) ... (a+n-1); 1 for n = 0.
template <Scalar S>
S pochhammer(const S& a, unsigned n) {
  S out = S(1);
  for (unsigned j = 0; j < n; ++j) out *= a + S(j);
  return out;
}

/// (2t-1)!! with (-1)!! = 1.
template <Scalar S>
S odd_double_factorial(unsigned t) {
  S out = S(1);
  for (unsigned j = 1; j <= t; ++j) out *= S(2 * j - 1);
  return out;
}

/// C(n, k) by the multiplicative recurrence; exact for rationals.
template <Scalar S>
S binomial(unsigned n, unsigned k) {
  if (k > n) return S(0);
  if (k > n - k) k = n - k;
  S out = S(1);
  for (unsigned i = 0; i < k; ++i) out = out * S(n - i) / S(i + 1);
  return out;
}

}  // namespace mvbeta
