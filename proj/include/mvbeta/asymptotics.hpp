#pragma once

// Decay of E[S11^m S12^2t] for S = Q Q^T, Q a Haar n x k frame, as n grows at
// a fixed ratio k/n. The block is B(k/2, (n-k)/2; I_2), so values come from
// the exact closed form. Letting n -> infinity term by term in the E[X^m Z^2t]
// product gives
//   n^t E[X^m Z^2t] -> (2t-1)!! (1-ratio)^t ratio^(t+m).

#include "mvbeta/closed_form.hpp"
#include "mvbeta/core.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mvbeta {

struct DecayStudy {
  unsigned m = 0;
  unsigned t = 0;
  Rational ratio;
  std::vector<unsigned> n_values;

  /// k = n * ratio for a given n; throws unless k is an even integer with
  /// k >= 2 and n - k >= 2.
  unsigned frame_width(unsigned n) const {
    const Rational k = ratio * Rational(n);
    if (boost::multiprecision::denominator(k) != 1)
      throw std::invalid_argument("n * ratio must be an integer (n = " +
                                  std::to_string(n) + ")");
    const BigInt ki = boost::multiprecision::numerator(k);
    if (ki % 2 != 0)
      throw std::invalid_argument("n * ratio must be even (n = " +
                                  std::to_string(n) + ")");
    const unsigned kv = ki.convert_to<unsigned>();
    if (kv < 2 || n < kv + 2)
      throw std::invalid_argument("need k >= 2 and n - k >= 2 (n = " +
                                  std::to_string(n) + ")");
    return kv;
  }

  void validate() const {
    if (!(ratio > 0) || !(ratio < 1))
      throw std::invalid_argument("ratio must lie in (0, 1)");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
      if (i > 0 && n_values[i] <= n_values[i - 1])
        throw std::invalid_argument("n values must be strictly increasing");
      frame_width(n_values[i]);
    }
  }
};

/// n_min, 2 n_min, 4 n_min, ... while <= n_max.
inline std::vector<unsigned> doubling_schedule(unsigned n_min, unsigned n_max) {
  if (n_min == 0 || n_min > n_max)
    throw std::invalid_argument("need 0 < n_min <= n_max");
  std::vector<unsigned> out;
  for (unsigned n = n_min; n <= n_max; n *= 2) {
    out.push_back(n);
    if (n > n_max / 2) break;
  }
  return out;
}

struct DecayRow {
  unsigned n;
  Rational value;
};

inline std::vector<DecayRow> decay_table(const DecayStudy& study) {
  study.validate();
  std::vector<DecayRow> rows;
  rows.reserve(study.n_values.size());
  for (unsigned n : study.n_values) {
    const unsigned k = study.frame_width(n);
    const BetaParams<Rational> p(Rational(k, 2), Rational(n - k, 2));
    rows.push_back({n, moment_xz(p, study.m, study.t)});
  }
  return rows;
}

/// Least-squares slope of log(value) against log(n).
inline double fit_decay_exponent(const std::vector<DecayRow>& table) {
  if (table.size() < 3)
    throw std::invalid_argument("decay fit needs at least 3 rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& row : table) {
    if (!(row.value > 0))
      throw std::invalid_argument("decay fit needs positive values");
    const double lx = std::log(static_cast<double>(row.n));
    const double ly = std::log(to_double(row.value));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double count = static_cast<double>(table.size());
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

/// (2t-1)!! (1-ratio)^t ratio^(t+m): the n -> infinity limit of n^t E[X^m Z^2t].
inline double analytic_leading_coefficient(unsigned m, unsigned t,
                                           double ratio) {
  return odd_double_factorial<double>(t) * std::pow(1.0 - ratio, t) *
         std::pow(ratio, t + m);
}

/// Reference constant, evaluated literally:
/// (2t-1)!!/2^t * ratio^t * (1 - t)^(t+m).
inline double displayed_leading_coefficient(unsigned m, unsigned t,
                                            double ratio) {
  return odd_double_factorial<double>(t) / std::pow(2.0, t) *
         std::pow(ratio, t) * std::pow(1.0 - static_cast<double>(t), t + m);
}

struct CoefficientReport {
  double at_largest_n = 0.0;   // n_max^t * E at n_max
  double empirical = 0.0;      // Richardson extrapolation over the two largest n
  double analytic = 0.0;       // analytic_leading_coefficient
  double displayed = 0.0;      // displayed_leading_coefficient
};

inline CoefficientReport leading_coefficient_empirical(const DecayStudy& study) {
  if (study.t == 0)
    throw std::invalid_argument("leading coefficient needs t >= 1");
  if (study.n_values.size() < 2)
    throw std::invalid_argument("leading coefficient needs at least 2 n values");
  const auto table = decay_table(study);
  auto scaled = [&](const DecayRow& row) {
    return to_double(row.value) * std::pow(static_cast<double>(row.n), study.t);
  };
  const DecayRow& last = table.back();
  const DecayRow& prev = table[table.size() - 2];
  const double c2 = scaled(last), c1 = scaled(prev);
  const double n2 = last.n, n1 = prev.n;
  const double r = to_double(study.ratio);
  CoefficientReport out;
  out.at_largest_n = c2;
  // c(n) = C + D / n
  out.empirical = (n2 * c2 - n1 * c1) / (n2 - n1);
  out.analytic = analytic_leading_coefficient(study.m, study.t, r);
  out.displayed = displayed_leading_coefficient(study.m, study.t, r);
  return out;
}

}  // namespace mvbeta
