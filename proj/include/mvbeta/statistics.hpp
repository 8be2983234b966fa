#pragma once

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mvbeta {

/// Kolmogorov-Smirnov statistic sup |F_n(x) - F(x)| of `values` against the
/// one-dimensional Beta(a, b) CDF.
inline double ks_statistic_beta(std::vector<double> values, double a, double b) {
  if (values.empty()) throw std::invalid_argument("KS statistic needs samples");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = std::clamp(values[i], 0.0, 1.0);
    const double cdf = boost::math::ibeta(a, b, x);
    d = std::max({d, (i + 1) / n - cdf, cdf - i / n});
  }
  return d;
}

/// Asymptotic critical value of the one-sample KS statistic at `level`:
/// sqrt(-log(level / 2) / 2) / sqrt(n).
inline double ks_critical_value(std::size_t n, double level) {
  return std::sqrt(-0.5 * std::log(0.5 * level)) / std::sqrt(static_cast<double>(n));
}

/// |a - b| in units of the combined standard error; infinite when both
/// errors vanish and the values differ.
inline double sigma_distance(double a, double se_a, double b, double se_b) {
  const double se = std::sqrt(se_a * se_a + se_b * se_b);
  const double diff = std::abs(a - b);
  if (se == 0.0) return diff <= 1e-12 ? 0.0 : INFINITY;
  return diff / se;
}

}  // namespace mvbeta
