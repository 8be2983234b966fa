#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mvbeta {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
inline QuadratureRule gauss_legendre(unsigned n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre requires n >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (unsigned i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (unsigned k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Re-evaluate the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (unsigned k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Composite rule on [lo, hi]: `cells` equal cells, each with an n-point
/// Gauss-Legendre rule. Nodes are mirror-symmetric about the midpoint.
inline QuadratureRule composite_gauss_legendre(double lo, double hi,
                                               unsigned cells, unsigned n) {
  if (cells == 0) throw std::invalid_argument("composite rule needs cells >= 1");
  const QuadratureRule base = gauss_legendre(n);
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(cells) * n);
  rule.weights.reserve(static_cast<std::size_t>(cells) * n);
  const double width = (hi - lo) / cells;
  for (unsigned c = 0; c < cells; ++c) {
    const double mid = lo + (c + 0.5) * width;
    for (std::size_t k = 0; k < base.size(); ++k) {
      rule.nodes.push_back(mid + 0.5 * width * base.nodes[k]);
      rule.weights.push_back(0.5 * width * base.weights[k]);
    }
  }
  return rule;
}

}  // namespace mvbeta
