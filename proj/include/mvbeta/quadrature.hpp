#pragma once

// Density of B(alpha, beta; I_2) and a deterministic tensor-product
// Gauss-Legendre oracle for its moments.
//
// The integral over {0 < W < I} is taken in spectral coordinates
//   W = R(phi) diag(l1, l2) R(phi)^T,  1 > l1 > l2 > 0,  phi in (0, pi),
//   dx dy dz = (l1 - l2) dl1 dl2 dphi,
// with l = sin^2(psi) and psi2 = v * psi1, so the box is
// (0, pi/2) x (0, 1) x (0, pi). Under this map
//   |W|^(alpha-3/2) |I-W|^(beta-3/2) dl = sin^(2 alpha - 2)(psi) cos^(2 beta - 2)(psi) * 2 dpsi
// per eigenvalue, which is smooth for alpha, beta >= 2. With
// mu = (l1+l2)/2 and delta = (l1-l2)/2:
//   x = mu + delta cos 2phi,  y = mu - delta cos 2phi,  z = delta sin 2phi,
// so the phi direction only ever sees trig monomials; those sums are
// tabulated once per grid.

#include "mvbeta/core.hpp"
#include "mvbeta/gauss_legendre.hpp"
#include "mvbeta/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace mvbeta {

enum class QuadratureRuleKind { tensor_gauss_legendre };

struct QuadratureSpec {
  unsigned cells_per_axis = 16;
  QuadratureRuleKind rule = QuadratureRuleKind::tensor_gauss_legendre;
  unsigned points_per_cell_axis = 4;

  void validate() const {
    if (cells_per_axis == 0)
      throw std::invalid_argument("quadrature spec needs cells_per_axis >= 1");
    if (points_per_cell_axis == 0)
      throw std::invalid_argument(
          "quadrature spec needs points_per_cell_axis >= 1");
  }

  QuadratureSpec refined() const {
    QuadratureSpec out = *this;
    out.cells_per_axis *= 2;
    return out;
  }

  std::uint64_t cell_count() const {
    const std::uint64_t c = cells_per_axis;
    return c * c * c;
  }
};

/// Density at w: zero off the domain, else
/// |w|^(alpha-3/2) |I-w|^(beta-3/2) / B_2(alpha, beta).
inline double density(const BetaParams<double>& p, const Sym2Matrix& w) {
  if (!in_domain(w)) return 0.0;
  return std::exp(-log_beta2(p) + (p.alpha - 1.5) * std::log(w.det()) +
                  (p.beta - 1.5) * std::log(w.det_complement()));
}

namespace detail {

inline void require_quadrature_params(const BetaParams<double>& p) {
  if (p.alpha < 2.0 || p.beta < 2.0)
    throw std::invalid_argument(
        "quadrature oracle requires alpha >= 2 and beta >= 2");
}

/// Unnormalized integrals of x^m y^r z^s |w|^(alpha-3/2) |I-w|^(beta-3/2).
inline std::vector<double> integrate_monomials(
    const BetaParams<double>& p, std::span<const MomentIndex> indices,
    unsigned cells, unsigned points) {
  constexpr double pi = std::numbers::pi;
  const QuadratureRule psi_rule = composite_gauss_legendre(0.0, pi / 2, cells, points);
  const QuadratureRule v_rule = composite_gauss_legendre(0.0, 1.0, cells, points);
  const QuadratureRule phi_rule = composite_gauss_legendre(0.0, pi, cells, points);

  unsigned max_xy = 0, max_s = 0;
  for (const auto& idx : indices) {
    max_xy = std::max(max_xy, idx.m + idx.r);
    max_s = std::max(max_s, idx.z_pow);
  }

  // angular[i][j] = sum_phi w cos(2phi)^i sin(2phi)^j
  std::vector<std::vector<double>> angular(max_xy + 1,
                                           std::vector<double>(max_s + 1, 0.0));
  for (std::size_t k = 0; k < phi_rule.size(); ++k) {
    const double c = std::cos(2.0 * phi_rule.nodes[k]);
    const double s = std::sin(2.0 * phi_rule.nodes[k]);
    double ci = phi_rule.weights[k];
    for (unsigned i = 0; i <= max_xy; ++i, ci *= c) {
      double cij = ci;
      for (unsigned j = 0; j <= max_s; ++j, cij *= s) angular[i][j] += cij;
    }
  }

  std::vector<std::vector<double>> choose(max_xy + 1);
  for (unsigned n = 0; n <= max_xy; ++n) {
    choose[n].resize(n + 1);
    for (unsigned k = 0; k <= n; ++k) choose[n][k] = binomial<double>(n, k);
  }

  const double exp_sin = 2.0 * p.alpha - 3.0;
  const double exp_cos = 2.0 * p.beta - 3.0;
  // 2 sin(psi) cos(psi) * sin^(2 alpha - 3) cos^(2 beta - 3)
  auto eigen_weight = [&](double psi) {
    return std::sin(2.0 * psi) * std::pow(std::sin(psi), exp_sin) *
           std::pow(std::cos(psi), exp_cos);
  };

  std::vector<double> mu_pow(max_xy + 1), delta_pow(max_xy + max_s + 1);
  std::vector<double> total(indices.size(), 0.0);
  std::vector<double> row(indices.size());
  for (std::size_t a = 0; a < psi_rule.size(); ++a) {
    const double psi1 = psi_rule.nodes[a];
    const double s1 = std::sin(psi1);
    const double l1 = s1 * s1;
    const double g1 = psi_rule.weights[a] * psi1 * eigen_weight(psi1);
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t b = 0; b < v_rule.size(); ++b) {
      const double psi2 = v_rule.nodes[b] * psi1;
      const double s2 = std::sin(psi2);
      const double l2 = s2 * s2;
      const double gap = std::sin(psi1 - psi2) * std::sin(psi1 + psi2);
      const double weight = v_rule.weights[b] * eigen_weight(psi2) * gap;
      const double mu = 0.5 * (l1 + l2);
      const double delta = 0.5 * gap;
      mu_pow[0] = delta_pow[0] = 1.0;
      for (std::size_t k = 1; k < mu_pow.size(); ++k) mu_pow[k] = mu_pow[k - 1] * mu;
      for (std::size_t k = 1; k < delta_pow.size(); ++k)
        delta_pow[k] = delta_pow[k - 1] * delta;
      for (std::size_t q = 0; q < indices.size(); ++q) {
        const auto& idx = indices[q];
        // (mu + delta c)^m (mu - delta c)^r (delta s)^z, integrated over phi.
        double val = 0.0;
        for (unsigned k = 0; k <= idx.m; ++k)
          for (unsigned l = 0; l <= idx.r; ++l) {
            const double sign = (l % 2 == 0) ? 1.0 : -1.0;
            val += sign * choose[idx.m][k] * choose[idx.r][l] *
                   mu_pow[idx.m + idx.r - k - l] *
                   delta_pow[k + l + idx.z_pow] * angular[k + l][idx.z_pow];
          }
        row[q] += weight * val;
      }
    }
    for (std::size_t q = 0; q < indices.size(); ++q) total[q] += g1 * row[q];
  }
  return total;
}

}  // namespace detail

/// Quadrature estimates of several moments sharing one pair of grids
/// (spec and spec.refined()). std_error is the difference between the two.
inline std::vector<MomentEstimate> quad_moments(
    const BetaParams<double>& p, std::span<const MomentIndex> indices,
    const QuadratureSpec& spec) {
  detail::require_quadrature_params(p);
  spec.validate();
  const double norm = std::exp(-log_beta2(p));
  const auto coarse = detail::integrate_monomials(
      p, indices, spec.cells_per_axis, spec.points_per_cell_axis);
  const auto fine = detail::integrate_monomials(
      p, indices, spec.refined().cells_per_axis, spec.points_per_cell_axis);
  std::vector<MomentEstimate> out(indices.size());
  for (std::size_t q = 0; q < indices.size(); ++q) {
    out[q].value = norm * coarse[q];
    out[q].std_error = norm * std::abs(coarse[q] - fine[q]);
    out[q].n_samples_or_cells = spec.cell_count();
    out[q].method = EstimateMethod::quadrature;
  }
  return out;
}

inline MomentEstimate quad_moment(const BetaParams<double>& p,
                                  const MomentIndex& idx,
                                  const QuadratureSpec& spec) {
  return quad_moments(p, std::span<const MomentIndex>(&idx, 1), spec).front();
}

/// Numeric integral of the unnormalized density divided by exp(log_beta2).
inline MomentEstimate quad_normalization(const BetaParams<double>& p,
                                         const QuadratureSpec& spec) {
  return quad_moment(p, MomentIndex{0, 0, 0}, spec);
}

}  // namespace mvbeta
