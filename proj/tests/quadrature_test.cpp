#include "mvbeta/quadrature.hpp"

#include "mvbeta/closed_form.hpp"
#include "mvbeta/recursion.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace mvbeta {
namespace {

constexpr double pi = std::numbers::pi;

QuadratureSpec spec(unsigned cells, unsigned points = 4) {
  return {cells, QuadratureRuleKind::tensor_gauss_legendre, points};
}

TEST(Density, Values) {
  // alpha = beta = 3/2: uniform on the domain.
  EXPECT_NEAR(density({1.5, 1.5}, {0.5, 0.5, 0.0}), 6.0 / pi, 1e-13);
  EXPECT_NEAR(density({1.5, 1.5}, {0.2, 0.7, 0.1}), 6.0 / pi, 1e-13);
  EXPECT_EQ(density({2.0, 2.0}, {0.5, 0.5, 0.6}), 0.0);
  EXPECT_EQ(density({2.0, 3.0}, {1.2, 0.5, 0.0}), 0.0);
  EXPECT_NEAR(density({2.0, 2.0}, {0.5, 0.5, 0.0}), 45.0 / (4.0 * pi), 1e-12);
}

TEST(Density, ExponentOrientation) {
  // |w| carries alpha - 3/2 and |I - w| carries beta - 3/2.
  const Sym2Matrix w{0.3, 0.4, 0.1};
  const double ratio = density({3.0, 2.0}, w) / density({2.0, 2.0}, w);
  EXPECT_NEAR(ratio, w.det() * std::exp(log_beta2({2.0, 2.0}) - log_beta2({3.0, 2.0})), 1e-12);
}

TEST(QuadNormalization, IsOne) {
  for (const auto& p : {BetaParams<double>(2, 2), BetaParams<double>(2, 3), BetaParams<double>(3, 3)}) {
    const auto est = quad_normalization(p, spec(16));
    EXPECT_NEAR(est.value, 1.0, 1e-8);
    // The coarse/fine difference tracks the true error to leading order.
    EXPECT_LE(std::abs(est.value - 1.0), std::max(1e-14, est.std_error) * 1.01);
    EXPECT_EQ(est.method, EstimateMethod::quadrature);
    EXPECT_EQ(est.n_samples_or_cells, 16u * 16u * 16u);
  }
}

TEST(QuadMoment, Examples) {
  const BetaParams<double> p(2, 2);
  EXPECT_NEAR(quad_moment(p, {0, 0, 0}, spec(16)).value, 1.0, 1e-8);
  EXPECT_NEAR(quad_moment(p, {1, 0, 0}, spec(16)).value, 0.5, 1e-8);
  EXPECT_NEAR(quad_moment(p, {0, 0, 2}, spec(16)).value, 1.0 / 35.0, 1e-8);
}

TEST(QuadMoment, MatchesClosedFormOnGrid) {
  std::vector<MomentIndex> indices;
  for (unsigned m = 0; m <= 3; ++m)
    for (unsigned r = 0; r <= 3; ++r)
      for (unsigned z = 0; z <= 4; ++z) indices.push_back({m, r, z});
  for (double a : {2.0, 2.5, 3.0})
    for (double b : {2.0, 2.5, 3.0}) {
      const BetaParams<double> p(a, b);
      const auto est = quad_moments(p, indices, spec(16));
      for (std::size_t q = 0; q < indices.size(); ++q) {
        const double exact = moment(p, indices[q]);
        EXPECT_LE(std::abs(est[q].value - exact), std::max(1e-8, est[q].std_error))
            << a << "," << b << " idx " << indices[q].m << indices[q].r << indices[q].z_pow;
      }
    }
}

TEST(QuadMoment, OddPowersVanish) {
  for (unsigned z : {1u, 3u, 5u})
    for (unsigned m = 0; m <= 2; ++m)
      EXPECT_NEAR(quad_moment({2.5, 2.0}, {m, 1, z}, spec(8)).value, 0.0, 1e-12);
}

TEST(QuadMoment, ShiftIdentityForDeterminant) {
  // E_{a,b}[det W] = factor_A * 1 and E_{a,b}[det(I - W)] = factor_B.
  // det W = XY - Z^2, det(I - W) = 1 - X - Y + XY - Z^2.
  const BetaParams<double> p(2.5, 3.0);
  const std::vector<MomentIndex> idx = {{1, 1, 0}, {0, 0, 2}, {1, 0, 0}, {0, 1, 0}};
  const auto est = quad_moments(p, idx, spec(16));
  const double e_det = est[0].value - est[1].value;
  const double e_cdet = 1.0 - est[2].value - est[3].value + e_det;
  EXPECT_NEAR(e_det, lemma_factor_A(p).value, 1e-10);
  EXPECT_NEAR(e_cdet, lemma_factor_B(p).value, 1e-10);
}

TEST(QuadMoment, RefinementDoesNotIncreaseDiscrepancy) {
  const std::vector<MomentIndex> idx = {{0, 0, 0}, {1, 0, 0}, {2, 1, 2}, {3, 3, 4}, {0, 2, 2}};
  for (double a : {2.0, 2.5, 3.0})
    for (double b : {2.0, 3.0}) {
      const BetaParams<double> p(a, b);
      std::vector<double> prev(idx.size(), INFINITY);
      for (unsigned cells : {1u, 2u, 4u, 8u}) {
        const auto est = quad_moments(p, idx, spec(cells, 3));
        for (std::size_t q = 0; q < idx.size(); ++q) {
          const double err = std::abs(est[q].value - moment(p, idx[q]));
          // Below ~1e-13 the comparison is rounding noise.
          EXPECT_LE(err, std::max(prev[q], 1e-13)) << "cells=" << cells << " q=" << q;
          prev[q] = err;
        }
      }
    }
}

TEST(QuadMoment, Preconditions) {
  EXPECT_THROW(quad_moment({1.5, 2.0}, {0, 0, 0}, spec(4)), std::invalid_argument);
  EXPECT_THROW(quad_moment({2.0, 1.9}, {0, 0, 0}, spec(4)), std::invalid_argument);
  EXPECT_THROW(quad_moment({2.0, 2.0}, {0, 0, 0}, spec(0)), std::invalid_argument);
  EXPECT_THROW(quad_moment({2.0, 2.0}, {0, 0, 0}, spec(4, 0)), std::invalid_argument);
}

TEST(QuadMoment, DomainCountCrossCheck) {
  // The fraction of the cube [0,1]^2 x [-1/2,1/2] inside the domain equals
  // B_2(3/2, 3/2) = pi/6; count by rejection.
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 2000000;
  int hits = 0;
  for (int i = 0; i < n; ++i)
    if (in_domain({u(gen), u(gen), u(gen) - 0.5})) ++hits;
  const double frac = static_cast<double>(hits) / n;
  const double se = std::sqrt(frac * (1 - frac) / n);
  EXPECT_NEAR(frac, pi / 6, 5 * se);
}

}  // namespace
}  // namespace mvbeta
