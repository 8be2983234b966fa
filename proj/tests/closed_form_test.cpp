#include "mvbeta/closed_form.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace mvbeta {
namespace {

using Q = Rational;

BetaParams<Q> rp(Q a, Q b) { return {a, b}; }

const std::vector<Q>& param_grid() {
  static const std::vector<Q> grid = {Q(3, 4), Q(1), Q(3, 2), Q(2), Q(7, 2), Q(13, 5)};
  return grid;
}

TEST(MomentMarginal, Values) {
  EXPECT_EQ(moment_marginal(rp(1, 1), 1), Q(1, 2));
  EXPECT_EQ(moment_marginal(rp(1, 1), 2), Q(1, 3));
  EXPECT_EQ(moment_marginal(rp(Q(7, 3), Q(5, 4)), 0), Q(1));
  EXPECT_EQ(moment_marginal(rp(2, 3), 1), Q(2, 5));
}

TEST(MomentXZ, Values) {
  EXPECT_EQ(moment_xz(rp(1, 1), 0, 1), Q(1, 18));
  EXPECT_EQ(moment_xz(rp(1, 1), 1, 1), Q(1, 36));
  EXPECT_EQ(moment_xz(rp(2, 2), 0, 1), Q(1, 35));
  EXPECT_EQ(moment_xz(rp(2, 2), 0, 2), Q(1, 490));
  EXPECT_EQ(moment_xz(rp(2, 3), 1, 1), Q(1, 105));
}

TEST(MomentXZ, ReducesToMarginalAtTZero) {
  for (const auto& a : param_grid())
    for (const auto& b : param_grid())
      for (unsigned m = 0; m <= 6; ++m)
        EXPECT_EQ(moment_xz(rp(a, b), m, 0), moment_marginal(rp(a, b), m));
}

TEST(MomentXZ, MatchesLiteralFormula) {
  for (const auto& a : param_grid())
    for (const auto& b : param_grid())
      for (unsigned m = 0; m <= 5; ++m)
        for (unsigned t = 0; t <= 5; ++t)
          EXPECT_EQ(moment_xz(rp(a, b), m, t), oracle::xz(a, b, m, t));
}

TEST(MomentMixed, Values) {
  EXPECT_EQ(moment_mixed(rp(1, 1), 1, 1, 0), Q(2, 9));
  EXPECT_EQ(moment_mixed(rp(2, 2), 2, 1, 1), Q(11, 2940));
  EXPECT_EQ(moment_mixed(rp(Q(3, 2), Q(5, 2)), 3, 2, 1), Q(1835, 3784704));
  EXPECT_EQ(moment_mixed(rp(1, 1), 2, 2, 0), Q(19, 225));
  EXPECT_EQ(moment_mixed(rp(Q(3, 4), Q(7, 2)), 4, 3, 2), Q(26157328, 36770896853775LL));
}

TEST(MomentMixed, RejectsMBelowR) {
  EXPECT_THROW(moment_mixed(rp(1, 1), 1, 2, 0), std::invalid_argument);
  EXPECT_THROW(moment_mixed(BetaParams<double>(1.0, 1.0), 0, 1, 3), std::invalid_argument);
}

TEST(MomentMixed, ReducesToXZAtRZero) {
  for (const auto& a : param_grid())
    for (const auto& b : param_grid())
      for (unsigned m = 0; m <= 6; ++m)
        for (unsigned t = 0; t <= 6; ++t)
          EXPECT_EQ(moment_mixed(rp(a, b), m, 0, t), moment_xz(rp(a, b), m, t));
}

TEST(MomentMixed, MatchesLiteralFormula) {
  for (const auto& a : param_grid())
    for (const auto& b : param_grid())
      for (unsigned m = 0; m <= 4; ++m)
        for (unsigned r = 0; r <= m; ++r)
          for (unsigned t = 0; t <= 4; ++t)
            EXPECT_EQ(moment_mixed(rp(a, b), m, r, t), oracle::mixed(a, b, m, r, t));
}

TEST(MomentMixed, LemmaIdentityForXY) {
  // E[XY] = E[A] + E[Z^2] with E[A] = a(a-1/2) / ((a+b)(a+b-1/2)).
  for (const auto& a : param_grid())
    for (const auto& b : param_grid()) {
      const Q h(1, 2);
      const Q ea = a * (a - h) / ((a + b) * (a + b - h));
      EXPECT_EQ(moment_mixed(rp(a, b), 1, 1, 0), ea + moment_xz(rp(a, b), 0, 1));
    }
}

TEST(Moment, Dispatch) {
  EXPECT_EQ(moment(rp(Q(5, 3), Q(9, 4)), {0, 0, 0}), Q(1));
  EXPECT_EQ(moment(rp(1, 1), {2, 1, 3}), Q(0));
  EXPECT_EQ(moment(rp(1, 1), {1, 2, 2}), moment(rp(1, 1), {2, 1, 2}));
  EXPECT_EQ(moment(rp(1, 1), {2, 1, 2}), Q(1, 150));
  EXPECT_EQ(moment(BetaParams<double>(2.0, 2.0), {0, 0, 1}), 0.0);
}

TEST(Moment, ExchangeSymmetryGrid) {
  for (const auto& a : {Q(3, 4), Q(2), Q(7, 2)})
    for (const auto& b : {Q(1), Q(5, 2)})
      for (unsigned m = 0; m <= 6; ++m)
        for (unsigned r = 0; r <= 6; ++r)
          for (unsigned s = 0; s <= 6; ++s)
            EXPECT_EQ(moment(rp(a, b), {m, r, s}), moment(rp(a, b), {r, m, s}));
}

TEST(Moment, RangeAndMonotonicity) {
  for (const auto& a : param_grid())
    for (const auto& b : param_grid())
      for (unsigned m = 0; m <= 5; ++m)
        for (unsigned r = 0; r <= 5; ++r)
          for (unsigned t = 0; t <= 4; ++t) {
            const Q v = moment(rp(a, b), {m, r, 2 * t});
            Q bound = 1;
            for (unsigned i = 0; i < t; ++i) bound /= 4;
            EXPECT_GT(v, 0);
            EXPECT_LE(v, bound);
            EXPECT_LT(moment(rp(a, b), {m + 1, r, 2 * t}), v);
          }
}

TEST(Moment, FloatModeMatchesExact) {
  for (const auto& a : param_grid())
    for (const auto& b : param_grid())
      for (unsigned m = 0; m <= 6; ++m)
        for (unsigned r = 0; r <= 6; ++r)
          for (unsigned s = 0; s <= 12; s += 2) {
            const double exact = to_double(moment(rp(a, b), {m, r, s}));
            const double fl = moment(BetaParams<double>(to_double(a), to_double(b)), {m, r, s});
            EXPECT_NEAR(fl, exact, 1e-13 * exact);
          }
}

TEST(Moment, LogSpaceEvaluationMatchesExact) {
  for (const auto& [a, b] : {std::pair{Q(3, 4), Q(2)}, std::pair{Q(7, 2), Q(1)}})
    for (unsigned m : {0u, 3u, 40u})
      for (unsigned r : {0u, 2u, 25u})
        for (unsigned t : {0u, 1u, 30u}) {
          if (r > m) continue;
          const BetaParams<double> pd(to_double(a), to_double(b));
          const double exact = to_double(moment_mixed(rp(a, b), m, r, t));
          EXPECT_NEAR(std::exp(detail::log_moment_mixed(pd, m, r, t)) / exact, 1.0, 1e-11);
          if (r == 0)
            EXPECT_NEAR(std::exp(detail::log_moment_xz(pd, m, t)) / exact, 1.0, 1e-11);
        }
}

TEST(Moment, LogSpacePathAboveThreshold) {
  const BetaParams<Q> pq(Q(3, 2), Q(5, 2));
  const BetaParams<double> pd(1.5, 2.5);
  const unsigned m = kLogSpaceOrder + 5;
  const double exact_xz = to_double(moment_xz(pq, m, 1));
  ASSERT_GT(exact_xz, 0.0);
  EXPECT_NEAR(moment_xz(pd, m, 1) / exact_xz, 1.0, 1e-9);
  const double big = moment_mixed(pd, kLogSpaceOrder + 2, kLogSpaceOrder + 1, 0);
  EXPECT_TRUE(std::isfinite(big));
  EXPECT_GT(big, 0.0);
}

TEST(Moment, DirectPathSurvivesLargeOrders) {
  // Orders where separate numerator/denominator products would overflow.
  const BetaParams<double> p(3.5, 2.0);
  for (unsigned t : {200u, 600u, 1000u}) {
    const double v = moment_xz(p, 10, t);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GE(v, 0.0);
  }
  const double v = moment_mixed(p, 900, 900, 10);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(v, 0.0);
}

}  // namespace
}  // namespace mvbeta
