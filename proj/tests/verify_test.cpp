#include "mvbeta/verify.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace mvbeta {
namespace {

TEST(IndexGrid, Shape) {
  const auto g = index_grid(1);
  EXPECT_EQ(g.size(), 2u * 2u * 4u);
  EXPECT_EQ(g.front(), (MomentIndex{0, 0, 0}));
  EXPECT_EQ(g.back(), (MomentIndex{1, 1, 3}));
}

TEST(VerifyReport, PrintFormat) {
  VerifyReport r;
  r.checks.push_back({"a", "1", "1", "0", true});
  r.checks.push_back({"b", "1", "2", "1", false});
  std::ostringstream all, failures;
  r.print(all);
  r.print(failures, true);
  EXPECT_EQ(all.str(),
            "PASS a lhs=1 rhs=1 margin=0\n"
            "FAIL b lhs=1 rhs=2 margin=1\n"
            "summary: 1/2 passed\n");
  EXPECT_EQ(failures.str(), "FAIL b lhs=1 rhs=2 margin=1\nsummary: 1/2 passed\n");
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.failures(), 1u);
  VerifyReport ok;
  ok.checks.push_back({"c", "0", "0", "0", true});
  EXPECT_TRUE(ok.passed());
  ok.append(r);
  EXPECT_EQ(ok.checks.size(), 3u);
  EXPECT_EQ(ok.failures(), 1u);
}

TEST(VerifyExact, SmallGridPasses) {
  const std::vector<BetaParams<Rational>> grid = {{Rational(3, 4), Rational(7, 2)},
                                                  {Rational(1), Rational(1)}};
  const auto r = verify_exact(grid, 2);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checks.size(), 2u * (1 + 9 + 3 * 3 * 6));
}

TEST(VerifyQuadrature, SmallGridPasses) {
  QuadratureSpec spec;
  spec.cells_per_axis = 8;
  const std::vector<BetaParams<double>> grid = {{2.0, 2.5}};
  const auto r = verify_quadrature(grid, 1, spec);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checks.size(), 1u + 16u);
}

TEST(VerifyMonteCarlo, PassesAndIsDeterministic) {
  MonteCarloOptions opt;
  opt.max_order = 1;
  opt.samples = 20000;
  opt.ks_samples = 20000;
  const auto a = verify_montecarlo({2.0, 2.0}, opt);
  const auto b = verify_montecarlo({2.0, 2.0}, opt);
  EXPECT_TRUE(a.passed());
  std::ostringstream sa, sb;
  a.print(sa);
  b.print(sb);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NE(sa.str().find("mc.stiefel(n=8,k=4)"), std::string::npos);
  EXPECT_NE(sa.str().find("mc.lemma"), std::string::npos);
  EXPECT_NE(sa.str().find("mc.ks"), std::string::npos);
}

TEST(VerifyMonteCarlo, SkipsStiefelForNonHalfIntegerParams) {
  MonteCarloOptions opt;
  opt.max_order = 1;
  opt.samples = 5000;
  opt.ks_samples = 5000;
  const auto r = verify_montecarlo({1.3, 2.2}, opt);
  std::ostringstream s;
  r.print(s);
  EXPECT_EQ(s.str().find("mc.stiefel"), std::string::npos);
}

}  // namespace
}  // namespace mvbeta
