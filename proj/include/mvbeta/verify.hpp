#pragma once

// Verification suites behind `mvbeta verify`. Each suite produces a list of
// named checks with both sides, the margin, and a verdict. Output is a pure
// function of the inputs (no timings, fixed iteration order).

#include "mvbeta/closed_form.hpp"
#include "mvbeta/quadrature.hpp"
#include "mvbeta/recursion.hpp"
#include "mvbeta/sampling.hpp"
#include "mvbeta/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace mvbeta {

struct Check {
  std::string name;
  std::string lhs;
  std::string rhs;
  std::string margin;
  bool pass = false;
};

struct VerifyReport {
  std::vector<Check> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(
        checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
  }
  void append(const VerifyReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  void print(std::ostream& os, bool failures_only = false) const {
    for (const auto& c : checks) {
      if (failures_only && c.pass) continue;
      os << (c.pass ? "PASS " : "FAIL ") << c.name << " lhs=" << c.lhs
         << " rhs=" << c.rhs << " margin=" << c.margin << '\n';
    }
    os << "summary: " << checks.size() - failures() << '/' << checks.size()
       << " passed\n";
  }
};

inline constexpr double kSigmaLimit = 5.0;
inline constexpr double kQuadratureFloor = 1e-8;
inline constexpr double kKsLevel = 1e-3;

inline std::string index_label(const MomentIndex& idx) {
  return "E[X^" + std::to_string(idx.m) + " Y^" + std::to_string(idx.r) +
         " Z^" + std::to_string(idx.z_pow) + "]";
}

template <Scalar S>
std::string params_label(const BetaParams<S>& p) {
  if constexpr (std::same_as<S, Rational>)
    return "(" + format_rational(p.alpha) + "," + format_rational(p.beta) + ")";
  else
    return "(" + format_double(p.alpha) + "," + format_double(p.beta) + ")";
}

/// m, r <= max_order and every Z power up to 2 max_order + 1.
inline std::vector<MomentIndex> index_grid(unsigned max_order) {
  std::vector<MomentIndex> out;
  for (unsigned m = 0; m <= max_order; ++m)
    for (unsigned r = 0; r <= max_order; ++r)
      for (unsigned z = 0; z <= 2 * max_order + 1; ++z) out.push_back({m, r, z});
  return out;
}

/// Closed form vs recursion, bit-exact in rational arithmetic.
inline VerifyReport verify_exact(std::span<const BetaParams<Rational>> grid,
                                 unsigned max_order) {
  VerifyReport report;
  auto add = [&](std::string name, const Rational& lhs, const Rational& rhs) {
    const Rational diff = abs(lhs - rhs);
    report.checks.push_back({std::move(name), format_rational(lhs),
                             format_rational(rhs), format_rational(diff),
                             diff == 0});
  };
  for (const auto& p : grid) {
    const std::string pl = params_label(p);
    add("exact" + pl + " mean_via_lemma==alpha/(alpha+beta)",
        marginal_mean_via_lemma(p), p.alpha / (p.alpha + p.beta));
    for (unsigned m = 0; m <= max_order; ++m)
      for (unsigned t = 0; t <= max_order; ++t)
        add("exact" + pl + " xz m=" + std::to_string(m) + " t=" + std::to_string(t),
            moment_xz(p, m, t), moment_xz_recursive(p, m, t));
    for (const auto& idx : index_grid(max_order))
      add("exact" + pl + " " + index_label(idx), moment(p, idx),
          moment_recursive(p, idx));
  }
  return report;
}

/// Quadrature oracle vs closed form, tolerance max(1e-8, reported error).
inline VerifyReport verify_quadrature(std::span<const BetaParams<double>> grid,
                                      unsigned max_order,
                                      const QuadratureSpec& spec) {
  VerifyReport report;
  const auto indices = index_grid(max_order);
  for (const auto& p : grid) {
    const std::string pl = params_label(p);
    const auto norm = quad_normalization(p, spec);
    {
      const double diff = std::abs(norm.value - 1.0);
      const double tol = std::max(kQuadratureFloor, norm.std_error);
      report.checks.push_back({"quad" + pl + " normalization",
                               format_double(norm.value), "1",
                               format_double(diff) + " (tol " + format_double(tol) + ")",
                               diff <= tol});
    }
    const auto est = quad_moments(p, indices, spec);
    for (std::size_t q = 0; q < indices.size(); ++q) {
      const double exact = moment(p, indices[q]);
      const double diff = std::abs(est[q].value - exact);
      const double tol = std::max(kQuadratureFloor, est[q].std_error);
      report.checks.push_back({"quad" + pl + " " + index_label(indices[q]),
                               format_double(est[q].value), format_double(exact),
                               format_double(diff) + " (tol " + format_double(tol) + ")",
                               diff <= tol});
    }
  }
  return report;
}

struct MonteCarloOptions {
  unsigned max_order = 2;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  std::uint64_t ks_samples = 100000;
};

namespace detail {

inline Check sigma_check(std::string name, const MomentEstimate& a,
                         double b, double se_b = 0.0) {
  const double dist = sigma_distance(a.value, a.std_error, b, se_b);
  return {std::move(name), format_double(a.value), format_double(b),
          format_double(dist) + " sigma", dist <= kSigmaLimit};
}

}  // namespace detail

/// Monte Carlo checks at one parameter point: Wishart-ratio moments, Stiefel
/// block moments and cross-consistency (when 2 alpha and 2 beta are integers),
/// the shift identities for A and B, and the KS test of the X marginal.
inline VerifyReport verify_montecarlo(const BetaParams<double>& p,
                                      const MonteCarloOptions& opt) {
  VerifyReport report;
  const std::string pl = params_label(p);
  std::vector<MomentIndex> indices;
  for (const auto& idx : index_grid(opt.max_order))
    if (idx.z_pow <= 2 * opt.max_order) indices.push_back(idx);

  Rng wishart_rng({opt.seed, 0});
  const auto wishart = mc_estimate_many(MatrixBetaSampler(p), indices,
                                        opt.samples, wishart_rng);
  for (std::size_t q = 0; q < indices.size(); ++q)
    report.checks.push_back(detail::sigma_check(
        "mc.wishart" + pl + " " + index_label(indices[q]), wishart[q],
        moment(p, indices[q])));

  const double k2 = 2.0 * p.alpha, nk2 = 2.0 * p.beta;
  if (k2 == std::floor(k2) && nk2 == std::floor(nk2) && k2 >= 2 && nk2 >= 2) {
    const StiefelSpec spec{static_cast<unsigned>(k2 + nk2),
                           static_cast<unsigned>(k2)};
    const std::string sl =
        "(n=" + std::to_string(spec.n) + ",k=" + std::to_string(spec.k) + ")";
    Rng stiefel_rng({opt.seed, 1});
    const auto stiefel = mc_estimate_many(StiefelSampler(spec), indices,
                                          opt.samples, stiefel_rng);
    for (std::size_t q = 0; q < indices.size(); ++q) {
      report.checks.push_back(detail::sigma_check(
          "mc.stiefel" + sl + " " + index_label(indices[q]), stiefel[q],
          moment(p, indices[q])));
      report.checks.push_back(detail::sigma_check(
          "mc.stiefel~wishart" + sl + " " + index_label(indices[q]), stiefel[q],
          wishart[q].value, wishart[q].std_error));
    }
  }

  // E_{a,b}[A f] = factor_A E_{a+1,b}[f], E_{a,b}[B f] = factor_B E_{a,b+1}[f]
  const std::vector<MomentIndex> fs = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 0, 2}};
  const std::vector<std::string> f_names = {"1", "X", "X^2", "Z^2"};
  struct Shift {
    std::string label;
    ShiftFactor<double> factor;
    bool use_complement;
    std::uint64_t stream;
  };
  const Shift shifts[] = {{"A", lemma_factor_A(p), false, 3},
                          {"B", lemma_factor_B(p), true, 4}};
  for (const auto& shift : shifts) {
    Rng base_rng({opt.seed, shift.stream + 3});
    Rng shifted_rng({opt.seed, shift.stream});
    MatrixBetaSampler base(p);
    std::vector<RunningMoments> lhs(fs.size());
    for (std::uint64_t s = 0; s < opt.samples; ++s) {
      const Sym2Matrix w = base(base_rng);
      const double det = shift.use_complement ? w.det_complement() : w.det();
      for (std::size_t i = 0; i < fs.size(); ++i) lhs[i].add(det * monomial(w, fs[i]));
    }
    const auto rhs = mc_estimate_many(MatrixBetaSampler(shift.factor.shifted_params),
                                      fs, opt.samples, shifted_rng);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const MomentEstimate l = lhs[i].estimate();
      const double v = shift.factor.value;
      report.checks.push_back(detail::sigma_check(
          "mc.lemma" + pl + " E[" + shift.label + "*" + f_names[i] + "]==factor*E'[" +
              f_names[i] + "]",
          l, v * rhs[i].value, v * rhs[i].std_error));
    }
  }

  {
    Rng ks_rng({opt.seed, 5});
    MatrixBetaSampler sampler(p);
    std::vector<double> xs(opt.ks_samples);
    for (auto& x : xs) x = sampler(ks_rng).x;
    const double d = ks_statistic_beta(xs, p.alpha, p.beta);
    const double crit = ks_critical_value(xs.size(), kKsLevel);
    report.checks.push_back({"mc.ks" + pl + " X~Beta(alpha,beta)", format_double(d),
                             format_double(crit), "D/critical=" + format_double(d / crit),
                             d < crit});
  }
  return report;
}

}  // namespace mvbeta
