// mvbeta: moments of the 2x2 matrix-variate Beta distribution from the
// command line.
//
//   mvbeta moment      --alpha 1 --beta 1 --m 1 --r 1 --z 0 [--mode exact|float]
//   mvbeta table       --alpha 1 --beta 1 --m 0:1 --r 0:1 --z 0,2 [--format csv|json]
//   mvbeta verify      --suite exact|quadrature|montecarlo|all [--max-order N]
//   mvbeta sample      --sampler wishart|stiefel [--alpha --beta | --n --k] --count N --seed S
//   mvbeta asymptotics --m 0 --t 1 --ratio 1/2 --n-min 40 --n-max 1280
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include "mvbeta/mvbeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using mvbeta::BetaParams;
using mvbeta::MomentIndex;
using mvbeta::Rational;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json make_record(const std::string& command, json params) {
  json rec;
  rec["command"] = command;
  rec["params"] = std::move(params);
  rec["value"] = nullptr;
  rec["error"] = nullptr;
  rec["metadata"] = json::object();
  return rec;
}

/// "a", "a:b", "a:b:step" or "a,b,c". An empty range (a > b) is allowed.
std::vector<unsigned> parse_range(const std::string& text, const char* flag) {
  auto to_unsigned = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError(std::string(flag) + ": malformed range '" + text + "'");
    return static_cast<unsigned>(std::stoul(s));
  };
  std::vector<unsigned> out;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_unsigned(item));
    return out;
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty() || parts.size() > 3)
    throw UsageError(std::string(flag) + ": malformed range '" + text + "'");
  const unsigned lo = to_unsigned(parts[0]);
  const unsigned hi = parts.size() > 1 ? to_unsigned(parts[1]) : lo;
  const unsigned step = parts.size() > 2 ? to_unsigned(parts[2]) : 1;
  if (step == 0) throw UsageError(std::string(flag) + ": range step must be >= 1");
  for (unsigned v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------- moment/table

struct EvalOptions {
  std::string alpha;
  std::string beta;
  std::string mode = "exact";
  std::string format;
};

struct Evaluator {
  std::optional<BetaParams<Rational>> exact;
  std::optional<BetaParams<double>> real;
  std::string alpha_text, beta_text;

  explicit Evaluator(const EvalOptions& opt) {
    if (opt.mode == "exact") {
      exact.emplace(mvbeta::parse_rational(opt.alpha), mvbeta::parse_rational(opt.beta));
      alpha_text = mvbeta::format_rational(exact->alpha);
      beta_text = mvbeta::format_rational(exact->beta);
    } else {
      real.emplace(mvbeta::parse_real(opt.alpha), mvbeta::parse_real(opt.beta));
      alpha_text = mvbeta::format_double(real->alpha);
      beta_text = mvbeta::format_double(real->beta);
    }
  }

  std::string operator()(const MomentIndex& idx) const {
    if (exact) return mvbeta::format_rational(mvbeta::moment(*exact, idx));
    return mvbeta::format_double(mvbeta::moment(*real, idx));
  }
};

int run_moment(const EvalOptions& opt, const MomentIndex& idx) {
  const Evaluator eval(opt);
  const std::string value = eval(idx);
  if (opt.format == "json") {
    json rec = make_record("moment", {{"alpha", eval.alpha_text},
                                      {"beta", eval.beta_text},
                                      {"m", idx.m},
                                      {"r", idx.r},
                                      {"z", idx.z_pow},
                                      {"mode", opt.mode}});
    rec["value"] = value;
    std::cout << rec.dump(2) << '\n';
  } else {
    std::cout << value << '\n';
  }
  return kExitOk;
}

int run_table(const EvalOptions& opt, const std::string& ms, const std::string& rs,
              const std::string& zs) {
  const Evaluator eval(opt);
  const auto m_values = parse_range(ms, "--m");
  const auto r_values = parse_range(rs, "--r");
  const auto z_values = parse_range(zs, "--z");
  if (opt.format == "json") {
    json out = json::array();
    for (unsigned m : m_values)
      for (unsigned r : r_values)
        for (unsigned z : z_values) {
          json rec = make_record("table", {{"alpha", eval.alpha_text},
                                           {"beta", eval.beta_text},
                                           {"m", m},
                                           {"r", r},
                                           {"z", z},
                                           {"mode", opt.mode}});
          rec["value"] = eval({m, r, z});
          out.push_back(std::move(rec));
        }
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  std::string buf = "alpha,beta,m,r,z,value\n";
  for (unsigned m : m_values)
    for (unsigned r : r_values)
      for (unsigned z : z_values)
        buf += eval.alpha_text + ',' + eval.beta_text + ',' + std::to_string(m) + ',' +
               std::to_string(r) + ',' + std::to_string(z) + ',' + eval({m, r, z}) + '\n';
  std::cout << buf;
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string suite = "all";
  unsigned max_order = 2;
  std::string alpha, beta;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  unsigned cells = 16;
  unsigned points = 4;
  bool failures_only = false;
};

int run_verify(const VerifyOptions& opt) {
  if (opt.alpha.empty() != opt.beta.empty())
    throw UsageError("--alpha and --beta must be given together");
  const bool custom = !opt.alpha.empty();
  mvbeta::VerifyReport report;

  if (opt.suite == "exact" || opt.suite == "all") {
    std::vector<BetaParams<Rational>> grid;
    if (custom) {
      grid.emplace_back(mvbeta::parse_rational(opt.alpha), mvbeta::parse_rational(opt.beta));
    } else {
      const std::vector<Rational> values = {Rational(3, 4), Rational(1), Rational(3, 2),
                                            Rational(2), Rational(7, 2)};
      for (const auto& a : values)
        for (const auto& b : values) grid.emplace_back(a, b);
    }
    std::cout << "== suite exact (max order " << opt.max_order << ") ==\n";
    const auto part = mvbeta::verify_exact(grid, opt.max_order);
    part.print(std::cout, opt.failures_only);
    report.append(part);
  }
  if (opt.suite == "quadrature" || opt.suite == "all") {
    std::vector<BetaParams<double>> grid;
    if (custom) {
      grid.emplace_back(mvbeta::parse_real(opt.alpha), mvbeta::parse_real(opt.beta));
    } else {
      for (double a : {2.0, 2.5, 3.0})
        for (double b : {2.0, 2.5, 3.0}) grid.emplace_back(a, b);
    }
    mvbeta::QuadratureSpec spec;
    spec.cells_per_axis = opt.cells;
    spec.points_per_cell_axis = opt.points;
    spec.validate();
    std::cout << "== suite quadrature (cells " << opt.cells << ", points "
              << opt.points << ") ==\n";
    const auto part = mvbeta::verify_quadrature(grid, opt.max_order, spec);
    part.print(std::cout, opt.failures_only);
    report.append(part);
  }
  if (opt.suite == "montecarlo" || opt.suite == "all") {
    const BetaParams<double> p = custom
        ? BetaParams<double>(mvbeta::parse_real(opt.alpha), mvbeta::parse_real(opt.beta))
        : BetaParams<double>(2.0, 2.0);
    if (opt.samples < 2) throw UsageError("--samples must be >= 2");
    mvbeta::MonteCarloOptions mc;
    mc.max_order = opt.max_order;
    mc.samples = opt.samples;
    mc.seed = opt.seed;
    mc.ks_samples = std::min<std::uint64_t>(opt.samples, 100000);
    std::cout << "== suite montecarlo (samples " << opt.samples << ", seed "
              << opt.seed << ") ==\n";
    const auto part = mvbeta::verify_montecarlo(p, mc);
    part.print(std::cout, opt.failures_only);
    report.append(part);
  }
  std::cout << "overall: " << (report.passed() ? "PASS" : "FAIL") << " ("
            << report.failures() << " failed of " << report.checks.size() << ")\n";
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------- sample

struct SampleOptions {
  std::string sampler = "wishart";
  std::string alpha = "2", beta = "2";
  unsigned n = 8, k = 4;
  std::uint64_t count = 10;
  std::uint64_t seed = 0;
  std::string format = "csv";
};

template <class Sampler>
int emit_samples(Sampler sampler, const SampleOptions& opt, json params) {
  mvbeta::Rng rng({opt.seed, 0});
  if (opt.format == "json") {
    json rec = make_record("sample", std::move(params));
    json values = json::array();
    for (std::uint64_t i = 0; i < opt.count; ++i) {
      const auto w = sampler(rng);
      values.push_back({mvbeta::format_double(w.x), mvbeta::format_double(w.y),
                        mvbeta::format_double(w.z)});
    }
    rec.erase("value");
    rec["values"] = std::move(values);
    rec["metadata"] = {{"seed", opt.seed}, {"count", opt.count},
                       {"retries", sampler.retries()}};
    std::cout << rec.dump(2) << '\n';
    return kExitOk;
  }
  std::string buf = "x,y,z\n";
  for (std::uint64_t i = 0; i < opt.count; ++i) {
    const auto w = sampler(rng);
    buf += mvbeta::format_double(w.x);
    buf += ',';
    buf += mvbeta::format_double(w.y);
    buf += ',';
    buf += mvbeta::format_double(w.z);
    buf += '\n';
    if (buf.size() > (1u << 20)) {
      std::cout << buf;
      buf.clear();
    }
  }
  std::cout << buf;
  return kExitOk;
}

int run_sample(const SampleOptions& opt) {
  if (opt.sampler == "stiefel") {
    const mvbeta::StiefelSpec spec{opt.n, opt.k};
    spec.validate();
    return emit_samples(mvbeta::StiefelSampler(spec), opt,
                        {{"sampler", "stiefel"}, {"n", opt.n}, {"k", opt.k}});
  }
  const BetaParams<double> p(mvbeta::parse_real(opt.alpha), mvbeta::parse_real(opt.beta));
  return emit_samples(mvbeta::MatrixBetaSampler(p), opt,
                      {{"sampler", "wishart"},
                       {"alpha", mvbeta::format_double(p.alpha)},
                       {"beta", mvbeta::format_double(p.beta)}});
}

// ---------------------------------------------------------------- asymptotics

struct AsymptoticsOptions {
  unsigned m = 0;
  unsigned t = 1;
  std::string ratio = "1/2";
  unsigned n_min = 40;
  unsigned n_max = 1280;
  std::string format = "text";
};

int run_asymptotics(const AsymptoticsOptions& opt) {
  mvbeta::DecayStudy study;
  study.m = opt.m;
  study.t = opt.t;
  study.ratio = mvbeta::parse_rational(opt.ratio);
  study.n_values = mvbeta::doubling_schedule(opt.n_min, opt.n_max);
  if (study.n_values.size() < 3)
    throw UsageError("schedule needs at least 3 n values for the slope fit");
  const auto table = mvbeta::decay_table(study);
  const double slope = mvbeta::fit_decay_exponent(table);
  std::optional<mvbeta::CoefficientReport> coef;
  if (study.t > 0) coef = mvbeta::leading_coefficient_empirical(study);

  const std::string ratio_text = mvbeta::format_rational(study.ratio);
  if (opt.format == "json") {
    json rec = make_record("asymptotics", {{"m", opt.m},
                                           {"t", opt.t},
                                           {"ratio", ratio_text},
                                           {"n_min", opt.n_min},
                                           {"n_max", opt.n_max}});
    json rows = json::array();
    for (const auto& row : table) {
      const unsigned k = study.frame_width(row.n);
      rows.push_back({{"n", row.n},
                      {"k", k},
                      {"value", mvbeta::format_rational(row.value)},
                      {"value_float", mvbeta::format_double(mvbeta::to_double(row.value))}});
    }
    rec.erase("value");
    rec["table"] = std::move(rows);
    rec["slope"] = mvbeta::format_double(slope);
    if (coef) {
      rec["coefficient_at_n_max"] = mvbeta::format_double(coef->at_largest_n);
      rec["coefficient_empirical"] = mvbeta::format_double(coef->empirical);
      rec["coefficient_analytic"] = mvbeta::format_double(coef->analytic);
      rec["coefficient_displayed"] = mvbeta::format_double(coef->displayed);
    }
    std::cout << rec.dump(2) << '\n';
    return kExitOk;
  }

  std::cout << "# decay of E[S11^" << opt.m << " S12^" << 2 * opt.t << "] at k/n = "
            << ratio_text << '\n';
  std::cout << "n,k,value,value_float\n";
  for (const auto& row : table)
    std::cout << row.n << ',' << study.frame_width(row.n) << ','
              << mvbeta::format_rational(row.value) << ','
              << mvbeta::format_double(mvbeta::to_double(row.value)) << '\n';
  std::cout << "fitted slope: " << mvbeta::format_double(slope) << " (expected "
            << -static_cast<int>(opt.t) << ")\n";
  if (!coef) {
    std::cout << "leading coefficient: not applicable for t = 0\n";
    return kExitOk;
  }
  std::cout << "coefficient n^t*E at n=" << table.back().n << ": "
            << mvbeta::format_double(coef->at_largest_n) << '\n'
            << "coefficient empirical (Richardson, two largest n): "
            << mvbeta::format_double(coef->empirical) << '\n'
            << "coefficient analytic (2t-1)!! (1-r)^t r^(t+m): "
            << mvbeta::format_double(coef->analytic) << '\n'
            << "coefficient displayed (2t-1)!!/2^t r^t (1-t)^(t+m): "
            << mvbeta::format_double(coef->displayed) << '\n';
  const double rel = std::abs(coef->empirical - coef->analytic) / coef->analytic;
  std::cout << "empirical vs analytic relative difference: " << mvbeta::format_double(rel)
            << '\n'
            << "empirical vs displayed: "
            << (std::abs(coef->empirical - coef->displayed) <= 0.02 * std::abs(coef->empirical)
                    ? "match"
                    : "MISMATCH")
            << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments of the 2x2 matrix-variate Beta distribution B(alpha, beta; I_2)"};
  app.require_subcommand(1);

  EvalOptions moment_opt;
  MomentIndex moment_idx;
  auto* moment_cmd = app.add_subcommand("moment", "Evaluate E[X^m Y^r Z^z]");
  moment_cmd->add_option("--alpha", moment_opt.alpha, "alpha (> 1/2), p/q in exact mode")->required();
  moment_cmd->add_option("--beta", moment_opt.beta, "beta (> 1/2), p/q in exact mode")->required();
  moment_cmd->add_option("--m", moment_idx.m, "power of X");
  moment_cmd->add_option("--r", moment_idx.r, "power of Y");
  moment_cmd->add_option("--z", moment_idx.z_pow, "power of Z");
  moment_cmd->add_option("--mode", moment_opt.mode)->check(CLI::IsMember({"exact", "float"}));
  moment_opt.format = "text";
  moment_cmd->add_option("--format", moment_opt.format)->check(CLI::IsMember({"text", "json"}));

  EvalOptions table_opt;
  table_opt.format = "csv";
  std::string table_m = "0", table_r = "0", table_z = "0";
  auto* table_cmd = app.add_subcommand("table", "Moments over a Cartesian index range");
  table_cmd->add_option("--alpha", table_opt.alpha)->required();
  table_cmd->add_option("--beta", table_opt.beta)->required();
  table_cmd->add_option("--m", table_m, "range a, a:b, a:b:step or a,b,c");
  table_cmd->add_option("--r", table_r, "range a, a:b, a:b:step or a,b,c");
  table_cmd->add_option("--z", table_z, "range a, a:b, a:b:step or a,b,c");
  table_cmd->add_option("--mode", table_opt.mode)->check(CLI::IsMember({"exact", "float"}));
  table_cmd->add_option("--format", table_opt.format)->check(CLI::IsMember({"csv", "json"}));

  VerifyOptions verify_opt;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
  verify_cmd->add_option("--suite", verify_opt.suite)
      ->check(CLI::IsMember({"exact", "quadrature", "montecarlo", "all"}));
  verify_cmd->add_option("--max-order", verify_opt.max_order, "bound on m, r and t");
  verify_cmd->add_option("--alpha", verify_opt.alpha);
  verify_cmd->add_option("--beta", verify_opt.beta);
  verify_cmd->add_option("--samples", verify_opt.samples);
  verify_cmd->add_option("--seed", verify_opt.seed);
  verify_cmd->add_option("--cells", verify_opt.cells)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--points", verify_opt.points)->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--failures-only", verify_opt.failures_only);

  SampleOptions sample_opt;
  auto* sample_cmd = app.add_subcommand("sample", "Draw (x, y, z) samples");
  sample_cmd->add_option("--sampler", sample_opt.sampler)
      ->check(CLI::IsMember({"wishart", "stiefel"}));
  sample_cmd->add_option("--alpha", sample_opt.alpha);
  sample_cmd->add_option("--beta", sample_opt.beta);
  sample_cmd->add_option("--n", sample_opt.n);
  sample_cmd->add_option("--k", sample_opt.k);
  sample_cmd->add_option("--count", sample_opt.count);
  sample_cmd->add_option("--seed", sample_opt.seed);
  sample_cmd->add_option("--format", sample_opt.format)->check(CLI::IsMember({"csv", "json"}));

  AsymptoticsOptions asym_opt;
  auto* asym_cmd = app.add_subcommand("asymptotics", "Decay of E[S11^m S12^2t] in n");
  asym_cmd->add_option("--m", asym_opt.m);
  asym_cmd->add_option("--t", asym_opt.t);
  asym_cmd->add_option("--ratio", asym_opt.ratio, "k/n as p/q");
  asym_cmd->add_option("--n-min", asym_opt.n_min);
  asym_cmd->add_option("--n-max", asym_opt.n_max);
  asym_cmd->add_option("--format", asym_opt.format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*moment_cmd) return run_moment(moment_opt, moment_idx);
    if (*table_cmd) return run_table(table_opt, table_m, table_r, table_z);
    if (*verify_cmd) return run_verify(verify_opt);
    if (*sample_cmd) return run_sample(sample_opt);
    if (*asym_cmd) return run_asymptotics(asym_opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}
