#pragma once

// Random variates of B(alpha, beta; I_2) and the Monte Carlo moment
// estimator.
//
// Two constructions:
//  * Wishart ratio: A ~ W_2(2 alpha), B ~ W_2(2 beta), A + B = L L^T,
//    W = L^-1 A L^-T. Works for any alpha, beta > 1/2.
//  * Stiefel block: G an n x k standard normal matrix, G = Q R with
//    diag(R) > 0 (Q Haar on the Stiefel manifold), S = Q Q^T; the top-left
//    2 x 2 block of S follows B(k/2, (n-k)/2; I_2).

#include "mvbeta/core.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace mvbeta {

struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// Deterministic generator: identical RngSpec gives identical streams.
class Rng {
 public:
  explicit Rng(const RngSpec& spec) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed),
                      static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(spec.stream_id),
                      static_cast<std::uint32_t>(spec.stream_id >> 32)};
    engine_.seed(seq);
  }

  double normal() { return normal_(engine_); }

  /// Chi-square with fractional degrees of freedom: Gamma(dof/2, scale 2).
  double chi_square(double dof) {
    return std::gamma_distribution<double>(0.5 * dof, 2.0)(engine_);
  }

  double chi(double dof) { return std::sqrt(chi_square(dof)); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Bartlett construction L L^T with L11 ~ chi(dof), L22 ~ chi(dof - 1),
/// L21 ~ N(0, 1). Requires dof > 1.
inline Sym2Matrix sample_wishart2(double dof, Rng& rng) {
  if (!(dof > 1.0)) throw std::invalid_argument("Wishart dof must be > 1");
  const double l11 = rng.chi(dof);
  const double l21 = rng.normal();
  const double l22 = rng.chi(dof - 1.0);
  return {l11 * l11, l21 * l21 + l22 * l22, l11 * l21};
}

inline constexpr int kMaxSampleRetries = 64;

/// Wishart-ratio sampler. Draws that fail the domain test after rounding are
/// redrawn; retries() counts them.
class MatrixBetaSampler {
 public:
  explicit MatrixBetaSampler(BetaParams<double> p) : params_(p) {}

  Sym2Matrix operator()(Rng& rng) {
    for (int attempt = 0; attempt < kMaxSampleRetries; ++attempt) {
      const Sym2Matrix a = sample_wishart2(2.0 * params_.alpha, rng);
      const Sym2Matrix b = sample_wishart2(2.0 * params_.beta, rng);
      const double t11 = a.x + b.x, t12 = a.z + b.z, t22 = a.y + b.y;
      // Cholesky of T = A + B.
      const double l11 = std::sqrt(t11);
      const double l21 = t12 / l11;
      const double d = t22 - l21 * l21;
      if (d > 0.0 && std::isfinite(l11) && l11 > 0.0) {
        const double l22 = std::sqrt(d);
        // M = L^-1 = [[1/l11, 0], [-l21/(l11 l22), 1/l22]]
        const double m11 = 1.0 / l11;
        const double m21 = -l21 / (l11 * l22);
        const double m22 = 1.0 / l22;
        // W = M A M^T
        const double x = m11 * m11 * a.x;
        const double z = m11 * (m21 * a.x + m22 * a.z);
        const double y = m21 * m21 * a.x + 2.0 * m21 * m22 * a.z + m22 * m22 * a.y;
        const Sym2Matrix w{x, y, z};
        if (in_domain(w)) return w;
      }
      ++retries_;
    }
    throw std::runtime_error("matrix Beta sampler exceeded retry budget");
  }

  const BetaParams<double>& params() const { return params_; }
  std::uint64_t retries() const { return retries_; }

 private:
  BetaParams<double> params_;
  std::uint64_t retries_ = 0;
};

inline Sym2Matrix sample_matrix_beta(const BetaParams<double>& p, Rng& rng) {
  MatrixBetaSampler sampler(p);
  return sampler(rng);
}

/// Frame dimensions for the Stiefel construction; k >= 2 and n - k >= 2.
struct StiefelSpec {
  unsigned n = 0;
  unsigned k = 0;

  void validate() const {
    if (k < 2) throw std::invalid_argument("Stiefel spec needs k >= 2");
    if (n < k + 2) throw std::invalid_argument("Stiefel spec needs n - k >= 2");
  }

  /// The equivalent B(k/2, (n-k)/2; I_2) parameters.
  BetaParams<double> beta_params() const {
    return {0.5 * k, 0.5 * (n - static_cast<double>(k))};
  }
};

/// Top-left 2 x 2 block of Q Q^T for a Haar n x k frame Q.
class StiefelSampler {
 public:
  explicit StiefelSampler(StiefelSpec spec) : spec_(spec) {
    spec_.validate();
    frame_.resize(static_cast<std::size_t>(spec_.n) * spec_.k);
  }

  Sym2Matrix operator()(Rng& rng) {
    const unsigned n = spec_.n, k = spec_.k;
    for (int attempt = 0; attempt < kMaxSampleRetries; ++attempt) {
      // Column-major n x k.
      for (double& g : frame_) g = rng.normal();
      if (orthonormalize()) {
        double s11 = 0.0, s22 = 0.0, s12 = 0.0;
        for (unsigned c = 0; c < k; ++c) {
          const double q1 = frame_[c * n], q2 = frame_[c * n + 1];
          s11 += q1 * q1;
          s22 += q2 * q2;
          s12 += q1 * q2;
        }
        const Sym2Matrix w{s11, s22, s12};
        if (in_domain(w)) return w;
      }
      ++retries_;
    }
    throw std::runtime_error("Stiefel sampler exceeded retry budget");
  }

  const StiefelSpec& spec() const { return spec_; }
  std::uint64_t retries() const { return retries_; }

 private:
  // Modified Gram-Schmidt with one reorthogonalization pass. The resulting
  // R has a positive diagonal, which fixes the QR sign ambiguity.
  bool orthonormalize() {
    const unsigned n = spec_.n, k = spec_.k;
    for (unsigned c = 0; c < k; ++c) {
      double* col = &frame_[static_cast<std::size_t>(c) * n];
      for (int pass = 0; pass < 2; ++pass)
        for (unsigned prev = 0; prev < c; ++prev) {
          const double* q = &frame_[static_cast<std::size_t>(prev) * n];
          double dot = 0.0;
          for (unsigned i = 0; i < n; ++i) dot += q[i] * col[i];
          for (unsigned i = 0; i < n; ++i) col[i] -= dot * q[i];
        }
      double norm = 0.0;
      for (unsigned i = 0; i < n; ++i) norm += col[i] * col[i];
      norm = std::sqrt(norm);
      if (!(norm > 1e-12)) return false;
      for (unsigned i = 0; i < n; ++i) col[i] /= norm;
    }
    return true;
  }

  StiefelSpec spec_;
  std::vector<double> frame_;
  std::uint64_t retries_ = 0;
};

inline Sym2Matrix sample_stiefel_block(const StiefelSpec& spec, Rng& rng) {
  StiefelSampler sampler(spec);
  return sampler(rng);
}

inline double monomial(const Sym2Matrix& w, const MomentIndex& idx) {
  double out = 1.0;
  for (unsigned i = 0; i < idx.m; ++i) out *= w.x;
  for (unsigned i = 0; i < idx.r; ++i) out *= w.y;
  for (unsigned i = 0; i < idx.z_pow; ++i) out *= w.z;
  return out;
}

/// Welford running mean / variance.
class RunningMoments {
 public:
  void add(double v) {
    ++count_;
    const double delta = v - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (v - mean_);
  }

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double std_error() const {
    return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  }

  MomentEstimate estimate() const {
    return {mean(), std_error(), count_, EstimateMethod::monte_carlo};
  }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Monte Carlo estimates of several moments from one sample stream.
template <class Sampler>
std::vector<MomentEstimate> mc_estimate_many(Sampler&& sampler,
                                             std::span<const MomentIndex> indices,
                                             std::uint64_t n_samples, Rng& rng) {
  if (n_samples < 2)
    throw std::invalid_argument("Monte Carlo estimate needs n_samples >= 2");
  std::vector<RunningMoments> acc(indices.size());
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    const Sym2Matrix w = sampler(rng);
    for (std::size_t q = 0; q < indices.size(); ++q)
      acc[q].add(monomial(w, indices[q]));
  }
  std::vector<MomentEstimate> out;
  out.reserve(acc.size());
  for (const auto& a : acc) out.push_back(a.estimate());
  return out;
}

template <class Sampler>
MomentEstimate mc_estimate(Sampler&& sampler, const MomentIndex& idx,
                           std::uint64_t n_samples, Rng& rng) {
  return mc_estimate_many(std::forward<Sampler>(sampler),
                          std::span<const MomentIndex>(&idx, 1), n_samples, rng)
      .front();
}

}  // namespace mvbeta
