#pragma once

// Modified iterative quantum amplitude estimation: the single-machine baseline.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dqc/counters.hpp"
#include "dqc/interval.hpp"
#include "dqc/metrics.hpp"
#include "dqc/qsim/sampler.hpp"
#include "dqc/random.hpp"

namespace dqc {

struct MiqaeConfig {
  double epsilon = 0.001;
  double alpha = 0.05;
  std::uint64_t shots_per_batch = 1;

  void validate() const {
    if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
    if (shots_per_batch == 0) throw std::domain_error("shots per batch must be positive");
  }
};

struct MiqaeRound {
  std::uint64_t index = 0;
  std::uint64_t K = 1;
  std::uint64_t quadrant = 0;
  std::uint64_t shots = 0;
  std::uint64_t shots_cap = 0;
  double alpha_round = 0.0;
  double a_hat = 0.0;
  ProbabilityInterval raw;
  AngleInterval theta;
};

struct MiqaeResult {
  ProbabilityInterval interval;
  AngleInterval theta;
  RunStatus status = RunStatus::success;
  ResourceCounters counters;
  std::uint64_t seed = 0;
  std::vector<MiqaeRound> rounds;

  double estimate() const { return (interval.low + interval.high) / 2.0; }
};

// Largest odd K in [3 K_i, floor(pi / (2 (theta_u - theta_l)))] keeping
// [K theta_l, K theta_u] inside one quadrant; returned as the power (K - 1)/2.
// Returns k_i when no such K exists.
inline std::uint64_t find_next_k_miqae(std::uint64_t k_i, double theta_low, double theta_high) {
  if (!(theta_high > theta_low)) throw std::domain_error("angle interval must have positive width");
  const std::uint64_t K_i = 2 * k_i + 1;
  std::uint64_t K = static_cast<std::uint64_t>(std::floor(std::numbers::pi / (2.0 * (theta_high - theta_low))));
  if (K % 2 == 0) {
    if (K == 0) return k_i;
    --K;
  }
  while (K >= 3 * K_i) {
    if (same_quadrant(K, theta_low, theta_high)) return (K - 1) / 2;
    if (K < 2) break;
    K -= 2;
  }
  return k_i;
}

template <ShotSampler S>
MiqaeResult run_miqae(const MiqaeConfig& config, S& sampler, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  MiqaeResult out;
  out.seed = seed;

  AngleInterval theta{0.0, kHalfPi};
  std::uint64_t k = 0;
  const double K_max = std::numbers::pi / (4.0 * config.epsilon);
  std::uint64_t round_index = 0;

  while (theta.width() > 2.0 * config.epsilon) {
    ++round_index;
    const std::uint64_t k_prev = k;
    const std::uint64_t K = 2 * k + 1;
    MiqaeRound rec;
    rec.index = round_index;
    rec.K = K;
    rec.alpha_round = 2.0 * config.alpha / 3.0 * static_cast<double>(K) / K_max;
    rec.shots_cap = shots_cap(rec.alpha_round);
    rec.quadrant = quadrant_index(K, theta.low);

    std::uint64_t hits = 0;
    bool converged = false;
    while (k == k_prev) {
      if (rec.shots >= rec.shots_cap) {
        // Budget spent and no admissible K: the plain algorithm would spin forever.
        out.status = RunStatus::failed;
        break;
      }
      const std::uint64_t batch = std::min(config.shots_per_batch, rec.shots_cap - rec.shots);
      hits += sampler.sample(k, 1.0, batch, rng);
      rec.shots += batch;
      out.counters.record(K, batch);

      rec.a_hat = static_cast<double>(hits) / static_cast<double>(rec.shots);
      rec.raw = chernoff_interval(rec.a_hat, rec.shots, rec.alpha_round);
      theta = angles_from_quadrant(K, rec.quadrant, gamma_from_interval(rec.raw.low, rec.raw.high, rec.quadrant));
      rec.theta = theta;
      if (theta.width() < 2.0 * config.epsilon) {
        converged = true;
        break;
      }
      k = find_next_k_miqae(k, theta.low, theta.high);
    }
    out.rounds.push_back(rec);
    if (out.status == RunStatus::failed || converged) break;
  }

  out.theta = theta;
  out.interval = {AngleInterval::sin2(theta.low), AngleInterval::sin2(theta.high)};
  return out;
}

}  // namespace dqc
