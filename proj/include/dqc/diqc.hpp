#pragma once

// Per-node distributed counting estimator.
//
// Each node estimates a_j = t_j / 2^m for its sub-oracle with an adaptive
// sequence of odd amplification factors K_i, measuring the good pattern of
// Q_j^{(K_i-1)/2} A_j |0>. When the largest useful K would straddle a quadrant
// boundary, the rotation qubit weight r < 1 shrinks the effective angle
// arcsin(sqrt(r) sin(theta)) so the amplified interval fits in one quadrant.
// Intervals that reach 3 eps in amplitude are merged by an inverse-width
// weighted average, then scaled by 2^m and rounded to the integer count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "dqc/counters.hpp"
#include "dqc/interval.hpp"
#include "dqc/metrics.hpp"
#include "dqc/qsim/sampler.hpp"
#include "dqc/random.hpp"

namespace dqc {

class EstimationIncomplete : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DiqcConfig {
  double epsilon_node = 0.001;
  double alpha_node = 0.05;
  std::uint64_t shots_per_batch = 1;
  // Amplitude width (in units of epsilon_node) at or above which q = 2; below it q = 3.
  double wide_factor = 50.0;

  void validate() const {
    if (!(epsilon_node > 0.0 && epsilon_node < 0.5)) throw std::domain_error("node epsilon must lie in (0, 0.5)");
    if (!(alpha_node > 0.0 && alpha_node < 1.0)) throw std::domain_error("node alpha must lie in (0, 1)");
    if (shots_per_batch == 0) throw std::domain_error("shots per batch must be positive");
  }
};

inline unsigned amplification_factor(double amplitude_width, const DiqcConfig& config) {
  return amplitude_width >= config.wide_factor * config.epsilon_node ? 2u : 3u;
}

// arcsin(sqrt(r) sin(theta))
inline double rescale_angle(double theta, double r) {
  if (r == 1.0) return theta;
  return std::asin(std::min(1.0, std::sqrt(r) * std::sin(theta)));
}

inline double admission_threshold(std::uint64_t K) {
  const double s = std::sin(kHalfPi * (1.0 - 1.0 / static_cast<double>(K)));
  return std::max(s * s, 0.75);
}

struct NextK {
  std::uint64_t K = 1;
  double r = 1.0;
  bool found = false;
};

// Scans odd K downward from 2 floor(pi / (4 w) - 1/2) + 1 while K >= q K_current.
// First K whose plain interval fits one quadrant wins with r = 1; otherwise,
// unless this round backtracked, the first K whose r-rescaled interval fits
// with r above the admission threshold wins with that r.
inline NextK find_next_k_diqc(const AngleInterval& theta, unsigned q, std::uint64_t K_current, bool backtracked,
                              double r_current = 1.0) {
  if (!(theta.high > theta.low)) throw std::domain_error("angle interval must have positive width");
  const double start = std::floor(std::numbers::pi / (4.0 * theta.width()) - 0.5);
  const NextK none{K_current, r_current, false};
  if (start < 0.0) return none;
  std::uint64_t K = 2 * static_cast<std::uint64_t>(start) + 1;
  const double sin_high = std::sin(theta.high);
  while (K >= q * K_current) {
    if (same_quadrant(K, theta.low, theta.high)) return {K, 1.0, true};
    if (!backtracked) {
      const std::uint64_t R = quadrant_index(K, theta.low);
      const double edge = std::sin(static_cast<double>(R + 1) * std::numbers::pi / (2.0 * static_cast<double>(K)));
      const double r = edge * edge / (sin_high * sin_high);
      if (r > admission_threshold(K) && r <= 1.0 &&
          same_quadrant(K, rescale_angle(theta.low, r), rescale_angle(theta.high, r))) {
        return {K, r, true};
      }
    }
    if (K < 2) break;
    K -= 2;
  }
  return none;
}

struct RoundRecord {
  std::uint64_t index = 0;
  std::uint64_t K = 1;
  std::uint64_t quadrant = 0;
  double r = 1.0;
  unsigned q = 2;
  double alpha_round = 0.0;
  std::uint64_t shots_cap = 0;
  std::uint64_t shots = 0;  // shots pooled into a_hat
  std::uint64_t hits = 0;
  double a_hat = 0.0;
  ProbabilityInterval raw;     // bounds on sin^2(K theta~)
  AngleInterval scaled_theta;  // theta~ = arcsin(sqrt(r) sin theta)
  AngleInterval theta;         // recovered interval on theta_j
  bool backtracked = false;
  bool retried = false;  // the budget was spent once and a fresh full budget taken

  double amplitude_low() const { return AngleInterval::sin2(theta.low); }
  double amplitude_high() const { return AngleInterval::sin2(theta.high); }
  double amplitude_width() const { return amplitude_high() - amplitude_low(); }
};

struct NodeResult {
  unsigned m = 1;
  std::uint64_t node_id = 0;
  double epsilon_node = 0.0;
  double alpha_node = 0.0;
  ProbabilityInterval interval;     // [c_min, c_max] on a_j
  double amplitude_estimate = 0.0;  // weighted average c in [0, 1]
  double count_estimate = 0.0;      // 2^m c, unrounded
  std::int64_t t_prime = 0;
  double scaled_low = 0.0;
  double scaled_high = 0.0;
  RunStatus status = RunStatus::success;
  ResourceCounters counters;
  std::uint64_t seed = 0;
};

struct NodeRun {
  NodeResult result;
  std::vector<RoundRecord> rounds;
};

struct PostProcessed {
  double amplitude_estimate = 0.0;
  double count_estimate = 0.0;
  std::int64_t t_prime = 0;
  ProbabilityInterval interval;
  double scaled_low = 0.0;
  double scaled_high = 0.0;
  std::size_t rounds_used = 0;
};

inline bool qualifies_for_post_processing(const RoundRecord& rec, double epsilon_node) {
  const double w = rec.amplitude_width();
  return w <= 3.0 * epsilon_node && w > 0.0;
}

// Weighted average of every round interval with amplitude width <= 3 eps,
// weights 1 / width; t' rounds half away from zero.
inline PostProcessed post_process(std::span<const RoundRecord> rounds, double epsilon_node, unsigned m) {
  double weighted = 0.0;
  double weights = 0.0;
  std::size_t used = 0;
  for (const auto& rec : rounds) {
    if (!qualifies_for_post_processing(rec, epsilon_node)) continue;
    const double w = 1.0 / rec.amplitude_width();
    weighted += w * (rec.amplitude_low() + rec.amplitude_high()) / 2.0;
    weights += w;
    ++used;
  }
  if (used == 0) throw EstimationIncomplete("no round reached amplitude width <= 3 eps");
  PostProcessed out;
  out.rounds_used = used;
  const double scale = std::ldexp(1.0, static_cast<int>(m));
  out.amplitude_estimate = weighted / weights;
  out.count_estimate = scale * out.amplitude_estimate;
  out.t_prime = static_cast<std::int64_t>(std::llround(out.count_estimate));
  out.interval = {std::max(0.0, out.amplitude_estimate - 1.5 * epsilon_node),
                  std::min(1.0, out.amplitude_estimate + 1.5 * epsilon_node)};
  out.scaled_low = scale * out.interval.low;
  out.scaled_high = scale * out.interval.high;
  return out;
}

namespace detail {

struct RoundSetup {
  std::uint64_t K;
  double r;
};

inline void begin_round(RoundRecord& rec, const AngleInterval& start, std::uint64_t K, double r, unsigned q,
                        std::uint64_t K_max, const DiqcConfig& config) {
  rec.K = K;
  rec.r = r;
  rec.q = q;
  rec.quadrant = quadrant_index(K, rescale_angle(start.low, r));
  rec.alpha_round = static_cast<double>(q - 1) * config.alpha_node / static_cast<double>(q) * static_cast<double>(K) /
                    static_cast<double>(K_max);
  rec.shots_cap = shots_cap(rec.alpha_round);
  rec.shots = 0;
  rec.hits = 0;
}

}  // namespace detail

template <ShotSampler S>
NodeRun run_node(const DiqcConfig& config, S& sampler, unsigned m, std::uint64_t seed, std::uint64_t node_id = 0) {
  config.validate();
  const double eps = config.epsilon_node;
  Rng rng(seed);
  NodeRun run;
  NodeResult& res = run.result;
  res.m = m;
  res.node_id = node_id;
  res.epsilon_node = eps;
  res.alpha_node = config.alpha_node;
  res.seed = seed;

  const std::uint64_t K_max = k_max_cap(eps);
  AngleInterval theta{0.0, kHalfPi};
  std::uint64_t K = 1;
  double r = 1.0;
  // Setting that produced `theta`, restored on backtracking.
  detail::RoundSetup previous{1, 1.0};
  std::uint64_t round_index = 0;

  while (theta.amplitude_width() > 2.0 * eps) {
    ++round_index;
    const AngleInterval start = theta;
    const unsigned q = amplification_factor(start.amplitude_width(), config);
    RoundRecord rec;
    rec.index = round_index;
    detail::begin_round(rec, start, K, r, q, K_max, config);

    bool converged = false;
    bool advanced = false;
    while (!converged && !advanced) {
      if (rec.shots == rec.shots_cap) {
        if (!rec.retried) {
          rec.retried = true;
          rec.shots = 0;
          rec.hits = 0;
          continue;
        }
        res.status = RunStatus::failed;
        break;
      }
      const std::uint64_t batch = std::min(config.shots_per_batch, rec.shots_cap - rec.shots);
      rec.hits += sampler.sample((K - 1) / 2, r, batch, rng);
      rec.shots += batch;
      res.counters.record(K, batch);

      rec.a_hat = static_cast<double>(rec.hits) / static_cast<double>(rec.shots);
      rec.raw = chernoff_interval(rec.a_hat, rec.shots, rec.alpha_round);
      rec.scaled_theta =
          angles_from_quadrant(K, rec.quadrant, gamma_from_interval(rec.raw.low, rec.raw.high, rec.quadrant));

      const double s2_low = AngleInterval::sin2(rec.scaled_theta.low);
      const double s2_high = AngleInterval::sin2(rec.scaled_theta.high);
      if (s2_low > r || s2_high > r) {
        // Inconsistent with the rescaling: drop this K and re-plan from the
        // interval the previous round ended with, plain quadrant condition only.
        rec.backtracked = true;
        theta = start;
        const NextK next = find_next_k_diqc(start, q, previous.K, true, previous.r);
        K = next.found ? next.K : previous.K;
        r = next.found ? 1.0 : previous.r;
        detail::begin_round(rec, start, K, r, q, K_max, config);
        continue;
      }
      theta = {std::asin(std::sqrt(s2_low / r)), std::asin(std::sqrt(s2_high / r))};
      rec.theta = theta;
      if (theta.amplitude_width() <= 2.0 * eps) {
        converged = true;
        break;
      }
      const NextK next = find_next_k_diqc(theta, q, K, rec.backtracked, r);
      if (next.found) {
        previous = {K, r};
        K = next.K;
        r = next.r;
        advanced = true;
      }
    }
    run.rounds.push_back(rec);
    if (res.status == RunStatus::failed) break;
  }

  PostProcessed post;
  try {
    post = post_process(run.rounds, eps, m);
  } catch (const EstimationIncomplete&) {
    // Best effort: midpoint of the current interval.
    res.status = RunStatus::failed;
    const double scale = std::ldexp(1.0, static_cast<int>(m));
    const double mid = (AngleInterval::sin2(theta.low) + AngleInterval::sin2(theta.high)) / 2.0;
    post.amplitude_estimate = mid;
    post.count_estimate = scale * mid;
    post.t_prime = static_cast<std::int64_t>(std::llround(post.count_estimate));
    post.interval = {AngleInterval::sin2(theta.low), AngleInterval::sin2(theta.high)};
    post.scaled_low = scale * post.interval.low;
    post.scaled_high = scale * post.interval.high;
  }
  res.amplitude_estimate = post.amplitude_estimate;
  res.count_estimate = post.count_estimate;
  res.t_prime = post.t_prime;
  res.interval = post.interval;
  res.scaled_low = post.scaled_low;
  res.scaled_high = post.scaled_high;
  return run;
}

}  // namespace dqc
