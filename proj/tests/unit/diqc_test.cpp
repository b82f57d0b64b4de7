#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dqc/diqc.hpp"
#include "dqc/metrics.hpp"

using namespace dqc;

namespace {

// Independent descending scan over odd K for the (K, r) search.
NextK scan_next_k(double lo, double hi, unsigned q, std::uint64_t K_i, bool backtracked) {
  const auto top = static_cast<std::int64_t>(std::floor(std::numbers::pi / (4.0 * (hi - lo)) - 0.5));
  if (top < 0) return {K_i, 1.0, false};
  auto in_one = [](std::uint64_t K, double a, double b) {
    const double s = 2.0 * static_cast<double>(K) / std::numbers::pi;
    return std::floor(s * a + 1e-12) == std::ceil(s * b - 1e-12) - 1;
  };
  for (std::int64_t K = 2 * top + 1; K >= static_cast<std::int64_t>(q * K_i); K -= 2) {
    const auto uK = static_cast<std::uint64_t>(K);
    if (in_one(uK, lo, hi)) return {uK, 1.0, true};
    if (backtracked) continue;
    const double R = std::floor(2.0 * K * lo / std::numbers::pi + 1e-12);
    const double r = std::pow(std::sin((R + 1) * std::numbers::pi / (2.0 * K)), 2) / std::pow(std::sin(hi), 2);
    const double thr = std::max(std::pow(std::sin(std::numbers::pi / 2 * (1.0 - 1.0 / K)), 2), 0.75);
    if (r > thr && r <= 1.0 &&
        in_one(uK, std::asin(std::sqrt(r) * std::sin(lo)), std::asin(std::sqrt(r) * std::sin(hi)))) {
      return {uK, r, true};
    }
  }
  return {K_i, 1.0, false};
}

RoundRecord round_with(double a_low, double a_high) {
  RoundRecord r;
  r.theta = {std::asin(std::sqrt(a_low)), std::asin(std::sqrt(a_high))};
  return r;
}

}  // namespace

TEST(DiqcNextK, PlainExample) {
  const auto next = find_next_k_diqc({0.1, 0.11}, 2, 1, false);
  EXPECT_TRUE(next.found);
  EXPECT_EQ(next.K, 127u);
  EXPECT_EQ(next.r, 1.0);
}

TEST(DiqcNextK, EmptyScanRange) {
  const auto next = find_next_k_diqc({0.2, 1.2}, 3, 5, false, 0.9);
  EXPECT_FALSE(next.found);
  EXPECT_EQ(next.K, 5u);
  EXPECT_EQ(next.r, 0.9);
  EXPECT_THROW(find_next_k_diqc({0.3, 0.3}, 2, 1, false), std::domain_error);
}

// theta_max just above the quadrant edge at K = 101 with r ~ 0.9999 pulling it back.
TEST(DiqcNextK, RescaledBranchWins) {
  const std::uint64_t K = 101;
  const double edge = 31.0 * std::numbers::pi / (2.0 * K);
  const double hi = std::asin(std::sin(edge) / std::sqrt(0.9999));
  const double lo = hi - std::numbers::pi / (4.0 * 51.0);
  ASSERT_EQ(quadrant_index(K, lo), 30u);
  const auto next = find_next_k_diqc({lo, hi}, 2, 1, false);
  EXPECT_TRUE(next.found);
  EXPECT_EQ(next.K, K);
  EXPECT_LT(next.r, 1.0);
  EXPECT_NEAR(next.r, 0.9999, 1e-9);
  EXPECT_GT(next.r, admission_threshold(K));
  const auto scan = scan_next_k(lo, hi, 2, 1, false);
  EXPECT_EQ(scan.K, next.K);
  // After a backtrack only the plain condition may be used.
  const auto plain = find_next_k_diqc({lo, hi}, 2, 1, true);
  EXPECT_EQ(plain.r, 1.0);
  EXPECT_LT(plain.K, K);
}

TEST(DiqcNextK, AgreesWithScan) {
  Rng rng(8);
  for (int i = 0; i < 20000; ++i) {
    const double lo = rng.uniform() * 1.5;
    const double hi = std::min(kHalfPi, lo + 0.0002 + rng.uniform() * 0.1);
    const unsigned q = (rng.next_u64() & 1) ? 3 : 2;
    const std::uint64_t K_i = 2 * (rng.next_u64() % 30) + 1;
    const bool bt = rng.uniform() < 0.2;
    const auto got = find_next_k_diqc({lo, hi}, q, K_i, bt);
    const auto want = scan_next_k(lo, hi, q, K_i, bt);
    ASSERT_EQ(got.found, want.found) << lo << " " << hi;
    ASSERT_EQ(got.K, want.K) << lo << " " << hi;
    ASSERT_DOUBLE_EQ(got.r, want.r);
  }
}

TEST(DiqcPostProcess, WeightedAverage) {
  const std::vector<RoundRecord> rounds{round_with(0.0610, 0.0640), round_with(0.0615, 0.0630)};
  const auto p = post_process(rounds, 0.001, 5);
  EXPECT_NEAR(p.amplitude_estimate, 0.0623333333333333, 1e-12);
  EXPECT_NEAR(p.count_estimate, 1.9946666666666666, 1e-10);
  EXPECT_EQ(p.t_prime, 2);
  EXPECT_NEAR(p.scaled_low, 32 * (0.0623333333333333 - 0.0015), 1e-10);
  EXPECT_NEAR(p.scaled_high, 32 * (0.0623333333333333 + 0.0015), 1e-10);
}

TEST(DiqcPostProcess, SingleAndIdentical) {
  const std::vector<RoundRecord> one{round_with(0.1, 0.102)};
  EXPECT_NEAR(post_process(one, 0.001, 4).count_estimate, 16 * 0.101, 1e-10);
  const std::vector<RoundRecord> same{round_with(0.3, 0.302), round_with(0.3, 0.302), round_with(0.3, 0.302)};
  EXPECT_NEAR(post_process(same, 0.001, 4).count_estimate, 16 * 0.301, 1e-10);
}

TEST(DiqcPostProcess, SkipsWideRoundsAndClamps) {
  const std::vector<RoundRecord> rounds{round_with(0.0, 0.5), round_with(0.0, 0.002)};
  const auto p = post_process(rounds, 0.001, 5);
  EXPECT_NEAR(p.amplitude_estimate, 0.001, 1e-12);
  EXPECT_EQ(p.interval.low, 0.0);
  EXPECT_EQ(p.rounds_used, 1u);
  const std::vector<RoundRecord> wide{round_with(0.0, 0.5)};
  EXPECT_THROW(post_process(wide, 0.001, 5), EstimationIncomplete);
}

TEST(DiqcPostProcess, RoundsHalfAwayFromZero) {
  const std::vector<RoundRecord> rounds{round_with(2.5 / 32 - 0.0005, 2.5 / 32 + 0.0005)};
  EXPECT_EQ(post_process(rounds, 0.001, 5).t_prime, 3);
}

TEST(Diqc, EmptyNode) {
  AnalyticSampler s(0.0);
  const auto run = run_node(DiqcConfig{}, s, 5, 1);
  EXPECT_EQ(run.result.status, RunStatus::success);
  EXPECT_EQ(run.result.t_prime, 0);
  EXPECT_NEAR(run.result.count_estimate, 0.0, 0.05);
}

TEST(Diqc, ExampleNodesCountExactly) {
  for (std::uint64_t t : {2, 1}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      AnalyticSampler s(static_cast<double>(t) / 32);
      const auto run = run_node(DiqcConfig{}, s, 5, seed);
      EXPECT_EQ(run.result.status, RunStatus::success);
      EXPECT_EQ(run.result.t_prime, static_cast<std::int64_t>(t));
    }
  }
}

TEST(Diqc, TraceInvariants) {
  for (double a : {0.0, 1.0 / 64, 0.125, 0.3, 0.5, 0.9, 1.0}) {
    for (double eps : {0.005, 0.001}) {
      DiqcConfig cfg;
      cfg.epsilon_node = eps;
      const auto K_max = k_max_cap(eps);
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        AnalyticSampler s(a);
        const auto run = run_node(cfg, s, 6, seed);
        const auto& res = run.result;
        EXPECT_LE(static_cast<double>(res.counters.oracle_calls_paper), query_bound(eps, cfg.alpha_node));
        EXPECT_LE(std::abs(static_cast<double>(res.t_prime) - res.count_estimate), 2.0 / 3.0);
        if (res.status == RunStatus::success) {
          EXPECT_LE(res.interval.high - res.interval.low, 3 * eps + 1e-15);
        }
        std::uint64_t prev_K = 0, prev_cap = 0;
        double prev_width = 2.0;
        for (const auto& r : run.rounds) {
          EXPECT_EQ(r.K % 2, 1u);
          EXPECT_LT(r.K, K_max);
          EXPECT_GT(r.r, 0.0);
          EXPECT_LE(r.r, 1.0);
          EXPECT_LE(r.shots, r.shots_cap);
          EXPECT_GE(r.theta.low, 0.0);
          EXPECT_LE(r.theta.high, kHalfPi);
          if (prev_K) {
            EXPECT_GE(r.K, 2 * prev_K);
            EXPECT_LE(r.shots_cap, prev_cap);
          }
          if (!r.backtracked) {
            EXPECT_LE(r.amplitude_width(), prev_width + 1e-15);
            prev_width = r.amplitude_width();
          }
          prev_K = r.K;
          prev_cap = r.shots_cap;
        }
      }
    }
  }
}

TEST(Diqc, Deterministic) {
  AnalyticSampler a(0.07), b(0.07);
  const auto x = run_node(DiqcConfig{}, a, 5, 123);
  const auto y = run_node(DiqcConfig{}, b, 5, 123);
  EXPECT_EQ(x.result.count_estimate, y.result.count_estimate);
  EXPECT_EQ(x.result.counters.total_shots, y.result.counters.total_shots);
  EXPECT_EQ(x.rounds.size(), y.rounds.size());
}

TEST(Diqc, StatevectorBackendGivesSameRun) {
  SubOracle sub;
  sub.m = 5;
  sub.marked_local = {8, 16};
  BackendSampler an(sub, Backend::analytic), sv(sub, Backend::statevector);
  DiqcConfig cfg;
  cfg.epsilon_node = 0.005;
  const auto x = run_node(cfg, an, 5, 17);
  const auto y = run_node(cfg, sv, 5, 17);
  EXPECT_EQ(x.result.t_prime, y.result.t_prime);
  EXPECT_EQ(x.result.counters.oracle_calls_paper, y.result.counters.oracle_calls_paper);
}

// The quadrant conversion keeps sin^2 of the rescaled angle within [0, r]
// whenever r comes from the admission test.
TEST(Diqc, RescaledIntervalWithinR) {
  std::uint64_t rescaled_rounds = 0;
  for (double a : {0.02, 0.3, 0.6, 0.95}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      AnalyticSampler s(a);
      DiqcConfig cfg;
      cfg.epsilon_node = 0.002;
      const auto run = run_node(cfg, s, 6, seed);
      for (const auto& r : run.rounds) {
        EXPECT_FALSE(r.backtracked);
        EXPECT_LE(AngleInterval::sin2(r.scaled_theta.high), r.r + 1e-15);
        rescaled_rounds += r.r < 1.0;
      }
    }
  }
  EXPECT_GT(rescaled_rounds, 0u);
}

TEST(Diqc, ConfigGuards) {
  AnalyticSampler s(0.1);
  DiqcConfig bad;
  bad.epsilon_node = 0.0;
  EXPECT_THROW(run_node(bad, s, 5, 1), std::domain_error);
  bad = DiqcConfig{};
  bad.alpha_node = 1.0;
  EXPECT_THROW(run_node(bad, s, 5, 1), std::domain_error);
  bad = DiqcConfig{};
  bad.shots_per_batch = 0;
  EXPECT_THROW(run_node(bad, s, 5, 1), std::domain_error);
}

TEST(Diqc, AmplificationStages) {
  DiqcConfig cfg;
  EXPECT_EQ(amplification_factor(0.05, cfg), 2u);
  EXPECT_EQ(amplification_factor(0.0499, cfg), 3u);
}
