#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dqc/metrics.hpp"
#include "dqc/miqae.hpp"

using namespace dqc;

namespace {

// Descending scan over every odd K in [3 K_i, floor(pi / (2w))].
std::uint64_t scan_next_k(std::uint64_t k_i, double lo, double hi) {
  const std::uint64_t K_i = 2 * k_i + 1;
  const auto top = static_cast<std::uint64_t>(std::floor(std::numbers::pi / (2.0 * (hi - lo))));
  for (std::uint64_t K = top; K >= 3 * K_i && K >= 1; --K) {
    if (K % 2 == 0) continue;
    const double s = 2.0 * static_cast<double>(K) / std::numbers::pi;
    if (std::floor(s * lo) == std::ceil(s * hi) - 1) return (K - 1) / 2;
  }
  return k_i;
}

}  // namespace

TEST(MiqaeNextK, Examples) {
  EXPECT_EQ(find_next_k_miqae(0, 0.1, 0.5), 1u);
  EXPECT_EQ(find_next_k_miqae(50, 0.3, 0.31), 50u);
  EXPECT_EQ(find_next_k_miqae(0, 0.01, 0.02), scan_next_k(0, 0.01, 0.02));
  EXPECT_THROW(find_next_k_miqae(0, 0.2, 0.2), std::domain_error);
}

TEST(MiqaeNextK, AgreesWithScan) {
  Rng rng(4);
  for (int i = 0; i < 5000; ++i) {
    const double lo = rng.uniform() * 1.5;
    const double hi = std::min(kHalfPi, lo + 0.0005 + rng.uniform() * 0.2);
    const std::uint64_t k = rng.next_u64() % 20;
    EXPECT_EQ(find_next_k_miqae(k, lo, hi), scan_next_k(k, lo, hi)) << lo << " " << hi << " " << k;
  }
}

TEST(Miqae, ZeroAmplitude) {
  AnalyticSampler s(0.0);
  const auto r = run_miqae({0.001, 0.05, 1}, s, 1);
  EXPECT_EQ(r.status, RunStatus::success);
  EXPECT_EQ(r.interval.low, 0.0);
  EXPECT_LT(r.interval.high, 0.01);
}

TEST(Miqae, CoversSmallAmplitude) {
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    AnalyticSampler s(1.0 / 64);
    const auto r = run_miqae({0.001, 0.05, 1}, s, seed);
    covered += r.interval.low <= 1.0 / 64 && 1.0 / 64 <= r.interval.high;
  }
  EXPECT_GE(covered, 90);
}

TEST(Miqae, InvariantsAndBound) {
  const MiqaeConfig cfg{0.01, 0.05, 1};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    AnalyticSampler s(0.5);
    const auto r = run_miqae(cfg, s, seed);
    EXPECT_LE(static_cast<double>(r.counters.oracle_calls_paper), query_bound(cfg.epsilon, cfg.alpha));
    EXPECT_GE(r.interval.low, 0.0);
    EXPECT_LE(r.interval.high, 1.0);
    EXPECT_LT(static_cast<double>(r.counters.max_K), std::numbers::pi / (4 * cfg.epsilon));
    std::uint64_t prev_K = 0;
    for (const auto& round : r.rounds) {
      EXPECT_EQ(round.K % 2, 1u);
      EXPECT_LE(round.shots, round.shots_cap);
      if (prev_K) {
        EXPECT_GE(round.K, 3 * prev_K);
      }
      prev_K = round.K;
    }
    if (r.status == RunStatus::success) {
      EXPECT_LE(r.theta.width(), 2 * cfg.epsilon);
    }
  }
}

TEST(Miqae, Deterministic) {
  AnalyticSampler a(0.2), b(0.2);
  const auto x = run_miqae({0.002, 0.05, 3}, a, 99);
  const auto y = run_miqae({0.002, 0.05, 3}, b, 99);
  EXPECT_EQ(x.interval.low, y.interval.low);
  EXPECT_EQ(x.counters.oracle_calls_paper, y.counters.oracle_calls_paper);
}

TEST(Miqae, ConfigGuards) {
  AnalyticSampler s(0.2);
  EXPECT_THROW(run_miqae({0.0, 0.05, 1}, s, 1), std::domain_error);
  EXPECT_THROW(run_miqae({0.01, 1.0, 1}, s, 1), std::domain_error);
  EXPECT_THROW(run_miqae({0.01, 0.05, 0}, s, 1), std::domain_error);
}
