#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dqc/interval.hpp"

using namespace dqc;

TEST(Chernoff, HalfWidthAndInterval) {
  EXPECT_NEAR(chernoff_half_width(100, 0.05), 0.135810151574062, 1e-14);
  const auto iv = chernoff_interval(0.5, 100, 0.05);
  EXPECT_NEAR(iv.low, 0.364189848425938, 1e-14);
  EXPECT_NEAR(iv.high, 0.635810151574062, 1e-14);
}

TEST(Chernoff, Clamping) {
  const auto top = chernoff_interval(1.0, 100000000, 0.05);
  EXPECT_EQ(top.high, 1.0);
  const auto zero = chernoff_interval(0.0, 50, 0.5);
  EXPECT_EQ(zero.low, 0.0);
  EXPECT_NEAR(zero.high, std::sqrt(std::log(4.0) / 100.0), 1e-15);
  EXPECT_NEAR(zero.high, 0.117741002251547, 1e-14);
}

TEST(Chernoff, Guards) {
  EXPECT_THROW(chernoff_half_width(0, 0.05), std::domain_error);
  EXPECT_THROW(chernoff_half_width(10, 0.0), std::domain_error);
  EXPECT_THROW(chernoff_half_width(10, 1.0), std::domain_error);
}

TEST(Gamma, QuadrantConversion) {
  const auto full = gamma_from_interval(0.0, 1.0, 0);
  EXPECT_DOUBLE_EQ(full.low, 0.0);
  EXPECT_DOUBLE_EQ(full.high, std::numbers::pi / 2);
  const auto odd = gamma_from_interval(0.25, 0.5, 1);
  EXPECT_NEAR(odd.low, std::numbers::pi / 4, 1e-15);
  EXPECT_NEAR(odd.high, std::numbers::pi / 3, 1e-15);
  const auto even = gamma_from_interval(0.1, 0.2, 2);
  EXPECT_NEAR(even.low, 0.321750554396642, 1e-14);
  EXPECT_NEAR(even.high, 0.463647609000806, 1e-14);
  EXPECT_THROW(gamma_from_interval(0.5, 0.4, 0), std::domain_error);
}

TEST(Quadrant, IndexAndMembership) {
  EXPECT_EQ(quadrant_index(3, 0.1), 0u);
  EXPECT_EQ(quadrant_index(127, 0.1), 8u);
  EXPECT_TRUE(same_quadrant(3, 0.1, 0.5));
  EXPECT_FALSE(same_quadrant(5, 0.1, 0.5));
  // Exactly on a boundary from either side.
  EXPECT_TRUE(same_quadrant(9, std::numbers::pi / 6, 0.6));
  EXPECT_EQ(quadrant_index(9, (std::numbers::pi / 2 + 0.0) / 3), 3u);
  EXPECT_TRUE(same_quadrant(3, 0.0, std::numbers::pi / 6));
}

TEST(Quadrant, RoundTrip) {
  for (std::uint64_t K : {1, 3, 9, 27, 101}) {
    for (double theta : {0.01, 0.3, 0.7, 1.2, 1.5}) {
      const auto R = quadrant_index(K, theta);
      const double a = AngleInterval::sin2(K * theta);
      const auto back = angles_from_quadrant(K, R, gamma_from_interval(a, a, R));
      EXPECT_NEAR(back.low, theta, 1e-9) << K << " " << theta;
    }
  }
}
