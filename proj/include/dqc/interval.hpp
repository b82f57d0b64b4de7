#pragma once

// Confidence-interval machinery shared by the MIQAE baseline and the DIQC node.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace dqc {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

struct AngleInterval {
  double low = 0.0;
  double high = kHalfPi;

  double width() const { return high - low; }
  // Width of [sin^2 low, sin^2 high].
  double amplitude_width() const { return sin2(high) - sin2(low); }
  static double sin2(double x) {
    const double s = std::sin(x);
    return s * s;
  }
};

struct ProbabilityInterval {
  double low = 0.0;
  double high = 1.0;
};

// Hoeffding half-width sqrt(ln(2/alpha) / (2N)).
inline double chernoff_half_width(std::uint64_t samples, double alpha) {
  if (samples == 0) throw std::domain_error("confidence interval needs at least one sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("significance level must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(samples)));
}

inline ProbabilityInterval chernoff_interval(double a_hat, std::uint64_t samples, double alpha) {
  const double eps = chernoff_half_width(samples, alpha);
  return {std::max(0.0, a_hat - eps), std::min(1.0, a_hat + eps)};
}

// Offsets of the amplified angle inside quadrant R, from bounds on sin^2.
// Even quadrants: sin^2 increases with the angle; odd quadrants: it decreases.
inline AngleInterval gamma_from_interval(double a_min, double a_max, std::uint64_t quadrant) {
  if (!(0.0 <= a_min && a_min <= a_max && a_max <= 1.0)) throw std::domain_error("invalid probability interval");
  const double lo = std::asin(std::sqrt(a_min));
  const double hi = std::asin(std::sqrt(a_max));
  if (quadrant % 2 == 0) return {lo, hi};
  return {kHalfPi - hi, kHalfPi - lo};
}

// An angle built to sit exactly on a quadrant boundary (e.g. (R pi/2 + 0)/K)
// may land a few ulps to either side of it once rescaled.
inline constexpr double kQuadrantEdgeSlack = 1e-12;

// floor(2 K theta / pi)
inline std::uint64_t quadrant_index(std::uint64_t K, double theta) {
  const double x = 2.0 * static_cast<double>(K) * theta / std::numbers::pi;
  return static_cast<std::uint64_t>(std::floor(x + kQuadrantEdgeSlack));
}

// floor(2 K lo / pi) == ceil(2 K hi / pi) - 1, i.e. [K lo, K hi] lies in one quadrant.
inline bool same_quadrant(std::uint64_t K, double lo, double hi) {
  const double scale = 2.0 * static_cast<double>(K) / std::numbers::pi;
  return std::floor(scale * lo + kQuadrantEdgeSlack) == std::ceil(scale * hi - kQuadrantEdgeSlack) - 1.0;
}

// Recover [theta_l, theta_u] from the quadrant offsets measured at amplification K.
inline AngleInterval angles_from_quadrant(std::uint64_t K, std::uint64_t quadrant, const AngleInterval& gamma) {
  const double base = static_cast<double>(quadrant) * kHalfPi;
  const double k = static_cast<double>(K);
  return {(base + gamma.low) / k, (base + gamma.high) / k};
}

}  // namespace dqc
