#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace dqc {

// Closed-form description of A_j|0> restricted to the two-dimensional
// amplification subspace. Only the good-state weight r*t/2^m matters.
struct AmplitudeModel {
  unsigned m = 1;
  std::uint64_t t_local = 0;
  double r = 1.0;

  void validate() const {
    if (m == 0 || m > 62) throw std::domain_error("sub-register width out of range");
    if (t_local > (std::uint64_t{1} << m)) throw std::domain_error("more marked elements than indices");
    if (!(r > 0.0 && r <= 1.0)) throw std::domain_error("rotation parameter r must lie in (0, 1]");
  }

  // a_j = t/2^m
  double amplitude() const { return static_cast<double>(t_local) / std::ldexp(1.0, static_cast<int>(m)); }

  // sin(theta) = sqrt(t/2^m)
  double theta() const { return std::asin(std::sqrt(amplitude())); }

  // sin(theta~) = sqrt(r t/2^m)
  double theta_tilde() const { return std::asin(std::sqrt(r * amplitude())); }
};

// P[last two qubits = 11] after Q^power A |0>.
inline double prob11_analytic(const AmplitudeModel& model, std::uint64_t grover_power) {
  model.validate();
  const double s = std::sin(static_cast<double>(2 * grover_power + 1) * model.theta_tilde());
  return s * s;
}

// Same quantity for a raw amplitude a in [0, 1].
inline double prob11_from_amplitude(double amplitude, double r, std::uint64_t grover_power) {
  const double s = std::sin(static_cast<double>(2 * grover_power + 1) * std::asin(std::sqrt(r * amplitude)));
  return s * s;
}

}  // namespace dqc
