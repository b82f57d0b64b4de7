#pragma once

// Dense statevector with the handful of transforms the counting circuits need.
// Qubit q is bit q of the basis index (qubit 0 is least significant).

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqc {

inline constexpr unsigned kMaxStatevectorQubits = 22;

class StateVector {
 public:
  using Amplitude = std::complex<double>;

  explicit StateVector(unsigned num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxStatevectorQubits) {
      throw std::domain_error("statevector backend supports 1.." + std::to_string(kMaxStatevectorQubits) +
                              " qubits, requested " + std::to_string(num_qubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
  }

  unsigned num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude amplitude(std::size_t basis) const { return amps_.at(basis); }

  void set_basis_state(std::size_t basis) {
    if (basis >= amps_.size()) throw std::domain_error("basis state out of range");
    std::fill(amps_.begin(), amps_.end(), Amplitude{0.0, 0.0});
    amps_[basis] = 1.0;
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  // Total probability of basis states whose bits under `mask` equal `value`.
  double probability(std::size_t mask, std::size_t value) const {
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & mask) == value) p += std::norm(amps_[i]);
    }
    return p;
  }

  void apply_h(unsigned q) {
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    const double s = std::numbers::sqrt2 / 2.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (i & bit) continue;
      const Amplitude a0 = amps_[i];
      const Amplitude a1 = amps_[i | bit];
      amps_[i] = s * (a0 + a1);
      amps_[i | bit] = s * (a0 - a1);
    }
  }

  void apply_x(unsigned q) {
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
    }
  }

  // RY(angle) = [[cos(a/2), -sin(a/2)], [sin(a/2), cos(a/2)]]
  void apply_ry(unsigned q, double angle) {
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (i & bit) continue;
      const Amplitude a0 = amps_[i];
      const Amplitude a1 = amps_[i | bit];
      amps_[i] = c * a0 - s * a1;
      amps_[i | bit] = s * a0 + c * a1;
    }
  }

  void apply_cnot(unsigned control, unsigned target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::domain_error("CNOT control equals target");
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
    }
  }

  void apply_ccnot(unsigned c1, unsigned c2, unsigned target) {
    check_qubit(c1);
    check_qubit(c2);
    check_qubit(target);
    if (c1 == c2 || c1 == target || c2 == target) throw std::domain_error("CCNOT qubits must be distinct");
    const std::size_t cmask = (std::size_t{1} << c1) | (std::size_t{1} << c2);
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & cmask) == cmask && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
    }
  }

  // |i>|b> -> |i>|b xor f(i)> where i is read from `width` qubits starting at `first`.
  void apply_index_oracle(unsigned first, unsigned width, unsigned target, const std::function<bool(std::uint64_t)>& f) {
    if (width == 0 || first + width > num_qubits_) throw std::domain_error("index register out of range");
    check_qubit(target);
    if (target >= first && target < first + width) throw std::domain_error("oracle target inside index register");
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t imask = (std::size_t{1} << width) - 1;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (i & tbit) continue;
      if (f((i >> first) & imask)) std::swap(amps_[i], amps_[i | tbit]);
    }
  }

  // I - 2|0><0|
  void reflect_zero() { amps_[0] = -amps_[0]; }

  // I - 2 * sum over basis states with (i & mask) == value of |i><i|
  void reflect_pattern(std::size_t mask, std::size_t value) {
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & mask) == value) amps_[i] = -amps_[i];
    }
  }

  void negate() {
    for (auto& a : amps_) a = -a;
  }

 private:
  void check_qubit(unsigned q) const {
    if (q >= num_qubits_) throw std::domain_error("qubit index " + std::to_string(q) + " out of range");
  }

  unsigned num_qubits_;
  std::vector<Amplitude> amps_;
};

}  // namespace dqc
