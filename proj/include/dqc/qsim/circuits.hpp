#pragma once

// Exact circuits for the per-node amplitude-amplification operators and the
// bit-vector oracle chains used by the inner-product / Hamming applications.
//
// Counting register (m + 2 qubits, least significant first):
//   qubit 0        rotation qubit, R_r|0> = sqrt(1-r)|0> + sqrt(r)|1>
//   qubit 1        oracle flag, |i'>|0> -> |i'>|chi(i')>
//   qubits 2..m+1  index register i'
// The good pattern "11" is flag = 1 and rotation = 1.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "dqc/oracle.hpp"
#include "dqc/qsim/statevector.hpp"

namespace dqc {

struct CountingLayout {
  static constexpr unsigned rotation_qubit = 0;
  static constexpr unsigned flag_qubit = 1;
  static constexpr unsigned first_index_qubit = 2;
  static constexpr std::size_t good_mask = 0b11;
  static constexpr std::size_t good_value = 0b11;
};

inline double rotation_angle(double r) {
  if (!(r > 0.0 && r <= 1.0)) throw std::domain_error("rotation parameter r must lie in (0, 1]");
  return 2.0 * std::asin(std::sqrt(r));
}

namespace detail {

inline void check_counting_width(const StateVector& state, const SubOracle& sub) {
  if (state.num_qubits() != sub.m + 2) {
    throw std::domain_error("state has " + std::to_string(state.num_qubits()) + " qubits, sub-oracle needs " +
                            std::to_string(sub.m + 2));
  }
}

inline void apply_hadamards(StateVector& state, unsigned first, unsigned width) {
  for (unsigned q = first; q < first + width; ++q) state.apply_h(q);
}

inline void apply_marked_flag(StateVector& state, const SubOracle& sub) {
  state.apply_index_oracle(CountingLayout::first_index_qubit, sub.m, CountingLayout::flag_qubit,
                           [&sub](std::uint64_t i) { return sub.contains(i); });
}

}  // namespace detail

// A_j = (I (x) R_r)(U_chi (x) I)(H^m (x) I_2)
inline void apply_A(StateVector& state, const SubOracle& sub, double r) {
  detail::check_counting_width(state, sub);
  const double angle = rotation_angle(r);
  detail::apply_hadamards(state, CountingLayout::first_index_qubit, sub.m);
  detail::apply_marked_flag(state, sub);
  state.apply_ry(CountingLayout::rotation_qubit, angle);
}

inline void apply_A_dagger(StateVector& state, const SubOracle& sub, double r) {
  detail::check_counting_width(state, sub);
  const double angle = rotation_angle(r);
  state.apply_ry(CountingLayout::rotation_qubit, -angle);
  detail::apply_marked_flag(state, sub);
  detail::apply_hadamards(state, CountingLayout::first_index_qubit, sub.m);
}

// Q_j = -A_j U_0 A_j^dagger U_11
inline void apply_Q(StateVector& state, const SubOracle& sub, double r) {
  detail::check_counting_width(state, sub);
  state.reflect_pattern(CountingLayout::good_mask, CountingLayout::good_value);
  apply_A_dagger(state, sub, r);
  state.reflect_zero();
  apply_A(state, sub, r);
  state.negate();
}

inline StateVector prepare_counting_state(const SubOracle& sub, double r, std::uint64_t grover_power) {
  StateVector state(sub.m + 2);
  apply_A(state, sub, r);
  for (std::uint64_t p = 0; p < grover_power; ++p) apply_Q(state, sub, r);
  return state;
}

inline double prob11(const StateVector& state) {
  return state.probability(CountingLayout::good_mask, CountingLayout::good_value);
}

// ---- application oracle chains ---------------------------------------------

// Inner-product register (m + 3 qubits, least significant first):
//   qubit 0        x AND y result (flag)
//   qubit 1        Bob's y ancilla, returned to |0> and discarded
//   qubit 2        Alice's x qubit, returned to |0> and reused as the rotation qubit
//   qubits 3..m+2  index register i'
struct InnerProductLayout {
  static constexpr unsigned result_qubit = 0;
  static constexpr unsigned y_qubit = 1;
  static constexpr unsigned x_qubit = 2;
  static constexpr unsigned first_index_qubit = 3;
  // x/rotation qubit = 1 and result = 1
  static constexpr std::size_t good_mask = 0b101;
  static constexpr std::size_t good_value = 0b101;
};

namespace detail {

inline void check_chain_inputs(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, unsigned k,
                               std::uint64_t offset, unsigned m, const StateVector& state, unsigned extra) {
  if (x.size() != y.size()) throw std::domain_error("bit vectors differ in length");
  const unsigned n = exact_log2(x.size());
  if (k < 1 || k >= n || n - k != m) throw std::domain_error("chain width does not match n - k");
  if (offset >= (std::uint64_t{1} << k)) throw std::domain_error("node offset outside [0, 2^k)");
  if (state.num_qubits() != m + extra) throw std::domain_error("chain register width mismatch");
}

inline void apply_bit_oracle(StateVector& state, std::span<const std::uint8_t> bits, unsigned k, std::uint64_t offset,
                             unsigned first, unsigned width, unsigned target) {
  state.apply_index_oracle(first, width, target,
                           [bits, k, offset](std::uint64_t i) { return bits[(i << k) + offset] != 0; });
}

}  // namespace detail

// U_x ; U_y ; CCNOT(x, y -> result) ; U_y ; U_x.  Net effect |i'>|0>|0>|0> -> |i'>|0>|0>|x_g AND y_g>.
inline void apply_inner_product_chain(StateVector& state, std::span<const std::uint8_t> x,
                                      std::span<const std::uint8_t> y, unsigned k, std::uint64_t offset, unsigned m) {
  using L = InnerProductLayout;
  detail::check_chain_inputs(x, y, k, offset, m, state, 3);
  detail::apply_bit_oracle(state, x, k, offset, L::first_index_qubit, m, L::x_qubit);
  detail::apply_bit_oracle(state, y, k, offset, L::first_index_qubit, m, L::y_qubit);
  state.apply_ccnot(L::x_qubit, L::y_qubit, L::result_qubit);
  detail::apply_bit_oracle(state, y, k, offset, L::first_index_qubit, m, L::y_qubit);
  detail::apply_bit_oracle(state, x, k, offset, L::first_index_qubit, m, L::x_qubit);
}

inline StateVector prepare_inner_product_A(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, unsigned k,
                                           std::uint64_t offset, double r) {
  using L = InnerProductLayout;
  const unsigned m = exact_log2(x.size()) - k;
  StateVector state(m + 3);
  detail::apply_hadamards(state, L::first_index_qubit, m);
  apply_inner_product_chain(state, x, y, k, offset, m);
  state.apply_ry(L::x_qubit, rotation_angle(r));
  return state;
}

// Hamming register uses the counting layout: qubit 0 carries y then the
// rotation, qubit 1 carries x then x XOR y.
// U_x(->q1) ; U_y(->q0) ; CNOT(q0 -> q1) ; U_y(->q0).  Net |i'>|0>|0> -> |i'>|x_g XOR y_g>|0>.
inline void apply_hamming_chain(StateVector& state, std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                                unsigned k, std::uint64_t offset, unsigned m) {
  using L = CountingLayout;
  detail::check_chain_inputs(x, y, k, offset, m, state, 2);
  detail::apply_bit_oracle(state, x, k, offset, L::first_index_qubit, m, L::flag_qubit);
  detail::apply_bit_oracle(state, y, k, offset, L::first_index_qubit, m, L::rotation_qubit);
  state.apply_cnot(L::rotation_qubit, L::flag_qubit);
  detail::apply_bit_oracle(state, y, k, offset, L::first_index_qubit, m, L::rotation_qubit);
}

inline StateVector prepare_hamming_A(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, unsigned k,
                                     std::uint64_t offset, double r) {
  using L = CountingLayout;
  const unsigned m = exact_log2(x.size()) - k;
  StateVector state(m + 2);
  detail::apply_hadamards(state, L::first_index_qubit, m);
  apply_hamming_chain(state, x, y, k, offset, m);
  state.apply_ry(L::rotation_qubit, rotation_angle(r));
  return state;
}

}  // namespace dqc
