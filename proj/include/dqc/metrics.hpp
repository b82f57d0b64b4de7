#pragma once

// Closed-form resource arithmetic: depth caps, shot caps, query bounds and the
// gate-count comparison against phase-estimation counting.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqc {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline double sin_pi_21() { return std::sin(std::numbers::pi / 21.0); }
inline double sin_8pi_21() { return std::sin(8.0 * std::numbers::pi / 21.0); }

}  // namespace detail

// c = 1 / (sin^2(pi/21) sin^2(8pi/21)) ~ 51.95
inline double shot_constant() {
  const double p = detail::sin_pi_21() * detail::sin_8pi_21();
  return 1.0 / (p * p);
}

// Half-width of the Chernoff interval reached after a full shot budget.
inline double full_budget_half_width() { return detail::sin_pi_21() * detail::sin_8pi_21() / 2.0; }

// floor(pi / (8 eps) - 1/2)
inline std::uint64_t k_max_power(double epsilon_node) {
  if (!(epsilon_node > 0.0)) throw std::domain_error("epsilon must be positive");
  const double v = std::floor(std::numbers::pi / (8.0 * epsilon_node) - 0.5);
  return v <= 0.0 ? 0 : static_cast<std::uint64_t>(v);
}

// K_max = 2 floor(pi/(8 eps) - 1/2) + 1
inline std::uint64_t k_max_cap(double epsilon_node) { return 2 * k_max_power(epsilon_node) + 1; }

// N_max = ceil(2c ln(2/alpha))
inline std::uint64_t shots_cap(double alpha_round) {
  if (!(alpha_round > 0.0 && alpha_round < 1.0)) throw std::domain_error("round significance must lie in (0, 1)");
  return static_cast<std::uint64_t>(std::ceil(2.0 * shot_constant() * std::log(2.0 / alpha_round)));
}

// Upper bound on sum_i k_i N_i for one node:
// (2c floor(pi/(8 eps) - 1/2) + c) [3 ln 4 + (9/4) ln 3 + (7/2) ln(1/alpha)]
inline double query_bound(double epsilon_node, double alpha_node) {
  if (!(alpha_node > 0.0 && alpha_node < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  const double c = shot_constant();
  const double kmax = static_cast<double>(k_max_power(epsilon_node));
  return (2.0 * c * kmax + c) *
         (3.0 * std::log(4.0) + 2.25 * std::log(3.0) + 3.5 * std::log(1.0 / alpha_node));
}

// ---- gate counts (exact) ------------------------------------------------------

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

// 4^{n+1} + 4^{n+1} - 2^{n+2}
inline BigInt gates_controlled_Q(unsigned n) { return pow2(2 * n + 3) - pow2(n + 2); }

// 2^{2(n-k)+5} - 2^{n-k+3}
inline BigInt gates_Qj(unsigned n, unsigned k) {
  if (k >= n) throw std::domain_error("gates_Qj needs k < n");
  const unsigned m = n - k;
  return pow2(2 * m + 5) - pow2(m + 3);
}

// A_j costs the same as one Q_j in this accounting.
inline BigInt gates_Aj(unsigned n, unsigned k) { return gates_Qj(n, k); }

// (2^m - 1)(4^{n+1} + 4^{n+1} - 2^{n+2}) + n + (m^2 + m)/2
inline BigInt gates_counting_circuit(unsigned n, unsigned m) {
  return (pow2(m) - 1) * gates_controlled_Q(n) + n + BigInt(m) * (m + 1) / 2;
}

// Left side of the comparison: (n^2 + 7n + 4)/2 + 2^{n+2}(4^{n+1} - 2^{n+2} + 1)
inline BigInt phase_counting_gates(unsigned n) {
  return (BigInt(n) * n + 7 * n + 4) / 2 + pow2(n + 2) * (pow2(2 * n + 2) - pow2(n + 2) + 1);
}

// floor(3 * 2^{n-3} pi - 1/2): the power cap when eps_j = 1/(3 * 2^n).
inline std::uint64_t half_error_k_max(unsigned n) {
  if (n < 3) throw std::domain_error("table comparison needs n >= 3");
  return static_cast<std::uint64_t>(std::floor(3.0 * std::ldexp(1.0, static_cast<int>(n) - 3) * std::numbers::pi - 0.5));
}

// Decides  L > P (3 * 2^{n-3} pi + 1/2)  with P = gates_Qj(n, k), exactly.
// Equivalent to  2(L - P/2) / (6 * 2^{n-3} P) > pi; the rational left side is
// compared against 19-digit rational bounds on pi.
inline bool node_beats_phase_counting(unsigned n, unsigned k) {
  if (n < 3 || k < 1 || k >= n) throw std::domain_error("table comparison needs n >= 3 and 1 <= k < n");
  const BigInt L = phase_counting_gates(n);
  const BigInt P = gates_Qj(n, k);
  const BigInt num = 2 * L - P;                 // 2(L - P/2)
  const BigInt den = 6 * pow2(n - 3) * P;       // 2 * 3 * 2^{n-3} * P
  const BigInt pi_hi_num("3141592653589793239");  // > pi
  const BigInt pi_lo_num("3141592653589793238");  // < pi
  const BigInt scale("1000000000000000000");
  if (num * scale > pi_hi_num * den) return true;
  if (num * scale <= pi_lo_num * den) return false;
  throw std::runtime_error("table comparison undecided at 19-digit precision of pi");
}

struct ResourceReport {
  std::string context;
  std::uint64_t qubits = 0;
  BigInt gate_count = 0;
  double max_Q_depth = 0.0;
  double query_bound = 0.0;
};

// Both rows of the qubits / gates / depth comparison for an error of 1/2 at n index bits.
inline std::vector<ResourceReport> resource_comparison(unsigned n, unsigned k) {
  std::vector<ResourceReport> rows;
  rows.push_back({"phase-estimation counting", 2ull * n + 1, phase_counting_gates(n), std::ldexp(1.0, static_cast<int>(n)), 0.0});
  const std::uint64_t kmax = half_error_k_max(n);
  const BigInt per_q = gates_Qj(n, k);
  const double depth_cap = 3.0 * std::ldexp(1.0, static_cast<int>(n) - 3) * std::numbers::pi - 0.5;
  const double eps_j = 1.0 / (3.0 * std::ldexp(1.0, static_cast<int>(n)));
  rows.push_back({"distributed node, Q_j^kmax", n - k + 2ull, per_q * kmax, depth_cap, 0.0});
  rows.push_back({"distributed node, A_j + Q_j^kmax", n - k + 2ull, per_q * kmax + gates_Aj(n, k), depth_cap, 0.0});
  // The query bound needs an alpha; report it at alpha_j = 3/4 - 6/pi^2 (success probability 8/pi^2).
  const double alpha = 0.75 - 6.0 / (std::numbers::pi * std::numbers::pi);
  rows.back().query_bound = query_bound(eps_j, alpha);
  rows[1].query_bound = rows.back().query_bound;
  return rows;
}

// ---- application comparisons (formulas only) --------------------------------

struct ApplicationComparison {
  double qubit_reduction = 0.0;
  // Depth saved, in units of d(Q_j), on top of the whole d(QFT) term.
  double depth_reduction_in_Qj = 0.0;
};

inline ApplicationComparison inner_product_comparison(unsigned n, unsigned k) {
  return {static_cast<double>(n + k) - 1.0,
          std::ldexp(1.0, static_cast<int>(n) + 1) - 3.0 * std::ldexp(1.0, static_cast<int>(n) - 3) * std::numbers::pi - 1.5};
}

inline ApplicationComparison hamming_comparison(unsigned n, unsigned k) {
  return {static_cast<double>(n) / 2.0 + k - 1.0,
          std::sqrt(std::ldexp(1.0, static_cast<int>(n))) -
              3.0 * std::sqrt(std::ldexp(1.0, static_cast<int>(n) - 8)) * std::numbers::pi - 1.5};
}

}  // namespace dqc
