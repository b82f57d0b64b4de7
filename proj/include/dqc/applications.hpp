#pragma once

// Inner product and Hamming distance of two bit vectors held by different
// parties, estimated by counting over stride sub-oracles. The quantum traffic
// is booked in a ledger per application of A_j'.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqc/coordinator.hpp"
#include "dqc/diqc.hpp"
#include "dqc/metrics.hpp"
#include "dqc/oracle.hpp"

namespace dqc {

enum class Problem { inner_product, hamming };

inline const char* to_string(Problem p) { return p == Problem::inner_product ? "inner-product" : "hamming"; }

// Qubits crossing between the parties for one application of A_j'.
// Inner product: index, x-ancilla and result travel out and back (2(n-k+1) + 1).
// Hamming: Bob finishes alone after one one-way send (n-k+1).
inline std::uint64_t qubits_per_application(Problem p, unsigned n, unsigned k) {
  if (k < 1 || k >= n) throw std::domain_error("need 1 <= k < n");
  const std::uint64_t m = n - k;
  return p == Problem::inner_product ? 2 * m + 3 : m + 1;
}

struct CommunicationLedger {
  std::uint64_t qubits_per_A = 0;
  std::uint64_t A_invocations = 0;
  std::uint64_t total_qubits = 0;
  std::uint64_t classical_bits = 0;

  void book(std::uint64_t invocations) {
    A_invocations += invocations;
    total_qubits = qubits_per_A * A_invocations;
  }
};

inline constexpr std::uint64_t kResultBitsPerNode = 64;

// 2^k (4n - 4k + 6) M  or  2^k (2n - 2k + 2) M,  M = query_bound(eps_j, alpha_j).
inline double communication_bound(Problem p, unsigned n, unsigned k, double epsilon_node, double alpha_node) {
  const double per_node = 2.0 * static_cast<double>(qubits_per_application(p, n, k)) * query_bound(epsilon_node, alpha_node);
  return std::ldexp(per_node, static_cast<int>(k));
}

struct ApplicationConfig {
  unsigned k = 1;
  double epsilon = 0.01;
  double alpha = 0.05;
  std::uint64_t shots_per_batch = 1;
  std::uint64_t seed = 0;
  Backend backend = Backend::analytic;
  ExecutionMode mode = ExecutionMode::concurrent;

  void validate(unsigned n) const {
    if (!(epsilon > 0.0 && epsilon <= 0.01)) throw std::domain_error("epsilon must lie in (0, 0.01]");
    if (!(alpha > 0.0 && alpha < 0.75)) throw std::domain_error("alpha must lie in (0, 3/4)");
    if (k < 1 || k >= n) throw std::domain_error("need 1 <= k < n");
    if (shots_per_batch == 0) throw std::domain_error("shots per batch must be positive");
  }

  double epsilon_node() const { return std::ldexp(epsilon, -static_cast<int>(k)); }
  double alpha_node() const { return std::ldexp(alpha, -static_cast<int>(k)); }
};

struct ApplicationResult {
  Problem problem = Problem::inner_product;
  unsigned n = 0;
  unsigned k = 0;
  double estimate = 0.0;        // sum of unrounded node counts / 2^n
  double scaled_estimate = 0.0; // sum of unrounded node counts
  double error_bound = 0.0;     // 2^{-k-1} 3 eps
  double confidence = 0.0;
  double communication_bound = 0.0;
  RunStatus status = RunStatus::success;
  CommunicationLedger ledger;
  ResourceCounters totals;
  std::vector<NodeRun> nodes;
};

inline ApplicationResult estimate_bitwise(Problem problem, BitString x, BitString y, const ApplicationConfig& config) {
  if (x.size() != y.size()) throw std::domain_error("bit vectors differ in length");
  x = pad_to_power_of_two(std::move(x));
  y = pad_to_power_of_two(std::move(y));
  const unsigned n = exact_log2(x.size());
  config.validate(n);

  std::vector<SubOracle> subs;
  for (Index j = 0; j < (Index{1} << config.k); ++j) {
    subs.push_back(problem == Problem::inner_product ? inner_product_suboracle(x, y, config.k, j)
                                                     : hamming_suboracle(x, y, config.k, j));
  }
  DiqcConfig node;
  node.epsilon_node = config.epsilon_node();
  node.alpha_node = config.alpha_node();
  node.shots_per_batch = config.shots_per_batch;

  ApplicationResult out;
  out.problem = problem;
  out.n = n;
  out.k = config.k;
  out.nodes = run_nodes(subs, node, config.backend, config.seed, config.mode);
  out.ledger.qubits_per_A = qubits_per_application(problem, n, config.k);
  for (const auto& run : out.nodes) {
    out.scaled_estimate += run.result.count_estimate;
    out.totals += run.result.counters;
    out.ledger.book(run.result.counters.oracle_calls_physical);
    out.ledger.classical_bits += kResultBitsPerNode;
    if (run.result.status != RunStatus::success) out.status = RunStatus::failed;
  }
  out.estimate = std::ldexp(out.scaled_estimate, -static_cast<int>(n));
  out.error_bound = std::ldexp(3.0 * config.epsilon, -static_cast<int>(config.k) - 1);
  out.confidence = 1.0 - 4.0 / 3.0 * config.alpha;
  out.communication_bound = communication_bound(problem, n, config.k, node.epsilon_node, node.alpha_node);
  return out;
}

inline ApplicationResult estimate_inner_product(BitString x, BitString y, const ApplicationConfig& config) {
  return estimate_bitwise(Problem::inner_product, std::move(x), std::move(y), config);
}

inline ApplicationResult estimate_hamming(BitString x, BitString y, const ApplicationConfig& config) {
  return estimate_bitwise(Problem::hamming, std::move(x), std::move(y), config);
}

// (1/2^n) sum x_i y_i  and  popcount(x xor y) / 2^n, after padding.
inline double exact_inner_product(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw std::domain_error("bit vectors differ in length");
  const auto len = pad_to_power_of_two(x).size();
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < x.size(); ++i) hits += (x[i] && y[i]) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(len);
}

inline double exact_hamming_fraction(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw std::domain_error("bit vectors differ in length");
  const auto len = pad_to_power_of_two(x).size();
  std::uint64_t diff = 0;
  for (std::size_t i = 0; i < x.size(); ++i) diff += ((x[i] != 0) != (y[i] != 0)) ? 1 : 0;
  return static_cast<double>(diff) / static_cast<double>(len);
}

}  // namespace dqc
