#pragma once

// Splits a counting problem over 2^k virtual nodes and sums their integer estimates.

#include <cmath>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <vector>

#include "dqc/counters.hpp"
#include "dqc/diqc.hpp"
#include "dqc/oracle.hpp"
#include "dqc/qsim/sampler.hpp"

namespace dqc {

enum class ExecutionMode { sequential, concurrent };

struct DistributedConfig {
  unsigned k = 1;
  double epsilon = 0.002;
  double alpha = 0.1;
  PartitionScheme scheme = PartitionScheme::prefix;
  std::uint64_t shots_per_batch = 1;
  std::uint64_t base_seed = 0;
  Backend backend = Backend::analytic;
  ExecutionMode mode = ExecutionMode::concurrent;

  double epsilon_node() const { return std::ldexp(epsilon, -static_cast<int>(k)); }
  double alpha_node() const { return std::ldexp(alpha, -static_cast<int>(k)); }

  DiqcConfig node_config() const {
    DiqcConfig c;
    c.epsilon_node = epsilon_node();
    c.alpha_node = alpha_node();
    c.shots_per_batch = shots_per_batch;
    return c;
  }

  void validate(unsigned n) const {
    if (!(epsilon > 0.0 && epsilon <= 0.01)) throw std::domain_error("epsilon must lie in (0, 0.01]");
    if (!(alpha > 0.0 && alpha < 0.75)) throw std::domain_error("alpha must lie in (0, 3/4)");
    if (k < 1 || k >= n) throw std::domain_error("need 1 <= k < n");
    if (shots_per_batch == 0) throw std::domain_error("shots per batch must be positive");
  }
};

struct AggregateResult {
  unsigned n = 0;
  unsigned k = 0;
  double epsilon = 0.0;
  double alpha = 0.0;
  std::int64_t t_prime = 0;
  double error_bound = 0.0;
  double confidence = 0.0;
  RunStatus status = RunStatus::success;
  ResourceCounters totals;
  std::vector<NodeRun> nodes;  // ordered by node id
};

// 2^{n-k-1} 3 eps + 2^{k+1} / 3
inline double aggregate_error_bound(unsigned n, unsigned k, double epsilon) {
  return std::ldexp(3.0 * epsilon, static_cast<int>(n - k) - 1) + std::ldexp(1.0, static_cast<int>(k) + 1) / 3.0;
}

inline AggregateResult aggregate(std::vector<NodeRun> nodes, unsigned n, unsigned k) {
  if (nodes.empty()) throw std::domain_error("nothing to aggregate");
  if (k < 1 || k >= n) throw std::domain_error("need 1 <= k < n");
  if (nodes.size() != (std::size_t{1} << k)) throw std::domain_error("expected 2^k node results");
  const auto& first = nodes.front().result;
  AggregateResult out;
  out.n = n;
  out.k = k;
  for (const auto& node : nodes) {
    const auto& r = node.result;
    if (r.m != n - k || r.epsilon_node != first.epsilon_node || r.alpha_node != first.alpha_node) {
      throw std::domain_error("node results come from different configurations");
    }
    out.t_prime += r.t_prime;
    out.totals += r.counters;
    if (r.status != RunStatus::success) out.status = RunStatus::failed;
  }
  out.epsilon = std::ldexp(first.epsilon_node, static_cast<int>(k));
  out.alpha = std::ldexp(first.alpha_node, static_cast<int>(k));
  out.error_bound = aggregate_error_bound(n, k, out.epsilon);
  out.confidence = 1.0 - 4.0 / 3.0 * out.alpha;
  out.nodes = std::move(nodes);
  return out;
}

inline NodeRun run_suboracle(const SubOracle& sub, const DiqcConfig& node_config, Backend backend, std::uint64_t seed) {
  BackendSampler sampler(sub, backend);
  return run_node(node_config, sampler, sub.m, seed, sub.node_id);
}

// Runs every sub-oracle with seed base_seed + j. Each node owns its RNG, so
// the schedule never changes the outcome.
inline std::vector<NodeRun> run_nodes(const std::vector<SubOracle>& subs, const DiqcConfig& node_config, Backend backend,
                                      std::uint64_t base_seed, ExecutionMode mode) {
  std::vector<NodeRun> runs;
  runs.reserve(subs.size());
  if (mode == ExecutionMode::sequential) {
    for (const auto& sub : subs) runs.push_back(run_suboracle(sub, node_config, backend, base_seed + sub.node_id));
    return runs;
  }
  std::vector<std::future<NodeRun>> pending;
  pending.reserve(subs.size());
  for (const auto& sub : subs) {
    pending.push_back(std::async(std::launch::async, run_suboracle, std::cref(sub), std::cref(node_config), backend,
                                 base_seed + sub.node_id));
  }
  for (auto& f : pending) runs.push_back(f.get());
  return runs;
}

inline AggregateResult run_distributed(const OracleSpec& oracle, const DistributedConfig& config) {
  config.validate(oracle.n());
  const auto subs = decompose(oracle, config.k, config.scheme);
  auto runs = run_nodes(subs, config.node_config(), config.backend, config.base_seed, config.mode);
  return aggregate(std::move(runs), oracle.n(), config.k);
}

}  // namespace dqc
