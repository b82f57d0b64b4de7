// Counts {38, 8, 16} in a 64-element database split over two nodes and
// prints what each node saw.
#include <iostream>

#include "dqc/coordinator.hpp"
#include "dqc/io.hpp"

int main() {
  using namespace dqc;
  const OracleSpec oracle = make_oracle(6, {38, 8, 16});
  DistributedConfig cfg;
  cfg.k = 1;
  cfg.epsilon = 0.002;
  cfg.alpha = 0.1;
  cfg.base_seed = 2024;
  const auto agg = run_distributed(oracle, cfg);
  for (std::size_t j = 0; j < agg.nodes.size(); ++j) {
    const auto& r = agg.nodes[j].result;
    std::cout << "node " << j << ": estimate " << format_number(r.count_estimate) << " -> " << r.t_prime
              << ", rounds " << agg.nodes[j].rounds.size() << ", max K " << r.counters.max_K << ", calls "
              << r.counters.oracle_calls_paper << '\n';
  }
  std::cout << "t' = " << agg.t_prime << " (true " << oracle.count() << "), |t' - t| <= "
            << format_number(agg.error_bound) << " with probability >= " << format_number(agg.confidence) << '\n';
  return agg.status == RunStatus::success ? 0 : 1;
}
