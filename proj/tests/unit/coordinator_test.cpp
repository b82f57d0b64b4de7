#include <gtest/gtest.h>

#include "dqc/coordinator.hpp"

using namespace dqc;

namespace {

// eps = 0.002, alpha = 0.1 with k = 1 gives eps_j = 0.001, alpha_j = 0.05.
DistributedConfig example_config(std::uint64_t seed) {
  DistributedConfig c;
  c.k = 1;
  c.epsilon = 0.002;
  c.alpha = 0.1;
  c.base_seed = seed;
  return c;
}

NodeRun fake_node(std::uint64_t id, std::int64_t t, unsigned m = 5, double eps = 0.001, double alpha = 0.05) {
  NodeRun run;
  run.result.node_id = id;
  run.result.m = m;
  run.result.t_prime = t;
  run.result.epsilon_node = eps;
  run.result.alpha_node = alpha;
  run.result.counters.record(3, 10);
  return run;
}

}  // namespace

TEST(Coordinator, ExampleSumsToThree) {
  const auto oracle = make_oracle(6, {38, 8, 16});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto agg = run_distributed(oracle, example_config(seed));
    EXPECT_EQ(agg.t_prime, 3);
    EXPECT_EQ(agg.status, RunStatus::success);
    ASSERT_EQ(agg.nodes.size(), 2u);
    EXPECT_EQ(agg.nodes[0].result.t_prime, 2);
    EXPECT_EQ(agg.nodes[1].result.t_prime, 1);
    EXPECT_EQ(agg.nodes[1].result.seed, seed + 1);
    EXPECT_DOUBLE_EQ(agg.nodes[0].result.epsilon_node, 0.001);
    EXPECT_DOUBLE_EQ(agg.nodes[0].result.alpha_node, 0.05);
  }
}

TEST(Coordinator, EmptySet) {
  const auto agg = run_distributed(make_oracle(6, {}), example_config(4));
  EXPECT_EQ(agg.t_prime, 0);
}

TEST(Coordinator, BoundAndConfidence) {
  const auto agg = run_distributed(make_oracle(6, {38, 8, 16}), example_config(1));
  EXPECT_NEAR(agg.error_bound, 16 * 3 * 0.002 + 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(agg.confidence, 1 - 4.0 / 3.0 * 0.1, 1e-12);
  EXPECT_DOUBLE_EQ(agg.epsilon, 0.002);
  EXPECT_GT(agg.error_bound, 0.0);
}

TEST(Coordinator, SequentialEqualsConcurrent) {
  const auto oracle = make_oracle(8, {1, 5, 9, 77, 130, 131, 200, 254, 255});
  for (auto scheme : {PartitionScheme::prefix, PartitionScheme::stride}) {
    auto c = example_config(31);
    c.k = 2;
    c.scheme = scheme;
    c.mode = ExecutionMode::sequential;
    const auto a = run_distributed(oracle, c);
    c.mode = ExecutionMode::concurrent;
    const auto b = run_distributed(oracle, c);
    EXPECT_EQ(a.t_prime, b.t_prime);
    ASSERT_EQ(a.nodes.size(), b.nodes.size());
    for (std::size_t j = 0; j < a.nodes.size(); ++j) {
      EXPECT_EQ(a.nodes[j].result.count_estimate, b.nodes[j].result.count_estimate);
      EXPECT_EQ(a.nodes[j].result.counters.total_shots, b.nodes[j].result.counters.total_shots);
    }
    EXPECT_EQ(a.totals.oracle_calls_paper, b.totals.oracle_calls_paper);
  }
}

TEST(Coordinator, Preconditions) {
  const auto oracle = make_oracle(6, {1});
  auto c = example_config(0);
  c.epsilon = 0.02;
  EXPECT_THROW(run_distributed(oracle, c), std::domain_error);
  c = example_config(0);
  c.alpha = 0.75;
  EXPECT_THROW(run_distributed(oracle, c), std::domain_error);
  c = example_config(0);
  c.k = 6;
  EXPECT_THROW(run_distributed(oracle, c), std::domain_error);
}

TEST(Aggregate, SumsAndGuards) {
  std::vector<NodeRun> nodes{fake_node(0, 2), fake_node(1, 1)};
  const auto agg = aggregate(nodes, 6, 1);
  EXPECT_EQ(agg.t_prime, 3);
  EXPECT_EQ(agg.totals.total_shots, 20u);
  EXPECT_EQ(aggregate({fake_node(0, 0), fake_node(1, 0)}, 6, 1).t_prime, 0);
  EXPECT_THROW(aggregate({}, 6, 1), std::domain_error);
  EXPECT_THROW(aggregate({fake_node(0, 2), fake_node(1, 1, 5, 0.002)}, 6, 1), std::domain_error);
  EXPECT_THROW(aggregate({fake_node(0, 2), fake_node(1, 1, 4)}, 6, 1), std::domain_error);
}

TEST(Aggregate, FailedNodePropagates) {
  std::vector<NodeRun> nodes{fake_node(0, 2), fake_node(1, 1)};
  nodes[1].result.status = RunStatus::failed;
  const auto agg = aggregate(nodes, 6, 1);
  EXPECT_EQ(agg.status, RunStatus::failed);
  EXPECT_EQ(agg.t_prime, 3);
}
