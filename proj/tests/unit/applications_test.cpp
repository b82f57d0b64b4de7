#include <gtest/gtest.h>

#include <random>

#include "dqc/applications.hpp"

using namespace dqc;

namespace {

BitString random_bits(std::size_t len, std::mt19937_64& gen) {
  BitString b(len);
  for (auto& v : b) v = static_cast<std::uint8_t>(gen() & 1);
  return b;
}

ApplicationConfig config(std::uint64_t seed) {
  ApplicationConfig c;
  c.k = 1;
  c.epsilon = 0.01;
  c.alpha = 0.05;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(InnerProduct, AllOnes) {
  const BitString ones(64, 1);
  const auto r = estimate_inner_product(ones, ones, config(1));
  EXPECT_NEAR(r.estimate, 1.0, r.error_bound);
  EXPECT_NEAR(r.error_bound, 0.25 * 3 * 0.01, 1e-15);
}

TEST(InnerProduct, DisjointSupports) {
  BitString x(64, 0), y(64, 0);
  for (int i = 0; i < 64; i += 2) x[i] = 1;
  for (int i = 1; i < 64; i += 2) y[i] = 1;
  const auto r = estimate_inner_product(x, y, config(2));
  EXPECT_NEAR(r.estimate, 0.0, r.error_bound);
  EXPECT_GE(r.estimate, 0.0);
}

TEST(InnerProduct, RandomVectorsWithinBound) {
  std::mt19937_64 gen(5);
  int within = 0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto x = random_bits(64, gen), y = random_bits(64, gen);
    const auto r = estimate_inner_product(x, y, config(t));
    within += std::abs(r.estimate - exact_inner_product(x, y)) <= r.error_bound;
    double sum = 0.0;
    for (const auto& n : r.nodes) sum += n.result.count_estimate;
    EXPECT_EQ(sum, r.scaled_estimate);
    EXPECT_LE(static_cast<double>(r.ledger.total_qubits), r.communication_bound);
    EXPECT_EQ(r.ledger.qubits_per_A, 2u * 6 - 2 * 1 + 3);
    EXPECT_EQ(r.ledger.total_qubits, r.ledger.qubits_per_A * r.ledger.A_invocations);
    EXPECT_EQ(r.ledger.A_invocations, r.totals.oracle_calls_physical);
  }
  EXPECT_GE(within, 18);
}

TEST(Hamming, IdenticalAndComplement) {
  std::mt19937_64 gen(6);
  const auto x = random_bits(64, gen);
  const auto same = estimate_hamming(x, x, config(3));
  EXPECT_NEAR(same.estimate, 0.0, same.error_bound);
  BitString nx(x);
  for (auto& v : nx) v ^= 1;
  const auto r = estimate_hamming(x, nx, config(4));
  EXPECT_NEAR(r.estimate, 1.0, r.error_bound);
  EXPECT_EQ(r.ledger.qubits_per_A, 6u - 1 + 1);
}

TEST(Hamming, RandomVectorsWithinBound) {
  std::mt19937_64 gen(7);
  int within = 0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto x = random_bits(64, gen), y = random_bits(64, gen);
    const auto r = estimate_hamming(x, y, config(100 + t));
    within += std::abs(r.estimate - exact_hamming_fraction(x, y)) <= r.error_bound;
    EXPECT_LE(static_cast<double>(r.ledger.total_qubits), r.communication_bound);
  }
  EXPECT_GE(within, 18);
}

TEST(Applications, PadsToPowerOfTwo) {
  BitString x(48, 1), y(48, 1);
  const auto r = estimate_inner_product(x, y, config(9));
  EXPECT_EQ(r.n, 6u);
  EXPECT_NEAR(r.estimate, 48.0 / 64.0, r.error_bound);
  EXPECT_DOUBLE_EQ(exact_inner_product(x, y), 0.75);
  EXPECT_THROW(estimate_inner_product(BitString(8, 1), BitString(16, 1), config(1)), std::domain_error);
}

TEST(Applications, Preconditions) {
  BitString x(64, 1);
  auto c = config(1);
  c.epsilon = 0.05;
  EXPECT_THROW(estimate_hamming(x, x, c), std::domain_error);
  c = config(1);
  c.k = 6;
  EXPECT_THROW(estimate_hamming(x, x, c), std::domain_error);
}

TEST(CommunicationBound, Shape) {
  const double inner = communication_bound(Problem::inner_product, 6, 1, 0.001, 0.05);
  const double ham = communication_bound(Problem::hamming, 6, 1, 0.001, 0.05);
  EXPECT_TRUE(std::isfinite(inner));
  EXPECT_LT(ham, inner);
  EXPECT_NEAR(inner, 2 * (4 * 6 - 4 + 6) * query_bound(0.001, 0.05), 1e-6);
  EXPECT_NEAR(ham, 2 * (2 * 6 - 2 + 2) * query_bound(0.001, 0.05), 1e-6);
  double prev = communication_bound(Problem::inner_product, 6, 1, 0.0005, 0.05);
  for (double eps : {0.001, 0.002, 0.004, 0.008}) {
    const double b = communication_bound(Problem::inner_product, 6, 1, eps, 0.05);
    EXPECT_LT(b, prev);
    prev = b;
  }
}
