#pragma once

#include <cstdint>
#include <random>

namespace dqc {

// Every simulated run owns one generator seeded with a documented 64-bit value.
// Uniform doubles are built from the top 53 bits so the stream is identical on
// every platform (std::uniform_real_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Number of successes in `shots` Bernoulli(p) trials. One uniform draw per shot
// keeps the call sequence, and therefore every downstream count, reproducible.
inline std::uint64_t sample_shots(double probability, std::uint64_t shots, Rng& rng) {
  if (probability <= 0.0) {
    for (std::uint64_t s = 0; s < shots; ++s) rng.next_u64();
    return 0;
  }
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < shots; ++s) {
    if (rng.uniform() < probability) ++hits;
  }
  return hits;
}

}  // namespace dqc
