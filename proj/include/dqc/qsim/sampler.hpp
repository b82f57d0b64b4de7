#pragma once

// Measurement sources for the estimation loops: "give me `shots` measurements
// of the last two qubits of Q^k A|0> with rotation parameter r".

#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "dqc/oracle.hpp"
#include "dqc/qsim/amplitude_model.hpp"
#include "dqc/qsim/circuits.hpp"
#include "dqc/random.hpp"

namespace dqc {

template <typename S>
concept ShotSampler = requires(S& s, std::uint64_t power, double r, std::uint64_t shots, Rng& rng) {
  { s.sample(power, r, shots, rng) } -> std::convertible_to<std::uint64_t>;
};

enum class Backend { analytic, statevector };

inline const char* to_string(Backend b) { return b == Backend::analytic ? "analytic" : "statevector"; }

inline Backend parse_backend(const std::string& s) {
  if (s == "analytic") return Backend::analytic;
  if (s == "statevector") return Backend::statevector;
  throw std::domain_error("unknown backend: " + s);
}

class AnalyticSampler {
 public:
  explicit AnalyticSampler(double amplitude) : amplitude_(amplitude) {
    if (!(amplitude >= 0.0 && amplitude <= 1.0)) throw std::domain_error("amplitude must lie in [0, 1]");
  }

  static AnalyticSampler for_suboracle(const SubOracle& sub) {
    return AnalyticSampler(AmplitudeModel{sub.m, sub.count(), 1.0}.amplitude());
  }

  double amplitude() const { return amplitude_; }

  double probability(std::uint64_t power, double r) const { return prob11_from_amplitude(amplitude_, r, power); }

  std::uint64_t sample(std::uint64_t power, double r, std::uint64_t shots, Rng& rng) {
    return sample_shots(probability(power, r), shots, rng);
  }

 private:
  double amplitude_;
};

// Runs the full circuit. Keeps the most recent state so that a growing Grover
// power at fixed r only applies the missing Q factors.
class StatevectorSampler {
 public:
  explicit StatevectorSampler(SubOracle sub) : sub_(std::move(sub)) {
    if (sub_.m + 2 > kMaxStatevectorQubits) {
      throw std::domain_error("statevector backend limited to " + std::to_string(kMaxStatevectorQubits) + " qubits");
    }
  }

  double probability(std::uint64_t power, double r) {
    const auto key = std::make_pair(power, r);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    if (!state_ || cached_r_ != r || cached_power_ > power) {
      state_ = StateVector(sub_.m + 2);
      apply_A(*state_, sub_, r);
      cached_r_ = r;
      cached_power_ = 0;
    }
    for (; cached_power_ < power; ++cached_power_) apply_Q(*state_, sub_, r);
    const double p = prob11(*state_);
    cache_.emplace(key, p);
    return p;
  }

  std::uint64_t sample(std::uint64_t power, double r, std::uint64_t shots, Rng& rng) {
    return sample_shots(probability(power, r), shots, rng);
  }

 private:
  SubOracle sub_;
  std::optional<StateVector> state_;
  double cached_r_ = 1.0;
  std::uint64_t cached_power_ = 0;
  std::map<std::pair<std::uint64_t, double>, double> cache_;
};

// Runtime backend choice behind the sampler interface.
class BackendSampler {
 public:
  BackendSampler(const SubOracle& sub, Backend backend)
      : impl_(backend == Backend::analytic ? Impl{AnalyticSampler::for_suboracle(sub)}
                                           : Impl{StatevectorSampler(sub)}) {}

  std::uint64_t sample(std::uint64_t power, double r, std::uint64_t shots, Rng& rng) {
    return std::visit([&](auto& s) { return s.sample(power, r, shots, rng); }, impl_);
  }

 private:
  using Impl = std::variant<AnalyticSampler, StatevectorSampler>;
  Impl impl_;
};

}  // namespace dqc
