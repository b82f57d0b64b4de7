#pragma once

#include <algorithm>
#include <cstdint>

namespace dqc {

enum class RunStatus { success, failed };

inline const char* to_string(RunStatus s) { return s == RunStatus::success ? "success" : "failed"; }

// Resource usage of one estimation run.
//   oracle_calls_paper     sum over shots of k (Grover power), the usual query count
//   oracle_calls_physical  sum over shots of 2k + 1 (every A and A^dagger application)
struct ResourceCounters {
  std::uint64_t oracle_calls_paper = 0;
  std::uint64_t oracle_calls_physical = 0;
  std::uint64_t total_shots = 0;
  std::uint64_t max_K = 1;

  std::uint64_t max_power() const { return (max_K - 1) / 2; }

  void record(std::uint64_t K, std::uint64_t shots) {
    oracle_calls_paper += (K - 1) / 2 * shots;
    oracle_calls_physical += K * shots;
    total_shots += shots;
    max_K = std::max(max_K, K);
  }

  ResourceCounters& operator+=(const ResourceCounters& o) {
    oracle_calls_paper += o.oracle_calls_paper;
    oracle_calls_physical += o.oracle_calls_physical;
    total_shots += o.total_shots;
    max_K = std::max(max_K, o.max_K);
    return *this;
  }
};

}  // namespace dqc
