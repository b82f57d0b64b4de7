#pragma once

// Marked-element sets as classical truth tables, and their per-node restrictions.
//
// Two partitions of the n-bit index space over 2^k nodes are supported:
//   prefix: node j holds i' with (j << (n-k)) | i' marked  (j is the high k bits)
//   stride: node j holds i' with (i' << k) | j marked      (g_j(i') = 2^k i' + j)
// Stride offsets are 0-based so that g covers [0, 2^n) exactly.

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqc {

using Index = std::uint64_t;
using BitString = std::vector<std::uint8_t>;

enum class PartitionScheme { prefix, stride };

inline const char* to_string(PartitionScheme s) {
  return s == PartitionScheme::prefix ? "prefix" : "stride";
}

inline PartitionScheme parse_scheme(const std::string& s) {
  if (s == "prefix") return PartitionScheme::prefix;
  if (s == "stride") return PartitionScheme::stride;
  throw std::domain_error("unknown partition scheme: " + s);
}

// Largest width we allow for an index register; keeps 2^n in 64 bits with room.
inline constexpr unsigned kMaxIndexQubits = 62;

namespace detail {

inline std::vector<Index> sorted_unique(std::vector<Index> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline void check_width(unsigned n) {
  if (n == 0 || n > kMaxIndexQubits) {
    throw std::domain_error("index register width must be in [1, " +
                            std::to_string(kMaxIndexQubits) + "], got " + std::to_string(n));
  }
}

}  // namespace detail

class OracleSpec {
 public:
  OracleSpec(unsigned n, std::vector<Index> marked) : n_(n), marked_(detail::sorted_unique(std::move(marked))) {
    detail::check_width(n_);
    if (!marked_.empty() && marked_.back() >= universe_size()) {
      throw std::domain_error("marked element " + std::to_string(marked_.back()) +
                              " outside [0, 2^" + std::to_string(n_) + ")");
    }
  }

  unsigned n() const { return n_; }
  Index universe_size() const { return Index{1} << n_; }
  std::uint64_t count() const { return marked_.size(); }
  std::span<const Index> marked() const { return marked_; }

  bool contains(Index x) const { return std::binary_search(marked_.begin(), marked_.end(), x); }

 private:
  unsigned n_;
  std::vector<Index> marked_;
};

struct SubOracle {
  unsigned m = 1;  // n - k
  Index node_id = 0;
  PartitionScheme scheme = PartitionScheme::prefix;
  unsigned k = 1;
  std::vector<Index> marked_local;  // sorted, unique, each < 2^m

  Index universe_size() const { return Index{1} << m; }
  std::uint64_t count() const { return marked_local.size(); }
  bool contains(Index i) const { return std::binary_search(marked_local.begin(), marked_local.end(), i); }

  // Maps a local index back to the parent index space.
  Index lift(Index local) const {
    return scheme == PartitionScheme::prefix ? (node_id << m) | local : (local << k) | node_id;
  }
};

inline OracleSpec make_oracle(unsigned n, std::vector<Index> marked) { return OracleSpec(n, std::move(marked)); }

// Universe of arbitrary size N: pad with unmarked elements up to the next power of two.
inline OracleSpec make_oracle_for_universe(Index universe, std::vector<Index> marked) {
  if (universe < 2) universe = 2;
  unsigned n = 0;
  while ((Index{1} << n) < universe) ++n;
  for (Index x : marked) {
    if (x >= universe) throw std::domain_error("marked element " + std::to_string(x) + " outside universe");
  }
  return OracleSpec(n, std::move(marked));
}

inline int indicator(const OracleSpec& oracle, Index x) {
  if (x >= oracle.universe_size()) throw std::domain_error("index outside oracle range");
  return oracle.contains(x) ? 1 : 0;
}

inline int indicator(const SubOracle& sub, Index x) {
  if (x >= sub.universe_size()) throw std::domain_error("index outside sub-oracle range");
  return sub.contains(x) ? 1 : 0;
}

namespace detail {

inline void check_split(unsigned n, unsigned k) {
  if (k < 1 || k >= n) {
    throw std::domain_error("node exponent k must satisfy 1 <= k < n (n=" + std::to_string(n) +
                            ", k=" + std::to_string(k) + ")");
  }
}

}  // namespace detail

inline std::vector<SubOracle> decompose(const OracleSpec& oracle, unsigned k, PartitionScheme scheme) {
  detail::check_split(oracle.n(), k);
  const unsigned m = oracle.n() - k;
  const Index nodes = Index{1} << k;
  std::vector<SubOracle> subs(nodes);
  for (Index j = 0; j < nodes; ++j) {
    subs[j].m = m;
    subs[j].node_id = j;
    subs[j].scheme = scheme;
    subs[j].k = k;
  }
  const Index local_mask = (Index{1} << m) - 1;
  const Index node_mask = nodes - 1;
  for (Index x : oracle.marked()) {
    if (scheme == PartitionScheme::prefix) {
      subs[x >> m].marked_local.push_back(x & local_mask);
    } else {
      subs[x & node_mask].marked_local.push_back(x >> k);
    }
  }
  // Marked set is sorted, so each bucket is already sorted for both schemes.
  return subs;
}

inline std::vector<SubOracle> decompose_prefix(const OracleSpec& oracle, unsigned k) {
  return decompose(oracle, k, PartitionScheme::prefix);
}

inline std::vector<SubOracle> decompose_stride(const OracleSpec& oracle, unsigned k) {
  return decompose(oracle, k, PartitionScheme::stride);
}

// ---- bit-vector applications ------------------------------------------------

// log2 of a power-of-two length; throws otherwise.
inline unsigned exact_log2(std::size_t len) {
  if (len < 2 || (len & (len - 1)) != 0) {
    throw std::domain_error("bit vector length must be a power of two >= 2, got " + std::to_string(len));
  }
  unsigned n = 0;
  while ((std::size_t{1} << n) < len) ++n;
  return n;
}

// Appends zeros up to the next power of two; the number of ones (and of
// positions where both vectors hold a one) is unchanged.
inline BitString pad_to_power_of_two(BitString bits) {
  std::size_t target = 2;
  while (target < bits.size()) target <<= 1;
  bits.resize(target, 0);
  return bits;
}

namespace detail {

template <typename Pred>
SubOracle bitwise_suboracle(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, unsigned k, Index offset,
                            Pred pred) {
  if (x.size() != y.size()) throw std::domain_error("bit vectors differ in length");
  const unsigned n = exact_log2(x.size());
  check_split(n, k);
  if (offset >= (Index{1} << k)) throw std::domain_error("node offset outside [0, 2^k)");
  SubOracle sub;
  sub.m = n - k;
  sub.k = k;
  sub.node_id = offset;
  sub.scheme = PartitionScheme::stride;
  for (Index i = 0; i < sub.universe_size(); ++i) {
    const Index g = (i << k) + offset;
    if (pred(x[g] != 0, y[g] != 0)) sub.marked_local.push_back(i);
  }
  return sub;
}

}  // namespace detail

// Marked where x_g AND y_g, g = 2^k i' + j'.
inline SubOracle inner_product_suboracle(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, unsigned k,
                                         Index offset) {
  return detail::bitwise_suboracle(x, y, k, offset, [](bool a, bool b) { return a && b; });
}

// Marked where x_g XOR y_g.
inline SubOracle hamming_suboracle(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, unsigned k,
                                   Index offset) {
  return detail::bitwise_suboracle(x, y, k, offset, [](bool a, bool b) { return a != b; });
}

}  // namespace dqc
