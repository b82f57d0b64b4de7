#pragma once

// Text inputs (marked sets, bit vectors) and locale-free number formatting.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "dqc/oracle.hpp"

namespace dqc {

enum class MarkedFormat { integers, bits };

inline MarkedFormat parse_marked_format(const std::string& s) {
  if (s == "integers" || s == "int") return MarkedFormat::integers;
  if (s == "bits") return MarkedFormat::bits;
  throw std::domain_error("unknown marked-set format: " + s);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline Index parse_bits_msb_first(std::string_view s) {
  if (s.empty() || s.size() > kMaxIndexQubits) throw std::domain_error("bad bit string '" + std::string(s) + "'");
  Index v = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::domain_error("bad bit string '" + std::string(s) + "'");
    v = (v << 1) | static_cast<Index>(c - '0');
  }
  return v;
}

inline Index parse_index(std::string_view s) {
  Index v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::domain_error("bad integer '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

struct MarkedSet {
  std::vector<Index> marked;
  unsigned bit_width = 0;  // longest bit string seen, 0 when all entries were integers
};

// One entry per line: a decimal integer, or a 0/1 string (MSB first) when the
// line starts with "0b" or the format is `bits`. '#' starts a comment.
inline MarkedSet parse_marked_text(std::istream& in, MarkedFormat format = MarkedFormat::integers) {
  MarkedSet out;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;
    bool bits = format == MarkedFormat::bits;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'b' || s[1] == 'B')) {
      s.remove_prefix(2);
      bits = true;
    }
    if (bits) {
      out.bit_width = std::max<unsigned>(out.bit_width, static_cast<unsigned>(s.size()));
      out.marked.push_back(detail::parse_bits_msb_first(s));
    } else {
      out.marked.push_back(detail::parse_index(s));
    }
  }
  return out;
}

inline MarkedSet load_marked_file(const std::string& path, MarkedFormat format = MarkedFormat::integers) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open marked-set file: " + path);
  return parse_marked_text(in, format);
}

// "38,8,16" or "38 8 16"
inline std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::istringstream words(token);
    std::string w;
    while (words >> w) out.push_back(detail::parse_index(w));
  }
  return out;
}

inline std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    const auto s = detail::trim(token);
    if (s.empty()) continue;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::domain_error("bad number '" + std::string(s) + "'");
    out.push_back(v);
  }
  return out;
}

// A 0/1 string; whitespace is ignored.
inline BitString parse_bit_vector(std::string_view text) {
  BitString out;
  for (char c : text) {
    if (c == '0' || c == '1') {
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw std::domain_error(std::string("bit vector contains '") + c + "'");
    }
  }
  if (out.empty()) throw std::domain_error("empty bit vector");
  return out;
}

inline BitString load_bit_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open bit-vector file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_bit_vector(buf.str());
}

// Shortest round-trip decimal form.
inline std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

inline std::string format_number(std::uint64_t v) { return std::to_string(v); }
inline std::string format_number(std::int64_t v) { return std::to_string(v); }

}  // namespace dqc
