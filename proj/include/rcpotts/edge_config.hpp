#pragma once
// Edge configurations: one {0,1} value per edge id. The common state type of
// every chain, coupling and exact law in the toolkit.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcpotts {

struct EdgeConfig {
  std::vector<std::uint8_t> bits;

  EdgeConfig() = default;
  explicit EdgeConfig(std::size_t edge_count, std::uint8_t value = 0)
      : bits(edge_count, value) {}

  std::size_t size() const { return bits.size(); }
  std::uint8_t operator[](std::size_t e) const { return bits[e]; }
  std::uint8_t& operator[](std::size_t e) { return bits[e]; }

  bool operator==(const EdgeConfig&) const = default;
};

inline EdgeConfig all_closed(std::size_t edge_count) {
  return EdgeConfig(edge_count, 0);
}
inline EdgeConfig all_open(std::size_t edge_count) {
  return EdgeConfig(edge_count, 1);
}

// First edge where lo exceeds hi, or -1 if lo <= hi coordinatewise.
inline long first_order_violation(const EdgeConfig& lo, const EdgeConfig& hi) {
  if (lo.size() != hi.size())
    throw std::invalid_argument("first_order_violation: size mismatch");
  for (std::size_t e = 0; e < lo.size(); ++e)
    if (lo.bits[e] > hi.bits[e]) return static_cast<long>(e);
  return -1;
}

inline bool config_leq(const EdgeConfig& lo, const EdgeConfig& hi) {
  return first_order_violation(lo, hi) < 0;
}

inline std::size_t count_open(const EdgeConfig& c) {
  std::size_t n = 0;
  for (auto b : c.bits) n += b;
  return n;
}

// Bit string in edge-id order, e.g. "0110".
inline std::string to_bit_string(const EdgeConfig& c) {
  std::string s(c.size(), '0');
  for (std::size_t e = 0; e < c.size(); ++e)
    if (c.bits[e]) s[e] = '1';
  return s;
}

inline EdgeConfig config_from_bit_string(const std::string& s) {
  EdgeConfig c(s.size());
  for (std::size_t e = 0; e < s.size(); ++e) {
    if (s[e] != '0' && s[e] != '1')
      throw std::invalid_argument("config_from_bit_string: invalid character");
    c.bits[e] = s[e] == '1';
  }
  return c;
}

}  // namespace rcpotts
