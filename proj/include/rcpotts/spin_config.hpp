#pragma once
// Potts spin configurations: one spin in {1..q} per vertex.

#include <stdexcept>
#include <string>
#include <vector>

namespace rcpotts {

struct SpinConfig {
  int q = 2;
  std::vector<int> spins;  // indexed by vertex id, values in 1..q

  SpinConfig() = default;
  SpinConfig(int q_, std::size_t vertex_count, int fill = 1)
      : q(q_), spins(vertex_count, fill) {
    if (q_ < 2) throw std::invalid_argument("SpinConfig: q >= 2");
  }

  bool operator==(const SpinConfig&) const = default;
};

inline void validate(const SpinConfig& s) {
  for (int v : s.spins)
    if (v < 1 || v > s.q) throw std::invalid_argument("SpinConfig: spin out of range");
}

// Flat q-ary string in vertex-id order, digits '1'..'q' (q <= 9).
inline std::string to_spin_string(const SpinConfig& s) {
  if (s.q > 9) throw std::invalid_argument("to_spin_string: q <= 9 required");
  std::string out(s.spins.size(), '0');
  for (std::size_t v = 0; v < s.spins.size(); ++v)
    out[v] = static_cast<char>('0' + s.spins[v]);
  return out;
}

}  // namespace rcpotts
