#pragma once
// Deterministic, seed-addressed randomness. Every variate is a pure function
// of (seed, stream scope, index), with no generator state, so extending a
// time window, adding a parameter point, or reordering a sweep reuses
// identical randomness. This is what makes the couplings and the
// from-the-past windows consistent by construction.
//
// Exact transforms (a documented contract; tests pin them down):
//   w        = 64-bit splitmix-style mix of (seed, scope, index, lane)
//   uniform  = (w >> 11) * 2^-53                      in [0, 1)
//   phi      = -log(((w >> 11) + 1) * 2^-53)          Exp(1), inverse CDF

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rcpotts/graph.hpp"

namespace rcpotts {

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t stream_word(std::uint64_t seed, std::uint64_t scope,
                                 std::uint64_t index, std::uint64_t lane) {
  std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ull);
  h = mix64(h ^ (scope + 0xC2B2AE3D27D4EB4Full));
  h = mix64(h ^ (index + 0x165667B19E3779F9ull));
  h = mix64(h ^ (lane + 0xD6E8FEB86659FD93ull));
  return h;
}

inline double uniform_from_word(std::uint64_t w) {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

inline double exp_from_word(std::uint64_t w) {
  return -std::log(static_cast<double>((w >> 11) + 1) * 0x1.0p-53);
}

// Stream scopes. The packing is injective (kind 8 bits, a 36 bits, b 20
// bits), so distinct scopes never alias.
namespace scope {

inline std::uint64_t pack(std::uint64_t kind, std::uint64_t a, std::uint64_t b = 0) {
  if (a >= (1ull << 36) || b >= (1ull << 20))
    throw std::invalid_argument("scope::pack: id out of range");
  return (kind << 56) | (a << 20) | b;
}

inline std::uint64_t edge_clock(EdgeId e) { return pack(1, e); }
inline std::uint64_t vertex_clock(VertexId x, std::uint32_t slot) { return pack(2, x, slot); }
inline std::uint64_t vertex_claim(VertexId x, std::uint32_t slot) { return pack(3, x, slot); }
inline std::uint64_t vertex_component(VertexId x) { return pack(4, x); }
inline std::uint64_t vertex_spin(VertexId x) { return pack(5, x); }
inline std::uint64_t replicate(std::uint64_t i) { return pack(7, i & ((1ull << 36) - 1), i >> 36); }

}  // namespace scope

struct DrawPair {
  double phi;  // Exp(1) gap
  double u;    // Uniform[0,1)
};

// The addressed (phi, u) pair: lane 0 feeds the exponential, lane 1 the
// uniform. Same key, same pair, always.
inline DrawPair draw(std::uint64_t seed, std::uint64_t scope_id, std::uint64_t index) {
  return {exp_from_word(stream_word(seed, scope_id, index, 0)),
          uniform_from_word(stream_word(seed, scope_id, index, 1))};
}

inline double uniform_at(std::uint64_t seed, std::uint64_t scope_id,
                         std::uint64_t index = 0) {
  return uniform_from_word(stream_word(seed, scope_id, index, 1));
}

// Independent child seed for replicate / sample indexing.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  return stream_word(seed, scope::replicate(salt), 0, 2);
}

// One Poisson-clock update: the edge resamples at `time` using `u`.
struct UpdateEvent {
  double time;   // in (-T, 0] for from-the-past windows
  EdgeId edge;
  double u;
};

inline bool event_order(const UpdateEvent& a, const UpdateEvent& b) {
  // Equal times across distinct edges have probability zero; the edge-id
  // tie-break keeps the schedule total and deterministic anyway.
  if (a.time != b.time) return a.time < b.time;
  return a.edge < b.edge;
}

// All events of each edge's unit-rate Poisson clock falling in (-T, 0],
// merged in increasing time order. `pair_source(edge, k)` supplies the k-th
// (phi, u) pair of that edge's stream (k = 1, 2, ...); the cumulative gap
// sums are the jump times. Because the pairs are counter-addressed, the
// result for T1 < T2 is bit-identical to the suffix of the T2 result.
template <class PairSource>
std::vector<UpdateEvent> events_in_window_from(const std::vector<EdgeId>& edge_set,
                                               double T, PairSource&& pair_source) {
  if (!(T >= 0.0)) throw std::invalid_argument("events_in_window: T must be >= 0");
  std::vector<UpdateEvent> events;
  for (EdgeId e : edge_set) {
    double tau = 0.0;
    for (std::uint64_t k = 1;; ++k) {
      DrawPair pr = pair_source(e, k);
      tau += pr.phi;
      if (!(tau < T)) break;
      events.push_back({-tau, e, pr.u});
    }
  }
  std::sort(events.begin(), events.end(), event_order);
  return events;
}

inline std::vector<UpdateEvent> events_in_window(std::uint64_t seed,
                                                 const std::vector<EdgeId>& edge_set,
                                                 double T) {
  return events_in_window_from(edge_set, T, [seed](EdgeId e, std::uint64_t k) {
    return draw(seed, scope::edge_clock(e), k);
  });
}

inline std::vector<EdgeId> all_edges(const Graph& g) {
  std::vector<EdgeId> out(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) out[e] = e;
  return out;
}

inline std::vector<UpdateEvent> events_in_window(std::uint64_t seed, const Graph& g,
                                                 double T) {
  return events_in_window(seed, all_edges(g), T);
}

// Exact floating-point time collisions across distinct edges (theoretically
// a null event; counted so sweeps can report them).
inline std::size_t count_time_collisions(const std::vector<UpdateEvent>& events) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < events.size(); ++i)
    if (events[i].time == events[i - 1].time && events[i].edge != events[i - 1].edge)
      ++n;
  return n;
}

// The i.i.d. per-vertex field: slotted clock sequences (phi, u), per-slot
// claim uniforms, a component uniform, and a component spin. Accessors are
// pure functions of (seed, vertex, slot, index). `permuted` returns the
// relabeled view x -> base(gamma^{-1} x); `with_reseeded_vertex` swaps one
// vertex's randomness wholesale (used by locality probes).
class VertexField {
 public:
  VertexField(std::uint64_t seed, VertexId vertex_count, std::uint32_t slot_count,
              int spin_states)
      : seed_(seed), vertex_count_(vertex_count), slots_(slot_count), q_(spin_states) {
    if (slot_count == 0) throw std::invalid_argument("VertexField: need >= 1 slot");
    if (spin_states < 2) throw std::invalid_argument("VertexField: spin states >= 2");
  }

  VertexId vertex_count() const { return vertex_count_; }
  std::uint32_t slots() const { return slots_; }
  int spin_states() const { return q_; }
  std::uint64_t seed() const { return seed_; }

  DrawPair clock(VertexId x, std::uint32_t slot, std::uint64_t k) const {
    check_slot(slot);
    return draw(seed_for(x), scope::vertex_clock(raw(x), slot), k);
  }

  double claim(VertexId x, std::uint32_t slot) const {
    check_slot(slot);
    return uniform_at(seed_for(x), scope::vertex_claim(raw(x), slot));
  }

  double component_uniform(VertexId x) const {
    return uniform_at(seed_for(x), scope::vertex_component(raw(x)));
  }

  int component_spin(VertexId x) const {
    double u = uniform_at(seed_for(x), scope::vertex_spin(raw(x)));
    int s = 1 + static_cast<int>(u * q_);
    return std::min(s, q_);
  }

  VertexField permuted(const VertexPermutation& gamma) const {
    VertexPermutation inv = invert_permutation(gamma);
    VertexField out = *this;
    out.relabel_.resize(vertex_count_);
    for (VertexId x = 0; x < vertex_count_; ++x) out.relabel_[x] = raw(inv[x]);
    return out;
  }

  VertexField with_reseeded_vertex(VertexId x, std::uint64_t alt_seed) const {
    VertexField out = *this;
    out.overrides_.emplace_back(raw(x), alt_seed);
    return out;
  }

 private:
  void check_slot(std::uint32_t slot) const {
    if (slot == 0 || slot > slots_)
      throw std::invalid_argument("VertexField: slot out of range");
  }

  VertexId raw(VertexId x) const { return relabel_.empty() ? x : relabel_[x]; }

  std::uint64_t seed_for(VertexId x) const {
    VertexId r = raw(x);
    for (auto& [v, s] : overrides_)
      if (v == r) return s;
    return seed_;
  }

  std::uint64_t seed_;
  VertexId vertex_count_;
  std::uint32_t slots_;
  int q_;
  VertexPermutation relabel_;  // view-level vertex -> base vertex
  std::vector<std::pair<VertexId, std::uint64_t>> overrides_;
};

// Equivariant total order on vertices given a field: compares field values
// only (component uniform, then claims, then first clock uniforms), never
// vertex ids, so it commutes with relabeling. Exact ties across all lanes
// have probability zero and are rejected loudly.
inline int compare_by_field(const VertexField& f, VertexId a, VertexId b) {
  if (a == b) return 0;
  auto cmp = [](double x, double y) { return x < y ? -1 : (x > y ? 1 : 0); };
  if (int c = cmp(f.component_uniform(a), f.component_uniform(b))) return c;
  for (std::uint32_t j = 1; j <= f.slots(); ++j)
    if (int c = cmp(f.claim(a, j), f.claim(b, j))) return c;
  for (std::uint32_t j = 1; j <= f.slots(); ++j)
    if (int c = cmp(f.clock(a, j, 1).u, f.clock(b, j, 1).u)) return c;
  throw std::logic_error("compare_by_field: identical field values at two vertices");
}

// Which (vertex, slot) stream each edge adopts; events are then drawn through
// the field so that relabeled fields give relabeled events.
struct EdgeStreamAssignment {
  VertexField field;
  std::vector<std::pair<VertexId, std::uint32_t>> source;  // per edge: vertex, 1-based slot
};

// The edge {x,y} adopts the slotted stream of the endpoint whose claim
// uniform is smaller, where the slot of y at x is the rank of y's component
// uniform among x's neighbors. Both the slotting and the tie handling are
// functions of field values alone, which makes the whole assignment commute
// with graph automorphisms applied to the field.
inline EdgeStreamAssignment edge_randomness_from_vertices(const Graph& g,
                                                          const VertexField& field) {
  if (field.slots() < g.max_degree)
    throw std::invalid_argument(
        "edge_randomness_from_vertices: field needs >= max_degree slots");
  if (field.vertex_count() != g.vertex_count)
    throw std::invalid_argument("edge_randomness_from_vertices: vertex count mismatch");

  // rank_of[incidence position] = 1-based rank of that neighbor at its vertex
  std::vector<std::uint32_t> rank_of(g.adj.size());
  std::vector<std::uint32_t> order;
  for (VertexId x = 0; x < g.vertex_count; ++x) {
    std::uint32_t begin = g.adj_offset[x], end = g.adj_offset[x + 1];
    order.resize(end - begin);
    for (std::uint32_t i = 0; i < end - begin; ++i) order[i] = begin + i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return compare_by_field(field, g.adj[a].neighbor, g.adj[b].neighbor) < 0;
    });
    for (std::uint32_t r = 0; r < order.size(); ++r) rank_of[order[r]] = r + 1;
  }

  auto slot_of = [&](VertexId x, VertexId y) -> std::uint32_t {
    for (std::uint32_t i = g.adj_offset[x]; i < g.adj_offset[x + 1]; ++i)
      if (g.adj[i].neighbor == y) return rank_of[i];
    throw std::logic_error("edge_randomness_from_vertices: missing incidence");
  };

  EdgeStreamAssignment out{field, {}};
  out.source.resize(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [x, y] = g.edges[e];
    std::uint32_t jx = slot_of(x, y), jy = slot_of(y, x);
    double cx = field.claim(x, jx), cy = field.claim(y, jy);
    bool pick_x;
    if (cx != cy)
      pick_x = cx < cy;
    else
      pick_x = compare_by_field(field, x, y) < 0;
    out.source[e] = pick_x ? std::make_pair(x, jx) : std::make_pair(y, jy);
  }
  return out;
}

inline std::vector<UpdateEvent> events_in_window(const EdgeStreamAssignment& a,
                                                 const std::vector<EdgeId>& edge_set,
                                                 double T) {
  return events_in_window_from(edge_set, T, [&a](EdgeId e, std::uint64_t k) {
    auto [v, slot] = a.source[e];
    return a.field.clock(v, slot, k);
  });
}

inline std::vector<UpdateEvent> events_in_window(const EdgeStreamAssignment& a,
                                                 const Graph& g, double T) {
  return events_in_window(a, all_edges(g), T);
}

}  // namespace rcpotts
