#pragma once
// Brute-force enumeration oracle for small instances: exact random-cluster
// and Potts laws (free and wired), single-edge conditionals, Holley's
// single-site criterion, and Strassen domination decided by transport
// feasibility (max-flow), returning an explicit monotone coupling or a
// violating increasing event. Everything here is the reference that the
// samplers are validated against.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "rcpotts/connectivity.hpp"
#include "rcpotts/dynamics.hpp"
#include "rcpotts/edge_config.hpp"
#include "rcpotts/graph.hpp"
#include "rcpotts/spin_config.hpp"

namespace rcpotts {

inline constexpr std::uint32_t kDefaultEnumerationCap = 20;   // edges, 2^20 configs
inline constexpr std::uint32_t kDefaultDominationCap = 12;    // edges, 4096 configs
inline constexpr double kFeasibilityTolerance = 1e-9;

// Number of connected components of the open subgraph; isolated vertices
// count.
inline int kappa(const Graph& g, const EdgeConfig& config) {
  return label_components(g, config).count;
}

// Components that do not intersect the boundary set. With an empty boundary
// this is kappa.
inline int kappa_wired(const Graph& g, const EdgeConfig& config,
                       const std::vector<VertexId>& boundary) {
  ComponentLabels labels = label_components(g, config);
  std::vector<std::uint8_t> touches(labels.count, 0);
  for (VertexId v : boundary) {
    if (v >= g.vertex_count)
      throw std::invalid_argument("kappa_wired: boundary vertex out of range");
    touches[labels.label[v]] = 1;
  }
  int n = 0;
  for (int c = 0; c < labels.count; ++c)
    if (!touches[c]) ++n;
  return n;
}

// Exact law on {0,1}^E. The support is the full enumeration in lexicographic
// bit-string order (edge 0 is the most significant position), stored
// implicitly: config_at(i) materializes the i-th configuration.
struct Distribution {
  std::uint32_t edge_count = 0;
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }

  EdgeConfig config_at(std::size_t i) const {
    EdgeConfig c(edge_count);
    for (std::uint32_t e = 0; e < edge_count; ++e)
      c[e] = (i >> (edge_count - 1 - e)) & 1;
    return c;
  }

  std::size_t index_of(const EdgeConfig& c) const {
    if (c.size() != edge_count)
      throw std::invalid_argument("Distribution::index_of: size mismatch");
    std::size_t i = 0;
    for (std::uint32_t e = 0; e < edge_count; ++e)
      i = (i << 1) | c[e];
    return i;
  }

  void validate() const {
    if (probs.size() != (std::size_t{1} << edge_count))
      throw std::logic_error("Distribution: support must be the full cube");
    double s = 0.0;
    for (double p : probs) {
      if (p < 0.0) throw std::logic_error("Distribution: negative probability");
      s += p;
    }
    if (std::abs(s - 1.0) > 1e-12)
      throw std::logic_error("Distribution: probabilities must sum to 1");
  }
};

inline double tv_distance(const Distribution& a, const Distribution& b) {
  if (a.edge_count != b.edge_count || a.size() != b.size())
    throw std::invalid_argument("tv_distance: mismatched supports");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a.probs[i] - b.probs[i]);
  return 0.5 * s;
}

inline double marginal_open(const Distribution& d, EdgeId e) {
  double s = 0.0;
  std::size_t bit = std::size_t{1} << (d.edge_count - 1 - e);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (i & bit) s += d.probs[i];
  return s;
}

// Inverse-CDF sampling; u in [0,1).
inline std::size_t sample_index(const Distribution& d, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    acc += d.probs[i];
    if (u < acc) return i;
  }
  return d.size() - 1;
}

// The random-cluster law with weight q^kappa * prod p^xi (1-p)^(1-xi),
// normalized. With a boundary set, kappa is replaced by the wired count
// (components missing the boundary), giving the finite-volume wired law.
inline Distribution rc_distribution(const Graph& g, double p, double q,
                                    const std::vector<VertexId>* boundary = nullptr,
                                    std::uint32_t cap = kDefaultEnumerationCap) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("rc_distribution: p in [0,1]");
  if (!(q >= 1.0)) throw std::invalid_argument("rc_distribution: q < 1 rejected");
  const std::uint32_t m = static_cast<std::uint32_t>(g.edge_count());
  if (m > cap) throw std::invalid_argument("rc_distribution: edge count exceeds cap");

  Distribution d;
  d.edge_count = m;
  d.probs.resize(std::size_t{1} << m);
  std::vector<VertexId> bnd = boundary ? *boundary : std::vector<VertexId>{};

  EdgeConfig c(m);
  double total = 0.0;
  for (std::size_t i = 0; i < d.probs.size(); ++i) {
    std::size_t open = 0;
    for (std::uint32_t e = 0; e < m; ++e) {
      c[e] = (i >> (m - 1 - e)) & 1;
      open += c[e];
    }
    int k = boundary ? kappa_wired(g, c, bnd) : kappa(g, c);
    double w = std::pow(q, k) * std::pow(p, double(open)) *
               std::pow(1.0 - p, double(m - open));
    d.probs[i] = w;
    total += w;
  }
  for (double& w : d.probs) w /= total;
  return d;
}

// P(edge open | rest): p when the endpoints are joined without the edge (or,
// wired, both reach the boundary), p/(p+(1-p)q) otherwise. The entry of
// `rest` at the queried edge is ignored.
inline double conditional_edge_prob(const Graph& g, double p, double q, EdgeId edge,
                                    const EdgeConfig& rest,
                                    const std::vector<VertexId>* boundary = nullptr) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("conditional_edge_prob: p in [0,1]");
  if (!(q >= 1.0)) throw std::invalid_argument("conditional_edge_prob: q < 1 rejected");
  if (rest.size() != g.edge_count())
    throw std::invalid_argument("conditional_edge_prob: rest size mismatch");
  auto [x, y] = g.edges[edge];
  bool joined = boundary ? connected_mod_boundary(g, rest, x, y, edge, *boundary)
                         : connected_without_edge(g, rest, x, y, edge);
  return joined ? p : p / (p + (1.0 - p) * q);
}

// Exact Potts Gibbs law proportional to exp(-2 beta * #disagreeing edges),
// optionally with a clamped vertex set pinned to spin r (those vertices are
// excluded from the enumeration). Support order is lexicographic over the
// free vertices in ascending id, spin 1 first.
struct PottsDistribution {
  int q = 2;
  VertexId vertex_count = 0;
  std::vector<VertexId> free_vertices;
  std::vector<VertexId> clamped_vertices;
  int clamp_spin = 1;
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }

  SpinConfig config_at(std::size_t i) const {
    SpinConfig s(q, vertex_count, clamp_spin);
    for (std::size_t t = free_vertices.size(); t-- > 0;) {
      s.spins[free_vertices[t]] = 1 + static_cast<int>(i % q);
      i /= q;
    }
    return s;
  }

  std::size_t index_of(const SpinConfig& s) const {
    std::size_t i = 0;
    for (VertexId v : free_vertices) i = i * q + (s.spins[v] - 1);
    return i;
  }
};

inline PottsDistribution potts_distribution(
    const Graph& g, int q, double beta,
    const std::vector<VertexId>* clamp_vertices = nullptr, int clamp_spin = 1,
    std::size_t cap = std::size_t{1} << 20) {
  if (q < 2) throw std::invalid_argument("potts_distribution: q >= 2");
  if (!(beta >= 0.0)) throw std::invalid_argument("potts_distribution: beta >= 0");
  if (clamp_vertices && (clamp_spin < 1 || clamp_spin > q))
    throw std::invalid_argument("potts_distribution: clamp spin out of range");

  PottsDistribution d;
  d.q = q;
  d.vertex_count = g.vertex_count;
  d.clamp_spin = clamp_spin;
  std::vector<std::uint8_t> clamped(g.vertex_count, 0);
  if (clamp_vertices) {
    for (VertexId v : *clamp_vertices) {
      if (v >= g.vertex_count)
        throw std::invalid_argument("potts_distribution: clamp vertex out of range");
      clamped[v] = 1;
    }
  }
  for (VertexId v = 0; v < g.vertex_count; ++v)
    (clamped[v] ? d.clamped_vertices : d.free_vertices).push_back(v);

  std::size_t states = 1;
  for (std::size_t t = 0; t < d.free_vertices.size(); ++t) {
    states *= q;
    if (states > cap) throw std::invalid_argument("potts_distribution: state count exceeds cap");
  }

  d.probs.resize(states);
  double total = 0.0;
  for (std::size_t i = 0; i < states; ++i) {
    SpinConfig s = d.config_at(i);
    int disagree = 0;
    for (auto [u, v] : g.edges) disagree += s.spins[u] != s.spins[v];
    double w = std::exp(-2.0 * beta * disagree);
    d.probs[i] = w;
    total += w;
  }
  for (double& w : d.probs) w /= total;
  return d;
}

// Single-site Potts conditional: the distribution of the spin at `vertex`
// given all other spins. The entry of `others` at `vertex` is ignored.
inline std::vector<double> dlr_conditional(const Graph& g, int q, double beta,
                                           VertexId vertex, const SpinConfig& others) {
  if (q < 2) throw std::invalid_argument("dlr_conditional: q >= 2");
  std::vector<double> out(q);
  double total = 0.0;
  for (int r = 1; r <= q; ++r) {
    int disagree = 0;
    for (auto it = g.neighbors_begin(vertex); it != g.neighbors_end(vertex); ++it)
      disagree += others.spins[it->neighbor] != r;
    out[r - 1] = std::exp(-2.0 * beta * disagree);
    total += out[r - 1];
  }
  for (double& w : out) w /= total;
  return out;
}

inline double pair_agreement_probability(const PottsDistribution& d, VertexId x,
                                         VertexId y) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    SpinConfig c = d.config_at(i);
    if (c.spins[x] == c.spins[y]) s += d.probs[i];
  }
  return s;
}

inline double connectivity_probability(const Graph& g, const Distribution& d,
                                       VertexId x, VertexId y) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    ComponentLabels labels = label_components(g, d.config_at(i));
    if (labels.label[x] == labels.label[y]) s += d.probs[i];
  }
  return s;
}

inline Distribution product_distribution(std::uint32_t edge_count,
                                         const std::vector<double>& open_probs) {
  if (open_probs.size() != edge_count)
    throw std::invalid_argument("product_distribution: needs one probability per edge");
  Distribution d;
  d.edge_count = edge_count;
  d.probs.resize(std::size_t{1} << edge_count);
  for (std::size_t i = 0; i < d.probs.size(); ++i) {
    double w = 1.0;
    for (std::uint32_t e = 0; e < edge_count; ++e) {
      bool open = (i >> (edge_count - 1 - e)) & 1;
      w *= open ? open_probs[e] : 1.0 - open_probs[e];
    }
    d.probs[i] = w;
  }
  return d;
}

inline Distribution product_distribution(std::uint32_t edge_count, double p) {
  return product_distribution(edge_count, std::vector<double>(edge_count, p));
}

struct HolleyReport {
  bool holds = true;
  EdgeId edge = 0;          // witness on failure
  std::size_t lower_rest = 0;  // off-edge configuration indices (mask order)
  std::size_t upper_rest = 0;
  double lower_conditional = 0.0;
  double upper_conditional = 0.0;
};

namespace detail {

// Insert a bit with value `v` at position `pos` (counted from the most
// significant end of an (m-1)-bit rest index) to form an m-bit full index.
inline std::size_t insert_bit(std::size_t rest, std::uint32_t m, std::uint32_t pos,
                              std::size_t v) {
  std::size_t high_count = pos;                         // bits above the inserted one
  std::size_t low_bits = m - 1 - high_count;            // bits below it
  std::size_t high = rest >> low_bits;
  std::size_t low = rest & ((std::size_t{1} << low_bits) - 1);
  return (high << (low_bits + 1)) | (v << low_bits) | low;
}

inline double conditional_open(const Distribution& d, std::uint32_t pos,
                               std::size_t rest) {
  double p0 = d.probs[insert_bit(rest, d.edge_count, pos, 0)];
  double p1 = d.probs[insert_bit(rest, d.edge_count, pos, 1)];
  return p1 / (p0 + p1);
}

}  // namespace detail

// Holley's single-site criterion: for every edge e and every ordered pair of
// off-e configurations xi <= xi', the conditional probability of e being open
// under mu at xi must not exceed the one under nu at xi'. Both measures must
// charge every configuration.
inline HolleyReport check_holley(const Distribution& mu, const Distribution& nu) {
  if (mu.edge_count != nu.edge_count)
    throw std::invalid_argument("check_holley: mismatched edge sets");
  mu.validate();
  nu.validate();
  for (double p : mu.probs)
    if (p <= 0.0) throw std::invalid_argument("check_holley: mu must charge every configuration");
  for (double p : nu.probs)
    if (p <= 0.0) throw std::invalid_argument("check_holley: nu must charge every configuration");

  const std::uint32_t m = mu.edge_count;
  HolleyReport r;
  for (std::uint32_t e = 0; e < m; ++e) {
    const std::uint32_t pos = e;  // bit position from the most significant end
    const std::size_t rests = std::size_t{1} << (m - 1);
    for (std::size_t upper = 0; upper < rests; ++upper) {
      double nu_cond = detail::conditional_open(nu, pos, upper);
      // All submasks of upper, including 0 and upper itself.
      std::size_t lower = upper;
      while (true) {
        double mu_cond = detail::conditional_open(mu, pos, lower);
        if (mu_cond > nu_cond + 1e-12) {
          r.holds = false;
          r.edge = e;
          r.lower_rest = lower;
          r.upper_rest = upper;
          r.lower_conditional = mu_cond;
          r.upper_conditional = nu_cond;
          return r;
        }
        if (lower == 0) break;
        lower = (lower - 1) & upper;
      }
    }
  }
  return r;
}

struct DominationReport {
  bool dominated = false;
  // Monotone coupling witness: (index in mu support, index in nu support,
  // mass), only over pairs x <= y. Present when dominated.
  std::vector<std::tuple<std::size_t, std::size_t, double>> coupling;
  // Violating increasing event (an up-set, as support indices) with
  // mu(U) > nu(U). Present when not dominated.
  std::vector<std::size_t> violating_upset;
  double mu_upset_mass = 0.0;
  double nu_upset_mass = 0.0;
};

namespace detail {

// Dinic max-flow on a small dense layered problem.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : head_(nodes, -1) {}

  void add_edge(std::size_t from, std::size_t to, double capacity) {
    arcs_.push_back({static_cast<int>(to), head_[from], capacity});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({static_cast<int>(from), head_[to], 0.0});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  double run(std::size_t source, std::size_t sink) {
    double flow = 0.0;
    while (build_levels(source, sink)) {
      iter_ = head_;
      while (true) {
        double pushed = push(source, sink, std::numeric_limits<double>::infinity());
        if (pushed <= 0.0) break;
        flow += pushed;
      }
    }
    return flow;
  }

  // Flow pushed through the arc_index-th added edge (= its reverse capacity).
  double flow_on(std::size_t arc_index) const { return arcs_[2 * arc_index + 1].capacity; }

  // Nodes reachable from source in the residual graph (the min-cut side).
  std::vector<std::uint8_t> residual_reachable(std::size_t source) const {
    std::vector<std::uint8_t> seen(head_.size(), 0);
    std::vector<std::size_t> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (int a = head_[v]; a >= 0; a = arcs_[a].next) {
        if (arcs_[a].capacity > kFeasibilityTolerance && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int next;
    double capacity;
  };

  bool build_levels(std::size_t source, std::size_t sink) {
    level_.assign(head_.size(), -1);
    std::vector<std::size_t> queue{source};
    level_[source] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      std::size_t v = queue[h];
      for (int a = head_[v]; a >= 0; a = arcs_[a].next) {
        if (arcs_[a].capacity > kFeasibilityTolerance && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[v] + 1;
          queue.push_back(arcs_[a].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  double push(std::size_t v, std::size_t sink, double limit) {
    if (v == sink) return limit;
    for (int& a = iter_[v]; a >= 0; a = arcs_[a].next) {
      Arc& arc = arcs_[a];
      if (arc.capacity > kFeasibilityTolerance && level_[arc.to] == level_[v] + 1) {
        double got = push(arc.to, sink, std::min(limit, arc.capacity));
        if (got > 0.0) {
          arc.capacity -= got;
          arcs_[a ^ 1].capacity += got;
          return got;
        }
      }
    }
    level_[v] = -1;
    return 0.0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace detail

// Decides stochastic domination mu <=_D nu by transport feasibility: route
// each mu-configuration's mass to nu-configurations above it. Feasible flow
// of total mass 1 is exactly a monotone coupling (Strassen); an infeasible
// cut yields an increasing event U with mu(U) > nu(U).
inline DominationReport check_domination(const Distribution& mu, const Distribution& nu,
                                         std::uint32_t cap = kDefaultDominationCap) {
  if (mu.edge_count != nu.edge_count)
    throw std::invalid_argument("check_domination: mismatched edge sets");
  if (mu.edge_count > cap)
    throw std::invalid_argument("check_domination: edge count exceeds cap");
  mu.validate();
  nu.validate();

  const std::size_t n = mu.size();
  // Node layout: 0 = source, 1..n = mu configs, n+1..2n = nu configs, 2n+1 = sink.
  const std::size_t source = 0, sink = 2 * n + 1;
  detail::MaxFlow flow(2 * n + 2);
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> transport_arcs;
  for (std::size_t x = 0; x < n; ++x) flow.add_edge(source, 1 + x, mu.probs[x]);
  std::size_t arc_counter = n;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      // x <= y coordinatewise iff x's open set is contained in y's.
      if ((x & ~y) == 0) {
        flow.add_edge(1 + x, n + 1 + y, 2.0);
        transport_arcs.emplace_back(arc_counter++, x, y);
      }
    }
  }
  for (std::size_t y = 0; y < n; ++y) flow.add_edge(n + 1 + y, sink, nu.probs[y]);

  double max_flow = flow.run(source, sink);
  DominationReport r;
  if (max_flow >= 1.0 - kFeasibilityTolerance) {
    r.dominated = true;
    for (auto [arc, x, y] : transport_arcs) {
      double f = flow.flow_on(arc);
      if (f > kFeasibilityTolerance) r.coupling.emplace_back(x, y, f);
    }
    return r;
  }

  // Min-cut side: mu-configurations still reachable from the source. The
  // up-closure of that set is increasing and separates the measures.
  std::vector<std::uint8_t> reach = flow.residual_reachable(source);
  std::vector<std::uint8_t> in_up(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    if (reach[1 + x]) in_up[x] = 1;
  for (std::uint32_t b = 0; b < mu.edge_count; ++b)
    for (std::size_t x = 0; x < n; ++x)
      if (in_up[x]) in_up[x | (std::size_t{1} << b)] = 1;
  for (std::size_t x = 0; x < n; ++x) {
    if (in_up[x]) {
      r.violating_upset.push_back(x);
      r.mu_upset_mass += mu.probs[x];
      r.nu_upset_mass += nu.probs[x];
    }
  }
  return r;
}

// Marginal and support validity of a coupling witness; used by tests.
inline bool coupling_is_valid_witness(const DominationReport& r, const Distribution& mu,
                                      const Distribution& nu, double tol = 1e-7) {
  if (!r.dominated) return false;
  std::vector<double> row(mu.size(), 0.0), col(nu.size(), 0.0);
  for (auto [x, y, f] : r.coupling) {
    if ((x & ~y) != 0) return false;  // support must be monotone
    row[x] += f;
    col[y] += f;
  }
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (std::abs(row[i] - mu.probs[i]) > tol) return false;
  for (std::size_t i = 0; i < nu.size(); ++i)
    if (std::abs(col[i] - nu.probs[i]) > tol) return false;
  return true;
}

}  // namespace rcpotts
