#pragma once
// The single-edge heat-bath kernel for free and wired boundary rules, and
// event-driven chain evolution. An updated edge becomes open with probability
// p when its endpoints are otherwise joined (directly, or through the wired
// boundary), and with probability p/(p+(1-p)q) when they are not; ties at the
// threshold resolve closed.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rcpotts/connectivity.hpp"
#include "rcpotts/edge_config.hpp"
#include "rcpotts/graph.hpp"
#include "rcpotts/params.hpp"
#include "rcpotts/randomness.hpp"

namespace rcpotts {

enum class BoundaryRule { Free, Wired };
enum class ChainStart { AllClosed, AllOpen };

// A boundary rule bound to one volume of a host graph. The rule's chain only
// updates edges induced by the volume; the rest are frozen closed (free) or
// open (wired). The wired rule additionally treats the volume's inner
// boundary as glued together.
struct UpdateRule {
  const Graph* graph = nullptr;
  BoundaryRule kind = BoundaryRule::Free;
  int volume = -1;  // 1-based volume index, or -1 for the full graph
  ParamPoint param;

  std::vector<std::uint8_t> active_edges;      // mask over edge ids
  std::vector<std::uint8_t> boundary_vertices; // mask; empty for free / full volume
  double threshold_connected = 0.0;
  double threshold_disconnected = 0.0;

  static UpdateRule make(const Graph& g, BoundaryRule kind, ParamPoint param,
                         const Exhaustion* exhaustion = nullptr, int volume = -1) {
    UpdateRule r;
    r.graph = &g;
    r.kind = kind;
    r.param = param;
    r.threshold_connected = param.upper_threshold();
    r.threshold_disconnected = param.lower_threshold();
    if (volume >= 1) {
      if (!exhaustion || volume > exhaustion->count())
        throw std::invalid_argument("UpdateRule: volume index out of range");
      r.volume = volume;
      r.active_edges = exhaustion->edge_mask_[volume - 1];
      if (kind == BoundaryRule::Wired)
        r.boundary_vertices = exhaustion->boundary_mask[volume - 1];
    } else {
      r.active_edges.assign(g.edge_count(), 1);
    }
    return r;
  }

  static UpdateRule free_rule(const Graph& g, ParamPoint param,
                              const Exhaustion* ex = nullptr, int volume = -1) {
    return make(g, BoundaryRule::Free, param, ex, volume);
  }

  static UpdateRule wired_rule(const Graph& g, ParamPoint param,
                               const Exhaustion* ex = nullptr, int volume = -1) {
    return make(g, BoundaryRule::Wired, param, ex, volume);
  }

  bool active(EdgeId e) const { return active_edges[e]; }
  std::uint8_t frozen_value() const { return kind == BoundaryRule::Wired ? 1 : 0; }

  EdgeConfig initial(ChainStart start) const {
    EdgeConfig c(graph->edge_count(), frozen_value());
    std::uint8_t v = start == ChainStart::AllOpen ? 1 : 0;
    for (EdgeId e = 0; e < graph->edge_count(); ++e)
      if (active_edges[e]) c[e] = v;
    return c;
  }

  ConnectivityEngine engine(ConnectivityMode mode = ConnectivityMode::Bfs,
                            std::uint32_t rebuild_every = 64) const {
    return ConnectivityEngine(*graph, &active_edges,
                              boundary_vertices.empty() ? nullptr : &boundary_vertices,
                              mode, rebuild_every);
  }
};

// Open path from x to y in config restricted to E \ {e}.
inline bool connected_without_edge(const Graph& g, const EdgeConfig& config,
                                   VertexId x, VertexId y, EdgeId e) {
  ConnectivityEngine engine(g);
  return engine.linked(config, x, y, e);
}

// Open path x..y avoiding e, or open paths from both x and y (avoiding e) to
// the boundary set. An empty boundary reduces to connected_without_edge.
inline bool connected_mod_boundary(const Graph& g, const EdgeConfig& config,
                                   VertexId x, VertexId y, EdgeId e,
                                   const std::vector<VertexId>& boundary) {
  std::vector<std::uint8_t> mask = vertex_mask(g, boundary);
  ConnectivityEngine engine(g, nullptr, boundary.empty() ? nullptr : &mask);
  return engine.linked(config, x, y, e);
}

// In-place kernel step; the engine must match the rule.
inline void apply_heat_bath(EdgeConfig& config, EdgeId edge, double u,
                            const UpdateRule& rule, ConnectivityEngine& engine) {
  auto [x, y] = rule.graph->edges[edge];
  bool joined = engine.linked(config, x, y, edge);
  double threshold = joined ? rule.threshold_connected : rule.threshold_disconnected;
  std::uint8_t old_value = config[edge];
  std::uint8_t new_value = u < threshold ? 1 : 0;
  config[edge] = new_value;
  engine.on_update(config, edge, old_value, new_value);
}

// Pure kernel step on a single edge of the rule's active set.
inline EdgeConfig heat_bath_update(const EdgeConfig& config, EdgeId edge, double u,
                                   const UpdateRule& rule) {
  if (config.size() != rule.graph->edge_count())
    throw std::invalid_argument("heat_bath_update: config size mismatch");
  if (edge >= rule.graph->edge_count() || !rule.active(edge))
    throw std::invalid_argument("heat_bath_update: edge outside the rule's active set");
  if (!(u >= 0.0 && u <= 1.0))
    throw std::invalid_argument("heat_bath_update: u must lie in [0,1]");
  EdgeConfig out = config;
  ConnectivityEngine engine = rule.engine();
  apply_heat_bath(out, edge, u, rule, engine);
  return out;
}

struct EvolveOptions {
  ConnectivityMode mode = ConnectivityMode::Bfs;
  std::uint32_t rebuild_every = 64;
};

// Applies the kernel at each event in order; events on frozen edges are
// skipped (they belong to chains on larger volumes sharing the stream).
inline EdgeConfig evolve(const EdgeConfig& start, const UpdateRule& rule,
                         const std::vector<UpdateEvent>& events,
                         const EvolveOptions& opts = {}) {
  if (start.size() != rule.graph->edge_count())
    throw std::invalid_argument("evolve: config size mismatch");
  EdgeConfig config = start;
  ConnectivityEngine engine = rule.engine(opts.mode, opts.rebuild_every);
  engine.prime(config);
  for (const UpdateEvent& ev : events) {
    if (!rule.active(ev.edge)) continue;
    apply_heat_bath(config, ev.edge, ev.u, rule, engine);
  }
  return config;
}

}  // namespace rcpotts
