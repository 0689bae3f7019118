#pragma once
// Edwards-Sokal spin assignment on top of random-cluster configurations, the
// beta <-> p conversion, and the equivariant factor map from an i.i.d. vertex
// field to a spin configuration: derive per-edge streams from the field, run
// the wired from-the-past dynamics, then color clusters from the field's
// component uniforms and spins.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rcpotts/cftp.hpp"
#include "rcpotts/connectivity.hpp"
#include "rcpotts/dynamics.hpp"
#include "rcpotts/graph.hpp"
#include "rcpotts/randomness.hpp"
#include "rcpotts/spin_config.hpp"

namespace rcpotts {

inline double beta_to_p(double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta_to_p: beta >= 0");
  return -std::expm1(-2.0 * beta);
}

// Returns +infinity at p = 1.
inline double p_to_beta(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p_to_beta: p in [0,1]");
  return -0.5 * std::log1p(-p);
}

// One uniform and one spin per vertex. A cluster's spin is the spin of its
// uniform-minimizing vertex: uniform over {1..q} per cluster, independent
// across clusters, and a pure function of the field restricted to the
// cluster.
struct ComponentRandomness {
  std::vector<double> u_star;
  std::vector<int> spin;
};

inline ComponentRandomness component_randomness(std::uint64_t seed,
                                                VertexId vertex_count, int q) {
  if (q < 2) throw std::invalid_argument("component_randomness: q >= 2");
  ComponentRandomness cr;
  cr.u_star.resize(vertex_count);
  cr.spin.resize(vertex_count);
  for (VertexId v = 0; v < vertex_count; ++v) {
    cr.u_star[v] = uniform_at(seed, scope::vertex_component(v));
    double u = uniform_at(seed, scope::vertex_spin(v));
    cr.spin[v] = std::min(1 + static_cast<int>(u * q), q);
  }
  return cr;
}

inline ComponentRandomness component_randomness(const VertexField& field) {
  ComponentRandomness cr;
  cr.u_star.resize(field.vertex_count());
  cr.spin.resize(field.vertex_count());
  for (VertexId v = 0; v < field.vertex_count(); ++v) {
    cr.u_star[v] = field.component_uniform(v);
    cr.spin[v] = field.component_spin(v);
  }
  return cr;
}

// Clusters intersecting the proxy set (the finite stand-in for infinite
// clusters) are pinned to spin r; every other cluster takes the spin of its
// u_star-minimizing vertex. An empty proxy is the free assignment.
inline SpinConfig assign_spins_wired(const Graph& g, const EdgeConfig& rc_config,
                                     int r, const std::vector<std::uint8_t>& proxy,
                                     const ComponentRandomness& comp, int q) {
  if (q < 2) throw std::invalid_argument("assign_spins_wired: q >= 2");
  if (r < 1 || r > q) throw std::invalid_argument("assign_spins_wired: r in 1..q");
  if (comp.u_star.size() != g.vertex_count || comp.spin.size() != g.vertex_count)
    throw std::invalid_argument("assign_spins_wired: randomness size mismatch");
  ComponentLabels labels = label_components(g, rc_config);
  std::vector<std::uint8_t> pinned(labels.count, 0);
  if (!proxy.empty()) {
    if (proxy.size() != g.vertex_count)
      throw std::invalid_argument("assign_spins_wired: proxy mask size mismatch");
    for (VertexId v = 0; v < g.vertex_count; ++v)
      if (proxy[v]) pinned[labels.label[v]] = 1;
  }
  std::vector<long> argmin(labels.count, -1);
  for (VertexId v = 0; v < g.vertex_count; ++v) {
    long& a = argmin[labels.label[v]];
    if (a < 0 || comp.u_star[v] < comp.u_star[a]) a = v;
  }
  SpinConfig s(q, g.vertex_count);
  for (VertexId v = 0; v < g.vertex_count; ++v) {
    int c = labels.label[v];
    s.spins[v] = pinned[c] ? r : comp.spin[argmin[c]];
  }
  return s;
}

inline SpinConfig assign_spins_free(const Graph& g, const EdgeConfig& rc_config,
                                    const ComponentRandomness& comp, int q) {
  return assign_spins_wired(g, rc_config, 1, {}, comp, q);
}

struct FactorResult {
  SpinConfig spins;
  EdgeConfig rc_config;
  std::vector<std::uint8_t> proxy;  // vertex mask the pinned spin used
};

// Vertices at or beyond the volume's inner boundary stand in for infinity:
// the complement of the volume's interior. Full volume with empty boundary
// gives an empty proxy.
inline std::vector<std::uint8_t> infinite_proxy_mask(const Graph& g,
                                                     const Exhaustion* ex,
                                                     int volume) {
  std::vector<std::uint8_t> proxy(g.vertex_count, 0);
  bool any = false;
  if (volume >= 1) {
    if (!ex || volume > ex->count())
      throw std::invalid_argument("infinite_proxy_mask: volume out of range");
    const auto& vol = ex->volume_mask[volume - 1];
    const auto& bnd = ex->boundary_mask[volume - 1];
    for (VertexId v = 0; v < g.vertex_count; ++v) {
      proxy[v] = !vol[v] || bnd[v];
      any |= proxy[v];
    }
  }
  if (!any) proxy.clear();
  return proxy;
}

// The deterministic, automorphism-equivariant map from an i.i.d. vertex field
// to a spin configuration: (1) each edge adopts a slotted vertex stream,
// (2) the wired from-the-past chain at p = 1 - e^{-2 beta} runs over (-T, 0],
// (3) proxy-touching clusters take spin r, every other cluster the spin of
// its component-uniform minimizer.
inline FactorResult factor_map(const Graph& g, const VertexField& field, int q,
                               double beta, int r, double T,
                               const Exhaustion* exhaustion = nullptr, int volume = -1,
                               const EvolveOptions& opts = {}) {
  if (field.spin_states() != q)
    throw std::invalid_argument("factor_map: field spin states must equal q");
  double p = beta_to_p(beta);
  UpdateRule rule = UpdateRule::wired_rule(g, ParamPoint(p, double(q)), exhaustion, volume);
  EdgeStreamAssignment assignment = edge_randomness_from_vertices(g, field);
  std::vector<UpdateEvent> events = events_in_window(assignment, g, T);

  FactorResult out;
  out.rc_config = run_from_past(rule, events, ChainStart::AllOpen, opts);
  out.proxy = infinite_proxy_mask(g, exhaustion, volume);
  out.spins = assign_spins_wired(g, out.rc_config, r, out.proxy,
                                 component_randomness(field), q);
  return out;
}

// theta_gamma: relabeled configuration, (theta s)(x) = s(gamma^{-1} x).
inline SpinConfig permute_spins(const SpinConfig& s, const VertexPermutation& gamma) {
  SpinConfig out(s.q, s.spins.size());
  for (VertexId x = 0; x < s.spins.size(); ++x) out.spins[gamma[x]] = s.spins[x];
  return out;
}

inline EdgeConfig permute_config(const Graph& g, const EdgeConfig& c,
                                 const VertexPermutation& gamma) {
  std::vector<EdgeId> emap = edge_permutation(g, gamma);
  EdgeConfig out(c.size());
  for (EdgeId e = 0; e < c.size(); ++e) out[emap[e]] = c[e];
  return out;
}

}  // namespace rcpotts
