#pragma once
// Estimators and empirical probes: cluster observables over CFTP samples,
// the Delta_q threshold gap, the coupled conditional-gap probe, and the
// simultaneous-cluster containment probe. The last two address questions the
// underlying theory leaves open; their reports are marked exploratory and
// carry full seed provenance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcpotts/cftp.hpp"
#include "rcpotts/connectivity.hpp"
#include "rcpotts/dynamics.hpp"
#include "rcpotts/graph.hpp"
#include "rcpotts/params.hpp"
#include "rcpotts/randomness.hpp"
#include "rcpotts/spin_config.hpp"

namespace rcpotts {

// min{p2 - p1, s(p2) - s(p1)} with s the disconnected heat-bath threshold;
// strictly positive whenever p1 < p2.
inline double delta_q(double p1, double p2, double q) {
  if (!(0.0 <= p1 && p1 < p2 && p2 <= 1.0))
    throw std::invalid_argument("delta_q: need 0 <= p1 < p2 <= 1");
  if (!(q >= 1.0)) throw std::invalid_argument("delta_q: q >= 1");
  double s1 = p1 / (p1 + (1.0 - p1) * q);
  double s2 = p2 / (p2 + (1.0 - p2) * q);
  return std::min(p2 - p1, s2 - s1);
}

// A cluster stands in for an infinite one when it touches the proxy set and
// carries at least one open edge; bare proxy vertices do not qualify.
inline std::vector<std::uint8_t> proxy_spanning_clusters(
    const Graph& g, const EdgeConfig& config, const ComponentLabels& labels,
    const std::vector<std::uint8_t>& proxy) {
  std::vector<std::uint8_t> touches(labels.count, 0), has_edge(labels.count, 0);
  if (!proxy.empty())
    for (VertexId v = 0; v < g.vertex_count; ++v)
      if (proxy[v]) touches[labels.label[v]] = 1;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (config[e]) has_edge[labels.label[g.edges[e].first]] = 1;
  for (int c = 0; c < labels.count; ++c) touches[c] = touches[c] && has_edge[c];
  return touches;
}

struct RunSummary {
  ParamPoint param;
  BoundaryRule rule = BoundaryRule::Free;
  int volume = -1;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t coalesce_failures = 0;

  std::vector<double> edge_open_freq;
  std::map<std::uint32_t, std::uint64_t> cluster_size_histogram;
  double largest_cluster_fraction = 0.0;
  double spanning_probability = -1.0;  // -1 when no box geometry
  std::vector<VertexId> observed_vertices;
  std::vector<double> two_point;  // row-major over observed_vertices
  std::vector<double> coalescence_windows;
  std::size_t monotone_violations = 0;  // pointwise p-monotonicity failures
};

namespace detail {

inline bool box_spans(const GraphBundle& b, const EdgeConfig& config) {
  // Connection between the two opposite faces of the first axis.
  const Graph& g = b.graph;
  ComponentLabels labels = label_components(g, config);
  std::vector<std::uint8_t> low(labels.count, 0);
  for (VertexId v = 0; v < g.vertex_count; ++v) {
    int c0 = static_cast<int>(v % b.box_side);
    if (c0 == 0) low[labels.label[v]] = 1;
  }
  for (VertexId v = 0; v < g.vertex_count; ++v) {
    int c0 = static_cast<int>(v % b.box_side);
    if (c0 == b.box_side - 1 && low[labels.label[v]]) return true;
  }
  return false;
}

}  // namespace detail

struct SweepOptions {
  std::size_t samples = 1000;
  double t_max = 4096.0;
  std::uint64_t seed = 1;
  std::vector<VertexId> observe;  // two-point set; defaults to innermost volume
  EvolveOptions evolve;
};

// Exact CFTP sampling at every grid point, with shared per-sample randomness
// across the grid so the coupled monotonicity in p holds pointwise, every
// seed. Summaries are aggregated per (p, q); any pointwise violation of the
// p-monotone coupling is counted as a bug indicator, never smoothed over.
inline std::vector<RunSummary> sweep_summary(const GraphBundle& bundle,
                                             const std::vector<ParamPoint>& grid,
                                             BoundaryRule rule, int volume,
                                             const SweepOptions& opts = {}) {
  if (grid.empty()) throw std::invalid_argument("sweep_summary: empty grid");
  const Graph& g = bundle.graph;

  std::vector<VertexId> observe = opts.observe;
  if (observe.empty()) {
    observe = bundle.exhaustion.volumes.front();
    if (observe.size() > 16) observe.resize(16);
  }

  // Group grid points by q, ascending p within the group, so the coupled
  // monotone check walks each column in order.
  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (grid[a].q != grid[b].q) return grid[a].q < grid[b].q;
    return grid[a].p < grid[b].p;
  });

  std::vector<RunSummary> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    RunSummary& s = out[i];
    s.param = grid[i];
    s.rule = rule;
    s.volume = volume;
    s.seed = opts.seed;
    s.samples = opts.samples;
    s.edge_open_freq.assign(g.edge_count(), 0.0);
    s.two_point.assign(observe.size() * observe.size(), 0.0);
    s.observed_vertices = observe;
  }

  bool spanning_possible = bundle.box_dim > 0;
  std::vector<EdgeConfig> prev_config(opts.samples);
  std::vector<std::uint8_t> prev_valid(opts.samples, 0);
  double last_q = std::nan("");

  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    std::size_t gi = order[oi];
    RunSummary& s = out[gi];
    UpdateRule ur = UpdateRule::make(g, rule, grid[gi], &bundle.exhaustion, volume);
    bool new_column = !(grid[gi].q == last_q);
    last_q = grid[gi].q;
    if (new_column) std::fill(prev_valid.begin(), prev_valid.end(), 0);

    std::size_t spanning_hits = 0;
    for (std::size_t k = 0; k < opts.samples; ++k) {
      CftpResult res = cftp_exact(ur, derive_seed(opts.seed, k), opts.t_max, opts.evolve);
      if (!res.coalesced) {
        ++s.coalesce_failures;
        prev_valid[k] = 0;
        continue;
      }
      s.coalescence_windows.push_back(res.window);
      const EdgeConfig& c = res.config;
      for (EdgeId e = 0; e < g.edge_count(); ++e) s.edge_open_freq[e] += c[e];

      ComponentLabels labels = label_components(g, c);
      std::vector<std::uint32_t> sizes = labels.sizes();
      std::uint32_t largest = 0;
      for (std::uint32_t sz : sizes) {
        ++s.cluster_size_histogram[sz];
        largest = std::max(largest, sz);
      }
      s.largest_cluster_fraction += double(largest) / g.vertex_count;
      if (spanning_possible && detail::box_spans(bundle, c)) ++spanning_hits;
      for (std::size_t a = 0; a < observe.size(); ++a)
        for (std::size_t b = 0; b < observe.size(); ++b)
          if (labels.label[observe[a]] == labels.label[observe[b]])
            s.two_point[a * observe.size() + b] += 1.0;

      if (prev_valid[k] && !config_leq(prev_config[k], c)) ++s.monotone_violations;
      prev_config[k] = c;
      prev_valid[k] = 1;
    }

    std::size_t n = opts.samples - s.coalesce_failures;
    if (n > 0) {
      for (double& f : s.edge_open_freq) f /= n;
      for (double& f : s.two_point) f /= n;
      s.largest_cluster_fraction /= n;
      if (spanning_possible) s.spanning_probability = double(spanning_hits) / n;
    }
  }
  return out;
}

struct GapBin {
  std::uint64_t count = 0;
  std::uint64_t joint = 0;  // upper open while lower closed

  double estimate() const { return count ? double(joint) / count : 0.0; }
  double stderr_normal() const {
    if (!count) return 0.0;
    double p = estimate();
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / count);
  }
};

struct FlipGapReport {
  bool exploratory = true;  // the underlying question is open
  double p1 = 0.0, p2 = 0.0, q = 1.0;
  EdgeId edge = 0;
  std::uint64_t seed = 0;
  std::size_t seeds_run = 0;
  double window = 0.0;
  double delta_q_reference = 0.0;
  std::map<std::string, GapBin> bins;  // key: lower off-e bits | upper off-e bits
  std::size_t inconclusive_bins = 0;   // below the count floor
  double min_estimate = 1.0;           // over conclusive bins
  double min_estimate_stderr = 0.0;
  bool any_conclusive = false;
};

// Estimates P(upper edge open, lower edge closed | joint off-edge
// configuration) across a shared-randomness coupling at p1 < p2. Evidence
// only: bins with too few hits are reported as inconclusive.
inline FlipGapReport coupled_flip_gap_probe(const Graph& g, double p1, double p2,
                                            double q, EdgeId edge, std::size_t seeds,
                                            double T, std::uint64_t seed,
                                            std::uint64_t min_bin_count = 20) {
  if (!(p1 < p2)) throw std::invalid_argument("coupled_flip_gap_probe: need p1 < p2");
  FlipGapReport rep;
  rep.p1 = p1;
  rep.p2 = p2;
  rep.q = q;
  rep.edge = edge;
  rep.seed = seed;
  rep.seeds_run = seeds;
  rep.window = T;
  rep.delta_q_reference = delta_q(p1, p2, q);

  UpdateRule lower_rule = UpdateRule::free_rule(g, ParamPoint(p1, q));
  UpdateRule upper_rule = UpdateRule::free_rule(g, ParamPoint(p2, q));
  for (std::size_t k = 0; k < seeds; ++k) {
    std::vector<UpdateEvent> events = events_in_window(derive_seed(seed, k), g, T);
    EdgeConfig lo = run_from_past(lower_rule, events, ChainStart::AllClosed);
    EdgeConfig hi = run_from_past(upper_rule, events, ChainStart::AllClosed);
    std::string key;
    key.reserve(2 * g.edge_count() + 1);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (e != edge) key.push_back(lo[e] ? '1' : '0');
    key.push_back('|');
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (e != edge) key.push_back(hi[e] ? '1' : '0');
    GapBin& bin = rep.bins[key];
    ++bin.count;
    bin.joint += hi[edge] == 1 && lo[edge] == 0;
  }

  for (auto& [key, bin] : rep.bins) {
    if (bin.count < min_bin_count) {
      ++rep.inconclusive_bins;
      continue;
    }
    rep.any_conclusive = true;
    if (bin.estimate() < rep.min_estimate) {
      rep.min_estimate = bin.estimate();
      rep.min_estimate_stderr = bin.stderr_normal();
    }
  }
  if (!rep.any_conclusive) rep.min_estimate = 0.0;
  return rep;
}

struct ClusterContainmentReport {
  bool exploratory = true;
  // For each proxy-spanning cluster of the upper configuration, the number of
  // proxy-spanning clusters of the lower one inside it.
  std::vector<int> counts;
};

// Requires lower <= upper pointwise (each lower cluster then sits inside one
// upper cluster).
inline ClusterContainmentReport simultaneous_cluster_probe(
    const Graph& g, const EdgeConfig& lower, const EdgeConfig& upper,
    const std::vector<std::uint8_t>& proxy) {
  if (!config_leq(lower, upper))
    throw std::invalid_argument("simultaneous_cluster_probe: configurations not ordered");
  ComponentLabels ll = label_components(g, lower);
  ComponentLabels ul = label_components(g, upper);
  std::vector<std::uint8_t> lspan = proxy_spanning_clusters(g, lower, ll, proxy);
  std::vector<std::uint8_t> uspan = proxy_spanning_clusters(g, upper, ul, proxy);

  // Map each spanning lower cluster to the upper cluster containing it.
  std::vector<int> rep_vertex(ll.count, -1);
  for (VertexId v = 0; v < g.vertex_count; ++v)
    if (rep_vertex[ll.label[v]] < 0) rep_vertex[ll.label[v]] = static_cast<int>(v);

  std::vector<int> per_upper(ul.count, 0);
  for (int c = 0; c < ll.count; ++c)
    if (lspan[c]) ++per_upper[ul.label[rep_vertex[c]]];

  ClusterContainmentReport rep;
  for (int c = 0; c < ul.count; ++c)
    if (uspan[c]) rep.counts.push_back(per_upper[c]);
  return rep;
}

// Empirical P(spin_x = spin_y) over samples.
inline double potts_correlation(const std::vector<SpinConfig>& samples, VertexId x,
                                VertexId y) {
  if (samples.empty()) throw std::invalid_argument("potts_correlation: need samples");
  std::size_t agree = 0;
  for (const SpinConfig& s : samples) agree += s.spins[x] == s.spins[y];
  return double(agree) / samples.size();
}

// The Edwards-Sokal prediction for P(spin_x = spin_y) from an empirical
// connectivity estimate.
inline double correlation_from_connectivity(double connect_prob, int q) {
  return 1.0 / q + (1.0 - 1.0 / q) * connect_prob;
}

}  // namespace rcpotts
