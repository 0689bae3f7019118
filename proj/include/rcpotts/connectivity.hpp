#pragma once
// Connectivity queries over open-edge subgraphs: epoch-stamped BFS with
// reusable scratch, component labeling, and an optional union-find fast path
// with periodic rebuilds for long update sweeps. The two engine modes answer
// every query identically, bit for bit; a differential test enforces this.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rcpotts/edge_config.hpp"
#include "rcpotts/graph.hpp"

namespace rcpotts {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) { reset(n); }

  void reset(std::size_t n) {
    parent_.resize(n);
    size_.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
    count_ = n;
  }

  std::uint32_t find(std::uint32_t x) {
    std::uint32_t root = x;
    while (root != parent_[root]) root = parent_[root];
    while (x != root) {
      std::uint32_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // Returns the surviving root.
  std::uint32_t unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --count_;
    return a;
  }

  bool connected(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }
  std::size_t component_count() const { return count_; }
  std::uint32_t component_size(std::uint32_t x) { return size_[find(x)]; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t count_ = 0;
};

struct ComponentLabels {
  std::vector<std::int32_t> label;  // per vertex, 0..count-1 by smallest member
  std::int32_t count = 0;

  std::vector<std::uint32_t> sizes() const {
    std::vector<std::uint32_t> s(count, 0);
    for (auto l : label) ++s[l];
    return s;
  }
};

// Components of the open subgraph; isolated vertices count. When
// `active_edges` is given, edges outside the mask are ignored regardless of
// their configured value.
inline ComponentLabels label_components(const Graph& g, const EdgeConfig& config,
                                        const std::vector<std::uint8_t>* active_edges = nullptr) {
  if (config.size() != g.edge_count())
    throw std::invalid_argument("label_components: config size mismatch");
  UnionFind uf(g.vertex_count);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!config[e]) continue;
    if (active_edges && !(*active_edges)[e]) continue;
    uf.unite(g.edges[e].first, g.edges[e].second);
  }
  ComponentLabels out;
  out.label.assign(g.vertex_count, -1);
  for (VertexId v = 0; v < g.vertex_count; ++v) {
    std::uint32_t r = uf.find(v);
    if (out.label[r] < 0) out.label[r] = out.count++;
    out.label[v] = out.label[r];
  }
  return out;
}

enum class ConnectivityMode { Bfs, UnionFindRebuild };

// Per-trajectory connectivity oracle for the heat-bath predicate:
//   linked(config, x, y, e) ==
//     x and y joined by open active edges other than e, or, when a boundary
//     set is attached, both x and y reaching the boundary that way.
//
// Bfs mode answers every query by search. UnionFindRebuild keeps a union-find
// over edges opened since the last rebuild; a "disconnected" answer from it is
// conclusive (its edge set is a superset of the open edges minus e), anything
// else falls back to BFS, so results never depend on the mode.
class ConnectivityEngine {
 public:
  ConnectivityEngine(const Graph& g,
                     const std::vector<std::uint8_t>* active_edges = nullptr,
                     const std::vector<std::uint8_t>* boundary = nullptr,
                     ConnectivityMode mode = ConnectivityMode::Bfs,
                     std::uint32_t rebuild_every = 64)
      : graph_(&g),
        active_(active_edges),
        boundary_(boundary && !boundary->empty() ? boundary : nullptr),
        mode_(mode),
        rebuild_every_(rebuild_every == 0 ? 1 : rebuild_every),
        stamp_(g.vertex_count, 0),
        queue_(g.vertex_count),
        uf_(g.vertex_count),
        root_touches_boundary_(g.vertex_count, 0) {}

  bool linked(const EdgeConfig& config, VertexId x, VertexId y, EdgeId skip_edge) {
    if (mode_ == ConnectivityMode::UnionFindRebuild && uf_valid_) {
      bool uf_says = uf_.connected(x, y) ||
                     (boundary_ && root_flag(x) && root_flag(y));
      if (!uf_says) return false;  // conclusive: uf edge set is a superset
      if (!uf_dirty_ && !open_in_uf(config, skip_edge)) return true;  // exact
    }
    return bfs_linked(config, x, y, skip_edge);
  }

  // Must be called after the configuration value of `edge` has been written.
  void on_update(const EdgeConfig& config, EdgeId edge, std::uint8_t old_value,
                 std::uint8_t new_value) {
    if (mode_ != ConnectivityMode::UnionFindRebuild) return;
    ++updates_;
    if (updates_ % rebuild_every_ == 0) {
      rebuild(config);
      return;
    }
    if (!uf_valid_) return;
    if (new_value && !old_value) {
      auto [u, v] = graph_->edges[edge];
      if (boundary_) {
        bool flag = root_flag(u) || root_flag(v);
        std::uint32_t r = uf_.unite(u, v);
        if (flag) root_touches_boundary_[r] = 1;
      } else {
        uf_.unite(u, v);
      }
    } else if (!new_value && old_value) {
      uf_dirty_ = true;  // union-find cannot split; positives need BFS now
    }
  }

  void prime(const EdgeConfig& config) {
    if (mode_ == ConnectivityMode::UnionFindRebuild) rebuild(config);
  }

 private:
  bool open_edge(const EdgeConfig& config, EdgeId e) const {
    return config[e] && (!active_ || (*active_)[e]);
  }

  bool open_in_uf(const EdgeConfig& config, EdgeId e) const {
    return open_edge(config, e);
  }

  bool root_flag(VertexId v) { return root_touches_boundary_[uf_.find(v)]; }

  void rebuild(const EdgeConfig& config) {
    uf_.reset(graph_->vertex_count);
    std::fill(root_touches_boundary_.begin(), root_touches_boundary_.end(), 0);
    for (EdgeId e = 0; e < graph_->edge_count(); ++e)
      if (open_edge(config, e)) uf_.unite(graph_->edges[e].first, graph_->edges[e].second);
    if (boundary_)
      for (VertexId v = 0; v < graph_->vertex_count; ++v)
        if ((*boundary_)[v]) root_touches_boundary_[uf_.find(v)] = 1;
    uf_valid_ = true;
    uf_dirty_ = false;
  }

  // Search from x over open active edges excluding skip_edge. Returns true on
  // reaching y, or (boundary mode) when both endpoints reach the boundary.
  bool bfs_linked(const EdgeConfig& config, VertexId x, VertexId y, EdgeId skip_edge) {
    bool x_hits_boundary = false;
    if (bfs_from(config, x, y, skip_edge, &x_hits_boundary)) return true;
    if (!boundary_ || !x_hits_boundary) return false;
    bool unused = false;
    return bfs_reaches_boundary(config, y, skip_edge, &unused);
  }

  bool bfs_from(const EdgeConfig& config, VertexId start, VertexId target,
                EdgeId skip_edge, bool* hits_boundary) {
    ++epoch_;
    std::size_t head = 0, tail = 0;
    stamp_[start] = epoch_;
    queue_[tail++] = start;
    if (boundary_ && (*boundary_)[start]) *hits_boundary = true;
    while (head < tail) {
      VertexId v = queue_[head++];
      for (auto it = graph_->neighbors_begin(v); it != graph_->neighbors_end(v); ++it) {
        if (it->edge == skip_edge || !open_edge(config, it->edge)) continue;
        VertexId w = it->neighbor;
        if (stamp_[w] == epoch_) continue;
        if (w == target) return true;
        stamp_[w] = epoch_;
        queue_[tail++] = w;
        if (boundary_ && (*boundary_)[w]) *hits_boundary = true;
      }
    }
    return false;
  }

  bool bfs_reaches_boundary(const EdgeConfig& config, VertexId start,
                            EdgeId skip_edge, bool* scratch) {
    (void)scratch;
    ++epoch_;
    std::size_t head = 0, tail = 0;
    stamp_[start] = epoch_;
    queue_[tail++] = start;
    if ((*boundary_)[start]) return true;
    while (head < tail) {
      VertexId v = queue_[head++];
      for (auto it = graph_->neighbors_begin(v); it != graph_->neighbors_end(v); ++it) {
        if (it->edge == skip_edge || !open_edge(config, it->edge)) continue;
        VertexId w = it->neighbor;
        if (stamp_[w] == epoch_) continue;
        if ((*boundary_)[w]) return true;
        stamp_[w] = epoch_;
        queue_[tail++] = w;
      }
    }
    return false;
  }

  const Graph* graph_;
  const std::vector<std::uint8_t>* active_;
  const std::vector<std::uint8_t>* boundary_;
  ConnectivityMode mode_;
  std::uint32_t rebuild_every_;

  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<VertexId> queue_;

  UnionFind uf_;
  std::vector<std::uint8_t> root_touches_boundary_;
  bool uf_valid_ = false;
  bool uf_dirty_ = false;
  std::uint64_t updates_ = 0;
};

}  // namespace rcpotts
