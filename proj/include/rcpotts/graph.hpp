#pragma once
// Finite simple graphs with canonical edge ids, nested exhaustion volumes,
// inner boundaries, and brute-force automorphism enumeration for small
// instances. Graphs are immutable after construction and safe to share
// across threads.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rcpotts {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using VertexPermutation = std::vector<VertexId>;

struct Graph {
  VertexId vertex_count = 0;
  // Canonical edge list: pairs (u, v) with u < v, sorted lexicographically.
  // The edge id is the position in this list, so ids are stable across runs
  // and platforms.
  std::vector<std::pair<VertexId, VertexId>> edges;

  struct Incidence {
    VertexId neighbor;
    EdgeId edge;
  };
  std::vector<std::uint32_t> adj_offset;  // size vertex_count + 1
  std::vector<Incidence> adj;             // grouped by vertex, neighbor-sorted
  VertexId max_degree = 0;

  std::size_t edge_count() const { return edges.size(); }

  std::uint32_t degree(VertexId v) const {
    return adj_offset[v + 1] - adj_offset[v];
  }

  const Incidence* neighbors_begin(VertexId v) const {
    return adj.data() + adj_offset[v];
  }
  const Incidence* neighbors_end(VertexId v) const {
    return adj.data() + adj_offset[v + 1];
  }

  bool has_edge(VertexId u, VertexId v) const {
    return edge_id(u, v) >= 0;
  }

  // Edge id for {u, v}, or -1 when absent.
  long edge_id(VertexId u, VertexId v) const {
    if (u == v) return -1;
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
    if (it == edges.end() || *it != std::make_pair(u, v)) return -1;
    return static_cast<long>(it - edges.begin());
  }

  // Validates simplicity and connectivity, canonicalizes edge ids.
  static Graph from_edges(VertexId vertex_count,
                          std::vector<std::pair<VertexId, VertexId>> edge_list) {
    if (vertex_count == 0) throw std::invalid_argument("Graph: empty vertex set");
    for (auto& [u, v] : edge_list) {
      if (u == v) throw std::invalid_argument("Graph: self-loop rejected");
      if (u >= vertex_count || v >= vertex_count)
        throw std::invalid_argument("Graph: edge endpoint out of range");
      if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    if (std::adjacent_find(edge_list.begin(), edge_list.end()) != edge_list.end())
      throw std::invalid_argument("Graph: duplicate edge rejected");

    Graph g;
    g.vertex_count = vertex_count;
    g.edges = std::move(edge_list);
    g.build_adjacency();
    if (!g.is_connected())
      throw std::invalid_argument("Graph: must be connected");
    return g;
  }

 private:
  void build_adjacency() {
    std::vector<std::uint32_t> deg(vertex_count, 0);
    for (auto& [u, v] : edges) {
      ++deg[u];
      ++deg[v];
    }
    adj_offset.assign(vertex_count + 1, 0);
    for (VertexId v = 0; v < vertex_count; ++v)
      adj_offset[v + 1] = adj_offset[v] + deg[v];
    adj.resize(adj_offset.back());
    std::vector<std::uint32_t> fill(adj_offset.begin(), adj_offset.end() - 1);
    for (EdgeId e = 0; e < edges.size(); ++e) {
      auto [u, v] = edges[e];
      adj[fill[u]++] = {v, e};
      adj[fill[v]++] = {u, e};
    }
    for (VertexId v = 0; v < vertex_count; ++v) {
      std::sort(adj.begin() + adj_offset[v], adj.begin() + adj_offset[v + 1],
                [](const Incidence& a, const Incidence& b) {
                  return a.neighbor < b.neighbor;
                });
      max_degree = std::max(max_degree, degree(v));
    }
  }

  bool is_connected() const {
    if (vertex_count == 0) return false;
    std::vector<std::uint8_t> seen(vertex_count, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (auto it = neighbors_begin(v); it != neighbors_end(v); ++it) {
        if (!seen[it->neighbor]) {
          seen[it->neighbor] = 1;
          ++visited;
          stack.push_back(it->neighbor);
        }
      }
    }
    return visited == vertex_count;
  }
};

// {x in subset : x has a neighbor outside subset}, sorted.
inline std::vector<VertexId> inner_boundary(const Graph& g,
                                            const std::vector<VertexId>& subset) {
  std::vector<std::uint8_t> in(g.vertex_count, 0);
  for (VertexId v : subset) {
    if (v >= g.vertex_count)
      throw std::invalid_argument("inner_boundary: vertex out of range");
    in[v] = 1;
  }
  std::vector<VertexId> out;
  for (VertexId v : subset) {
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it) {
      if (!in[it->neighbor]) {
        out.push_back(v);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Edge ids with both endpoints in subset, sorted.
inline std::vector<EdgeId> induced_edges(const Graph& g,
                                         const std::vector<VertexId>& subset) {
  std::vector<std::uint8_t> in(g.vertex_count, 0);
  for (VertexId v : subset) {
    if (v >= g.vertex_count)
      throw std::invalid_argument("induced_edges: vertex out of range");
    in[v] = 1;
  }
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.edges.size(); ++e)
    if (in[g.edges[e].first] && in[g.edges[e].second]) out.push_back(e);
  return out;
}

inline std::vector<std::uint8_t> vertex_mask(const Graph& g,
                                             const std::vector<VertexId>& vs) {
  std::vector<std::uint8_t> m(g.vertex_count, 0);
  for (VertexId v : vs) m[v] = 1;
  return m;
}

inline std::vector<std::uint8_t> edge_mask(const Graph& g,
                                           const std::vector<EdgeId>& es) {
  std::vector<std::uint8_t> m(g.edge_count(), 0);
  for (EdgeId e : es) m[e] = 1;
  return m;
}

// Nested volumes V_1 c V_2 c ... c V_m = V with their induced edge sets and
// inner boundaries, precomputed as masks for the samplers.
struct Exhaustion {
  std::vector<std::vector<VertexId>> volumes;
  std::vector<std::vector<EdgeId>> induced;
  std::vector<std::vector<VertexId>> boundaries;
  std::vector<std::vector<std::uint8_t>> volume_mask;
  std::vector<std::vector<std::uint8_t>> edge_mask_;
  std::vector<std::vector<std::uint8_t>> boundary_mask;

  int count() const { return static_cast<int>(volumes.size()); }

  static Exhaustion build(const Graph& g,
                          std::vector<std::vector<VertexId>> vols) {
    if (vols.empty()) throw std::invalid_argument("Exhaustion: no volumes");
    Exhaustion ex;
    for (auto& v : vols) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    for (std::size_t i = 0; i + 1 < vols.size(); ++i) {
      if (vols[i].size() >= vols[i + 1].size() ||
          !std::includes(vols[i + 1].begin(), vols[i + 1].end(),
                         vols[i].begin(), vols[i].end()))
        throw std::invalid_argument("Exhaustion: volumes must be strictly nested");
    }
    if (vols.back().size() != g.vertex_count)
      throw std::invalid_argument("Exhaustion: final volume must cover all vertices");
    for (auto& v : vols) {
      ex.induced.push_back(induced_edges(g, v));
      ex.boundaries.push_back(inner_boundary(g, v));
      ex.volume_mask.push_back(vertex_mask(g, v));
      ex.edge_mask_.push_back(edge_mask(g, ex.induced.back()));
      ex.boundary_mask.push_back(vertex_mask(g, ex.boundaries.back()));
    }
    ex.volumes = std::move(vols);
    return ex;
  }
};

// A graph plus the metadata the samplers and probes need: its exhaustion,
// the outer boundary used as the finite stand-in for "infinity", and the
// builder family string recorded in reports.
struct GraphBundle {
  Graph graph;
  Exhaustion exhaustion;
  std::vector<VertexId> outer_boundary;
  std::string family;
  int box_dim = 0;   // nonzero only for box family
  int box_side = 0;
};

namespace detail {

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace detail

// The d-dimensional box {0,...,side-1}^d with nearest-neighbor edges and
// centered nested sub-box volumes, innermost first. Vertex id is the
// row-major coordinate index (first coordinate fastest).
inline GraphBundle build_box(int dimension, int side, int volumes) {
  if (dimension < 1) throw std::invalid_argument("build_box: dimension >= 1");
  if (side < 2) throw std::invalid_argument("build_box: side >= 2");
  if (volumes < 1) throw std::invalid_argument("build_box: volumes >= 1");
  if (side - 2 * (volumes - 1) < 1)
    throw std::invalid_argument("build_box: nested sub-boxes do not fit");
  std::uint64_t n64 = detail::ipow(side, dimension);
  if (n64 > (1u << 26)) throw std::invalid_argument("build_box: too many vertices");
  VertexId n = static_cast<VertexId>(n64);

  auto coord = [&](VertexId v, int k) {
    for (int i = 0; i < k; ++i) v /= side;
    return static_cast<int>(v % side);
  };

  std::vector<std::pair<VertexId, VertexId>> edge_list;
  std::uint64_t stride = 1;
  for (int k = 0; k < dimension; ++k) {
    for (VertexId v = 0; v < n; ++v)
      if (coord(v, k) < side - 1)
        edge_list.emplace_back(v, static_cast<VertexId>(v + stride));
    stride *= side;
  }

  GraphBundle b;
  b.graph = Graph::from_edges(n, std::move(edge_list));
  b.box_dim = dimension;
  b.box_side = side;
  b.family = "box:dim=" + std::to_string(dimension) +
             ",side=" + std::to_string(side) +
             ",vols=" + std::to_string(volumes);

  std::vector<std::vector<VertexId>> vols;
  for (int i = 1; i <= volumes; ++i) {
    int margin = volumes - i;
    int lo = margin, hi = side - 1 - margin;
    std::vector<VertexId> vol;
    for (VertexId v = 0; v < n; ++v) {
      bool inside = true;
      for (int k = 0; k < dimension && inside; ++k)
        inside = coord(v, k) >= lo && coord(v, k) <= hi;
      if (inside) vol.push_back(v);
    }
    vols.push_back(std::move(vol));
  }
  b.exhaustion = Exhaustion::build(b.graph, std::move(vols));

  for (VertexId v = 0; v < n; ++v) {
    for (int k = 0; k < dimension; ++k) {
      int c = coord(v, k);
      if (c == 0 || c == side - 1) {
        b.outer_boundary.push_back(v);
        break;
      }
    }
  }
  return b;
}

// The d-dimensional discrete torus (side >= 3). Closed surface: no outer
// boundary, single full volume.
inline GraphBundle build_torus(int dimension, int side) {
  if (dimension < 1) throw std::invalid_argument("build_torus: dimension >= 1");
  if (side < 3) throw std::invalid_argument("build_torus: side >= 3");
  std::uint64_t n64 = detail::ipow(side, dimension);
  if (n64 > (1u << 26)) throw std::invalid_argument("build_torus: too many vertices");
  VertexId n = static_cast<VertexId>(n64);

  auto shift = [&](VertexId v, int k, int by) {
    std::uint64_t stride = detail::ipow(side, k);
    int c = static_cast<int>((v / stride) % side);
    int nc = (c + by + side) % side;
    return static_cast<VertexId>(v + std::uint64_t(nc - c) * stride);
  };

  std::vector<std::pair<VertexId, VertexId>> edge_list;
  for (int k = 0; k < dimension; ++k)
    for (VertexId v = 0; v < n; ++v) edge_list.emplace_back(v, shift(v, k, 1));

  GraphBundle b;
  b.graph = Graph::from_edges(n, std::move(edge_list));
  b.family = "torus:dim=" + std::to_string(dimension) +
             ",side=" + std::to_string(side);
  std::vector<VertexId> full(n);
  std::iota(full.begin(), full.end(), 0);
  b.exhaustion = Exhaustion::build(b.graph, {full});
  return b;
}

// All side^d translations of the torus, as vertex permutations (identity
// included). These are automorphisms, supplied explicitly because the
// brute-force enumerator caps out well below torus sizes.
inline std::vector<VertexPermutation> torus_translations(int dimension, int side) {
  std::uint64_t n = detail::ipow(side, dimension);
  std::vector<VertexPermutation> out;
  std::vector<int> shift(dimension, 0);
  auto apply = [&](VertexId v) {
    VertexId r = 0;
    std::uint64_t stride = 1;
    for (int k = 0; k < dimension; ++k) {
      int c = static_cast<int>((v / stride) % side);
      r += static_cast<VertexId>(((c + shift[k]) % side) * stride);
      stride *= side;
    }
    return r;
  };
  while (true) {
    VertexPermutation perm(n);
    for (VertexId v = 0; v < n; ++v) perm[v] = apply(v);
    out.push_back(std::move(perm));
    int k = 0;
    while (k < dimension && ++shift[k] == side) shift[k++] = 0;
    if (k == dimension) break;
  }
  return out;
}

inline GraphBundle make_complete(int n) {
  if (n < 2) throw std::invalid_argument("make_complete: n >= 2");
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId u = 0; u + 1 < static_cast<VertexId>(n); ++u)
    for (VertexId v = u + 1; v < static_cast<VertexId>(n); ++v) e.emplace_back(u, v);
  GraphBundle b;
  b.graph = Graph::from_edges(n, std::move(e));
  b.family = "complete:n=" + std::to_string(n);
  std::vector<VertexId> full(n);
  std::iota(full.begin(), full.end(), 0);
  b.exhaustion = Exhaustion::build(b.graph, {full});
  return b;
}

inline GraphBundle make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("make_cycle: n >= 3");
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v)
    e.emplace_back(v, static_cast<VertexId>((v + 1) % n));
  GraphBundle b;
  b.graph = Graph::from_edges(n, std::move(e));
  b.family = "cycle:n=" + std::to_string(n);
  std::vector<VertexId> full(n);
  std::iota(full.begin(), full.end(), 0);
  b.exhaustion = Exhaustion::build(b.graph, {full});
  return b;
}

inline GraphBundle make_path(int n) {
  if (n < 2) throw std::invalid_argument("make_path: n >= 2");
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 0; v + 1 < static_cast<VertexId>(n); ++v)
    e.emplace_back(v, v + 1);
  GraphBundle b;
  b.graph = Graph::from_edges(n, std::move(e));
  b.family = "path:n=" + std::to_string(n);
  std::vector<VertexId> full(n);
  std::iota(full.begin(), full.end(), 0);
  b.exhaustion = Exhaustion::build(b.graph, {full});
  b.outer_boundary = {0, static_cast<VertexId>(n - 1)};
  return b;
}

// Rooted tree where the root and every internal vertex have `branching`
// children, truncated at `depth`. Volumes are balls around the root of the
// last `volumes` radii; the outer boundary is the deepest leaf shell.
inline GraphBundle make_tree(int branching, int depth, int volumes = 1) {
  if (branching < 2) throw std::invalid_argument("make_tree: branching >= 2");
  if (depth < 1) throw std::invalid_argument("make_tree: depth >= 1");
  if (volumes < 1 || volumes > depth)
    throw std::invalid_argument("make_tree: volumes must lie in [1, depth]");
  std::vector<std::pair<VertexId, VertexId>> e;
  std::vector<int> level{0};
  std::vector<VertexId> frontier{0};
  VertexId next = 1;
  for (int d = 1; d <= depth; ++d) {
    std::vector<VertexId> nf;
    for (VertexId parent : frontier) {
      for (int c = 0; c < branching; ++c) {
        e.emplace_back(parent, next);
        level.push_back(d);
        nf.push_back(next++);
      }
    }
    frontier = std::move(nf);
  }
  GraphBundle b;
  b.graph = Graph::from_edges(next, std::move(e));
  b.family = "tree:branch=" + std::to_string(branching) +
             ",depth=" + std::to_string(depth) +
             ",vols=" + std::to_string(volumes);
  std::vector<std::vector<VertexId>> vols;
  for (int i = 0; i < volumes; ++i) {
    int radius = depth - volumes + 1 + i;
    std::vector<VertexId> ball;
    for (VertexId v = 0; v < next; ++v)
      if (level[v] <= radius) ball.push_back(v);
    vols.push_back(std::move(ball));
  }
  b.exhaustion = Exhaustion::build(b.graph, std::move(vols));
  for (VertexId v = 0; v < next; ++v)
    if (level[v] == depth) b.outer_boundary.push_back(v);
  return b;
}

// Relabels `subset` to 0..k-1 (order preserved) and keeps its induced edges.
// Edge ids of the result are canonical for the new labels.
struct InducedSubgraph {
  Graph graph;
  std::vector<VertexId> to_host;    // new id -> host id
  std::vector<long> from_host;      // host id -> new id or -1
  std::vector<EdgeId> edge_to_host; // new edge id -> host edge id
};

inline InducedSubgraph induced_subgraph(const Graph& g,
                                        std::vector<VertexId> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  InducedSubgraph out;
  out.from_host.assign(g.vertex_count, -1);
  for (std::size_t i = 0; i < subset.size(); ++i)
    out.from_host[subset[i]] = static_cast<long>(i);
  out.to_host = subset;
  std::vector<std::pair<VertexId, VertexId>> e;
  std::vector<EdgeId> host_edges = induced_edges(g, subset);
  for (EdgeId he : host_edges) {
    auto [u, v] = g.edges[he];
    e.emplace_back(static_cast<VertexId>(out.from_host[u]),
                   static_cast<VertexId>(out.from_host[v]));
  }
  // A monotone relabeling keeps sorted pairs sorted, so host edge order and
  // new edge order agree.
  out.graph = Graph::from_edges(static_cast<VertexId>(subset.size()), e);
  out.edge_to_host = host_edges;
  return out;
}

inline VertexPermutation invert_permutation(const VertexPermutation& p) {
  VertexPermutation inv(p.size());
  for (VertexId v = 0; v < p.size(); ++v) inv[p[v]] = v;
  return inv;
}

inline VertexPermutation compose(const VertexPermutation& outer,
                                 const VertexPermutation& inner) {
  VertexPermutation r(inner.size());
  for (VertexId v = 0; v < inner.size(); ++v) r[v] = outer[inner[v]];
  return r;
}

inline bool is_automorphism(const Graph& g, const VertexPermutation& perm) {
  if (perm.size() != g.vertex_count) return false;
  for (auto [u, v] : g.edges)
    if (!g.has_edge(perm[u], perm[v])) return false;
  return true;
}

// Edge image map: edge {x,y} -> edge {perm(x), perm(y)}.
inline std::vector<EdgeId> edge_permutation(const Graph& g,
                                            const VertexPermutation& perm) {
  std::vector<EdgeId> out(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    long id = g.edge_id(perm[u], perm[v]);
    if (id < 0) throw std::invalid_argument("edge_permutation: not an automorphism");
    out[e] = static_cast<EdgeId>(id);
  }
  return out;
}

// All automorphisms by backtracking over degree-compatible images.
// Deliberately capped: for larger graphs supply known symmetries (e.g.
// torus_translations) instead.
inline std::vector<VertexPermutation> automorphisms(const Graph& g,
                                                    VertexId cap = 12) {
  if (g.vertex_count > cap)
    throw std::invalid_argument(
        "automorphisms: vertex count exceeds enumeration cap; supply known "
        "symmetries as explicit permutations instead");
  const VertexId n = g.vertex_count;
  std::vector<std::uint8_t> adj_matrix(std::size_t(n) * n, 0);
  for (auto [u, v] : g.edges)
    adj_matrix[std::size_t(u) * n + v] = adj_matrix[std::size_t(v) * n + u] = 1;

  std::vector<VertexPermutation> result;
  VertexPermutation image(n);
  std::vector<std::uint8_t> used(n, 0);
  auto backtrack = [&](auto&& self, VertexId k) -> void {
    if (k == n) {
      result.push_back(image);
      return;
    }
    for (VertexId v = 0; v < n; ++v) {
      if (used[v] || g.degree(v) != g.degree(k)) continue;
      bool ok = true;
      for (VertexId j = 0; j < k && ok; ++j)
        ok = adj_matrix[std::size_t(k) * n + j] ==
             adj_matrix[std::size_t(v) * n + image[j]];
      if (!ok) continue;
      used[v] = 1;
      image[k] = v;
      self(self, k + 1);
      used[v] = 0;
    }
  };
  backtrack(backtrack, 0);
  return result;
}

}  // namespace rcpotts
