#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "rcpotts/graph.hpp"
#include "rcpotts/serialize.hpp"

using namespace rcpotts;

TEST_CASE("boxes have the expected shape", "[graph]") {
  SECTION("1d side 3 is the path on 3 vertices") {
    GraphBundle b = build_box(1, 3, 1);
    CHECK(b.graph.vertex_count == 3);
    CHECK(b.graph.edge_count() == 2);
    CHECK(b.graph.max_degree == 2);
  }
  SECTION("2x2 grid is the 4-cycle") {
    GraphBundle b = build_box(2, 2, 1);
    CHECK(b.graph.vertex_count == 4);
    CHECK(b.graph.edge_count() == 4);
    for (VertexId v = 0; v < 4; ++v) CHECK(b.graph.degree(v) == 2);
  }
  SECTION("4x4 grid with two volumes") {
    GraphBundle b = build_box(2, 4, 2);
    CHECK(b.graph.vertex_count == 16);
    CHECK(b.graph.edge_count() == 24);
    REQUIRE(b.exhaustion.count() == 2);
    // Central 2x2 block: coordinates {1,2}^2 -> ids 5, 6, 9, 10.
    CHECK(b.exhaustion.volumes[0] == std::vector<VertexId>{5, 6, 9, 10});
    CHECK(b.exhaustion.volumes[1].size() == 16);
    // All four block vertices have neighbors outside the block.
    CHECK(b.exhaustion.boundaries[0] == std::vector<VertexId>{5, 6, 9, 10});
  }
  SECTION("volume counts that do not fit are rejected") {
    CHECK_THROWS_AS(build_box(2, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_box(1, 2, 2), std::invalid_argument);
  }
}

TEST_CASE("inner boundary", "[graph]") {
  GraphBundle b = build_box(2, 4, 2);
  std::vector<VertexId> all(b.graph.vertex_count);
  for (VertexId v = 0; v < b.graph.vertex_count; ++v) all[v] = v;
  CHECK(inner_boundary(b.graph, all).empty());

  GraphBundle p3 = make_path(3);
  CHECK(inner_boundary(p3.graph, {1}) == std::vector<VertexId>{1});

  CHECK(inner_boundary(b.graph, {5, 6, 9, 10}) == std::vector<VertexId>{5, 6, 9, 10});
}

TEST_CASE("induced edges", "[graph]") {
  GraphBundle k3 = make_complete(3);
  std::vector<VertexId> all{0, 1, 2};
  CHECK(induced_edges(k3.graph, all).size() == 3);
  CHECK(induced_edges(k3.graph, {}).empty());
  std::vector<EdgeId> one = induced_edges(k3.graph, {0, 1});
  REQUIRE(one.size() == 1);
  CHECK(k3.graph.edges[one[0]] == std::make_pair(VertexId{0}, VertexId{1}));
}

TEST_CASE("graph validation", "[graph]") {
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}, {1, 0}}), std::invalid_argument);
  // Disconnected.
  CHECK_THROWS_AS(Graph::from_edges(4, {{0, 1}, {2, 3}}), std::invalid_argument);
}

TEST_CASE("automorphism enumeration", "[graph]") {
  CHECK(automorphisms(make_complete(3).graph).size() == 6);
  CHECK(automorphisms(make_path(3).graph).size() == 2);
  CHECK(automorphisms(make_cycle(4).graph).size() == 8);
}

TEST_CASE("automorphisms form a group preserving the edge set", "[graph]") {
  const Graph& g = make_cycle(4).graph;
  std::vector<VertexPermutation> autos = automorphisms(g);
  std::set<VertexPermutation> group(autos.begin(), autos.end());
  for (const auto& a : autos) {
    CHECK(is_automorphism(g, a));
    CHECK(group.count(invert_permutation(a)) == 1);
    for (const auto& b : autos) CHECK(group.count(compose(a, b)) == 1);
    // The edge-image map is a bijection on edges.
    std::vector<EdgeId> emap = edge_permutation(g, a);
    std::set<EdgeId> image(emap.begin(), emap.end());
    CHECK(image.size() == g.edge_count());
  }
}

TEST_CASE("automorphism cap refuses large graphs", "[graph]") {
  GraphBundle big = build_box(2, 4, 1);  // 16 vertices > default cap
  CHECK_THROWS_AS(automorphisms(big.graph), std::invalid_argument);
}

TEST_CASE("torus translations are automorphisms", "[graph]") {
  GraphBundle t = build_torus(2, 4);
  std::vector<VertexPermutation> shifts = torus_translations(2, 4);
  CHECK(shifts.size() == 16);
  for (const auto& s : shifts) CHECK(is_automorphism(t.graph, s));
}

TEST_CASE("exhaustion nesting invariants", "[graph]") {
  GraphBundle b = build_box(2, 8, 3);
  const Exhaustion& ex = b.exhaustion;
  REQUIRE(ex.count() == 3);
  for (int i = 0; i + 1 < ex.count(); ++i) {
    CHECK(ex.volumes[i].size() < ex.volumes[i + 1].size());
    CHECK(std::includes(ex.volumes[i + 1].begin(), ex.volumes[i + 1].end(),
                        ex.volumes[i].begin(), ex.volumes[i].end()));
    CHECK(std::includes(ex.induced[i + 1].begin(), ex.induced[i + 1].end(),
                        ex.induced[i].begin(), ex.induced[i].end()));
  }
  CHECK(ex.volumes.back().size() == b.graph.vertex_count);
  CHECK(ex.induced.back().size() == b.graph.edge_count());
  // Boundary of each volume lies inside the volume.
  for (int i = 0; i < ex.count(); ++i)
    for (VertexId v : ex.boundaries[i]) CHECK(ex.volume_mask[i][v] == 1);
}

TEST_CASE("graph json round trip", "[graph]") {
  GraphBundle b = build_box(2, 3, 1);
  json j = graph_to_json(b.graph, &b.exhaustion.volumes);
  LoadedGraph lg = graph_from_json(j);
  CHECK(lg.graph.vertex_count == b.graph.vertex_count);
  CHECK(lg.graph.edges == b.graph.edges);
  REQUIRE(lg.volumes.size() == 1);
  CHECK(lg.volumes[0].size() == b.graph.vertex_count);
}

TEST_CASE("induced subgraph of the central block is the smaller box", "[graph]") {
  GraphBundle host = build_box(2, 6, 2);
  InducedSubgraph sub = induced_subgraph(host.graph, host.exhaustion.volumes[0]);
  GraphBundle box4 = build_box(2, 4, 1);
  CHECK(sub.graph.vertex_count == box4.graph.vertex_count);
  CHECK(sub.graph.edges == box4.graph.edges);
}
