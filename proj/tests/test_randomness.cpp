#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "rcpotts/graph.hpp"
#include "rcpotts/randomness.hpp"

using namespace rcpotts;
using Catch::Approx;

TEST_CASE("draws are a pure function of the key", "[randomness]") {
  DrawPair a = draw(42, scope::edge_clock(7), 3);
  DrawPair b = draw(42, scope::edge_clock(7), 3);
  CHECK(a.phi == b.phi);
  CHECK(a.u == b.u);
  DrawPair c = draw(42, scope::edge_clock(8), 3);
  CHECK((c.phi != a.phi || c.u != a.u));
  DrawPair d = draw(43, scope::edge_clock(7), 3);
  CHECK((d.phi != a.phi || d.u != a.u));
}

TEST_CASE("exponential and uniform marginals", "[randomness]") {
  const std::size_t n = 200000;
  double phi_sum = 0.0;
  std::vector<double> us(n);
  for (std::size_t i = 0; i < n; ++i) {
    DrawPair pr = draw(7, scope::replicate(i), 1);
    phi_sum += pr.phi;
    CHECK(pr.phi >= 0.0);
    CHECK((pr.u >= 0.0 && pr.u < 1.0));
    us[i] = pr.u;
  }
  CHECK(std::abs(phi_sum / n - 1.0) <= 3.0 / std::sqrt(double(n)));
  std::sort(us.begin(), us.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ks = std::max(ks, std::abs((i + 1.0) / n - us[i]));
    ks = std::max(ks, std::abs(us[i] - double(i) / n));
  }
  CHECK(ks < 0.004);  // ~2 sigma of the KS statistic at this n
}

TEST_CASE("window events: boundaries and counts", "[randomness]") {
  GraphBundle box = build_box(2, 4, 1);
  SECTION("vanishing window is empty") {
    CHECK(events_in_window(5, box.graph, 0.0).empty());
  }
  SECTION("expected event count is |E| T") {
    const double T = 5.0;
    double total = 0.0;
    const int reps = 50;
    for (int r = 0; r < reps; ++r)
      total += double(events_in_window(derive_seed(11, r), box.graph, T).size());
    double mean = total / reps;
    double expected = double(box.graph.edge_count()) * T;
    // 3 sigma for a Poisson mean over reps.
    CHECK(std::abs(mean - expected) <= 3.0 * std::sqrt(expected / reps));
  }
  SECTION("events are time-sorted within (-T, 0]") {
    std::vector<UpdateEvent> ev = events_in_window(5, box.graph, 3.0);
    for (std::size_t i = 1; i < ev.size(); ++i) CHECK(ev[i - 1].time <= ev[i].time);
    for (const UpdateEvent& e : ev) {
      CHECK(e.time > -3.0);
      CHECK(e.time <= 0.0);
    }
  }
}

TEST_CASE("window extension is a bit-exact suffix", "[randomness]") {
  GraphBundle box = build_box(2, 4, 1);
  for (auto [t1, t2] : {std::pair{1.5, 4.0}, std::pair{4.0, 17.5}}) {
    std::vector<UpdateEvent> small = events_in_window(123, box.graph, t1);
    std::vector<UpdateEvent> large = events_in_window(123, box.graph, t2);
    std::size_t skip = large.size() - small.size();
    REQUIRE(large.size() >= small.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
      CHECK(small[i].time == large[skip + i].time);
      CHECK(small[i].edge == large[skip + i].edge);
      CHECK(small[i].u == large[skip + i].u);
    }
    for (std::size_t i = 0; i < skip; ++i) CHECK(large[i].time <= -t1);
  }
}

TEST_CASE("no duplicate event times in practice", "[randomness]") {
  GraphBundle box = build_box(2, 6, 1);
  std::vector<UpdateEvent> ev = events_in_window(2024, box.graph, 50.0);
  CHECK(count_time_collisions(ev) == 0);
}

TEST_CASE("neighboring keys are uncorrelated", "[randomness]") {
  const std::size_t n = 100000;
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = draw(3, scope::replicate(i), 4).u;
    b[i] = draw(3, scope::replicate(i + 1), 4).u;
  }
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double saa = 0, sbb = 0, sab = 0;
  for (std::size_t i = 0; i < n; ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
    sab += (a[i] - ma) * (b[i] - mb);
  }
  CHECK(std::abs(sab / std::sqrt(saa * sbb)) < 0.01);
}

TEST_CASE("vertex field accessors and views", "[randomness]") {
  VertexField f(9, 4, 3, 2);
  SECTION("determinism and slot validation") {
    CHECK(f.clock(1, 2, 5).u == f.clock(1, 2, 5).u);
    CHECK_THROWS_AS(f.claim(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(f.claim(0, 4), std::invalid_argument);
  }
  SECTION("spins lie in range") {
    for (VertexId v = 0; v < 4; ++v) {
      int s = f.component_spin(v);
      CHECK(s >= 1);
      CHECK(s <= 2);
    }
  }
  SECTION("permuted view relabels accessors") {
    VertexPermutation gamma{1, 2, 3, 0};  // x -> x+1 mod 4
    VertexField moved = f.permuted(gamma);
    for (VertexId x = 0; x < 4; ++x) {
      VertexId pre = invert_permutation(gamma)[x];
      CHECK(moved.component_uniform(x) == f.component_uniform(pre));
      CHECK(moved.claim(x, 2) == f.claim(pre, 2));
      CHECK(moved.clock(x, 1, 7).phi == f.clock(pre, 1, 7).phi);
    }
  }
  SECTION("reseeding one vertex changes only that vertex") {
    VertexField g = f.with_reseeded_vertex(2, 777);
    for (VertexId v = 0; v < 4; ++v) {
      if (v == 2)
        CHECK(g.component_uniform(v) != f.component_uniform(v));
      else
        CHECK(g.component_uniform(v) == f.component_uniform(v));
    }
  }
}

TEST_CASE("edge stream assignment: structure and determinism", "[randomness]") {
  GraphBundle c4 = make_cycle(4);
  VertexField f(31, 4, 2, 2);
  EdgeStreamAssignment a1 = edge_randomness_from_vertices(c4.graph, f);
  EdgeStreamAssignment a2 = edge_randomness_from_vertices(c4.graph, f);
  REQUIRE(a1.source.size() == c4.graph.edge_count());
  std::set<std::pair<VertexId, std::uint32_t>> used;
  for (EdgeId e = 0; e < c4.graph.edge_count(); ++e) {
    CHECK(a1.source[e] == a2.source[e]);
    auto [v, slot] = a1.source[e];
    // The adopted stream belongs to one of the edge's endpoints.
    auto [x, y] = c4.graph.edges[e];
    CHECK((v == x || v == y));
    CHECK(slot >= 1);
    CHECK(slot <= 2);
    // No two edges share a (vertex, slot) stream.
    CHECK(used.insert({v, slot}).second);
  }
}

TEST_CASE("edge stream assignment commutes with automorphisms", "[randomness]") {
  GraphBundle c4 = make_cycle(4);
  const Graph& g = c4.graph;
  VertexField f(57, 4, 2, 2);
  EdgeStreamAssignment base = edge_randomness_from_vertices(g, f);
  for (const VertexPermutation& gamma : automorphisms(g)) {
    EdgeStreamAssignment moved = edge_randomness_from_vertices(g, f.permuted(gamma));
    std::vector<EdgeId> emap = edge_permutation(g, gamma);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      // The image edge adopts the image vertex's stream, same slot.
      auto [v, slot] = base.source[e];
      auto [mv, mslot] = moved.source[emap[e]];
      CHECK(mv == gamma[v]);
      CHECK(mslot == slot);
      // And the realized event streams agree bit-exactly.
      for (std::uint64_t k = 1; k <= 3; ++k) {
        DrawPair pb = base.field.clock(v, slot, k);
        DrawPair pm = moved.field.clock(mv, mslot, k);
        CHECK(pb.phi == pm.phi);
        CHECK(pb.u == pm.u);
      }
    }
  }
}

TEST_CASE("field slot shortage is rejected", "[randomness]") {
  GraphBundle star = make_complete(4);
  VertexField f(1, 4, 2, 2);  // max_degree is 3
  CHECK_THROWS_AS(edge_randomness_from_vertices(star.graph, f), std::invalid_argument);
}
