#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rcpotts/exact.hpp"
#include "rcpotts/graph.hpp"
#include "rcpotts/potts.hpp"
#include "rcpotts/stats.hpp"

using namespace rcpotts;
using Catch::Approx;

TEST_CASE("delta_q closed forms", "[stats]") {
  SECTION("q=1 reduces to the plain difference") {
    CHECK(delta_q(0.2, 0.7, 1.0) == Approx(0.5).margin(1e-15));
  }
  SECTION("reference value at q=2") {
    CHECK(delta_q(0.3, 0.6, 2.0) == Approx(3.0 / 7.0 - 3.0 / 17.0).margin(1e-12));
    CHECK(delta_q(0.3, 0.6, 2.0) == Approx(0.252101).margin(1e-6));
  }
  SECTION("strictly positive on random valid triples") {
    std::uint64_t ctr = 0;
    auto rnd = [&]() { return uniform_at(17, scope::replicate(2), ++ctr); };
    for (int i = 0; i < 1000; ++i) {
      double p1 = rnd() * 0.98;
      double p2 = p1 + (1.0 - p1) * (0.02 + 0.98 * rnd());
      double q = 1.0 + 9.0 * rnd();
      CHECK(delta_q(p1, p2, q) > 0.0);
    }
  }
  SECTION("degenerate order is rejected") {
    CHECK_THROWS_AS(delta_q(0.5, 0.5, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(delta_q(0.7, 0.5, 2.0), std::invalid_argument);
  }
}

TEST_CASE("coupled flip gap probe on a single edge", "[stats]") {
  // One edge, free rule: the final state is 1[u < s(p)] for the last event's
  // uniform, so the joint flip probability is exactly s(p2) - s(p1).
  const Graph& k2 = make_complete(2).graph;
  SECTION("q=2 closed form") {
    double p1 = 0.3, p2 = 0.7, q = 2.0;
    FlipGapReport rep = coupled_flip_gap_probe(k2, p1, p2, q, 0, 4000, 16.0, 33);
    REQUIRE(rep.bins.size() == 1);
    REQUIRE(rep.any_conclusive);
    double expected = ParamPoint(p2, q).lower_threshold() -
                      ParamPoint(p1, q).lower_threshold();
    CHECK(rep.min_estimate ==
          Approx(expected).margin(4.0 * rep.min_estimate_stderr + 1e-9));
    CHECK(rep.exploratory);
    CHECK(rep.delta_q_reference == Approx(delta_q(p1, p2, q)));
  }
  SECTION("q=1 gap equals p2-p1") {
    double p1 = 0.25, p2 = 0.55;
    FlipGapReport rep = coupled_flip_gap_probe(k2, p1, p2, 1.0, 0, 4000, 16.0, 44);
    REQUIRE(rep.any_conclusive);
    CHECK(rep.min_estimate ==
          Approx(p2 - p1).margin(4.0 * rep.min_estimate_stderr + 1e-9));
  }
}

TEST_CASE("flip gap probe bins by the joint off-edge configuration", "[stats]") {
  const Graph& k3 = make_complete(3).graph;
  FlipGapReport rep = coupled_flip_gap_probe(k3, 0.3, 0.7, 2.0, 0, 2000, 16.0, 55, 50);
  CHECK(rep.seeds_run == 2000);
  std::uint64_t total = 0;
  for (auto& [key, bin] : rep.bins) {
    total += bin.count;
    // Keys carry two off-edge patterns of two edges each.
    CHECK(key.size() == 5);
  }
  CHECK(total == 2000);
  // In every conclusive bin the estimate should be at least Delta_q minus
  // noise; report-style sanity only (the sharp statement is open).
  for (auto& [key, bin] : rep.bins)
    if (bin.count >= 50)
      CHECK(bin.estimate() > rep.delta_q_reference - 5.0 * bin.stderr_normal() - 0.05);
}

TEST_CASE("reported confidence widths shrink like one over root n", "[stats]") {
  const Graph& k2 = make_complete(2).graph;
  FlipGapReport small = coupled_flip_gap_probe(k2, 0.3, 0.7, 2.0, 0, 2000, 16.0, 12);
  FlipGapReport big = coupled_flip_gap_probe(k2, 0.3, 0.7, 2.0, 0, 8000, 16.0, 12);
  REQUIRE(small.any_conclusive);
  REQUIRE(big.any_conclusive);
  double ratio = small.min_estimate_stderr / big.min_estimate_stderr;
  // Quadrupling the sample count halves the reported width, up to the
  // stochastic wobble of the estimates themselves.
  CHECK(ratio == Approx(2.0).epsilon(0.2));
}

TEST_CASE("simultaneous cluster probe", "[stats]") {
  GraphBundle box = build_box(2, 4, 1);
  std::vector<std::uint8_t> proxy = vertex_mask(box.graph, box.outer_boundary);
  SECTION("identical configurations contain themselves") {
    std::vector<UpdateEvent> events = events_in_window(66, box.graph, 8.0);
    UpdateRule rule = UpdateRule::free_rule(box.graph, ParamPoint(0.7, 1.0));
    EdgeConfig c = run_from_past(rule, events, ChainStart::AllClosed);
    ClusterContainmentReport rep = simultaneous_cluster_probe(box.graph, c, c, proxy);
    for (int count : rep.counts) CHECK(count == 1);
  }
  SECTION("empty lower configuration yields zero counts") {
    ClusterContainmentReport rep = simultaneous_cluster_probe(
        box.graph, all_closed(box.graph.edge_count()), all_open(box.graph.edge_count()),
        proxy);
    REQUIRE(rep.counts.size() == 1);
    CHECK(rep.counts[0] == 0);
  }
  SECTION("unordered pairs are rejected") {
    CHECK_THROWS_AS(
        simultaneous_cluster_probe(box.graph, all_open(box.graph.edge_count()),
                                   all_closed(box.graph.edge_count()), proxy),
        std::invalid_argument);
  }
  SECTION("subcritical-in-supercritical counts are reported") {
    std::vector<UpdateEvent> events = events_in_window(77, box.graph, 16.0);
    EdgeConfig lo = run_from_past(UpdateRule::free_rule(box.graph, ParamPoint(0.2, 1.0)),
                                  events, ChainStart::AllClosed);
    EdgeConfig hi = run_from_past(UpdateRule::free_rule(box.graph, ParamPoint(0.8, 1.0)),
                                  events, ChainStart::AllClosed);
    REQUIRE(config_leq(lo, hi));
    ClusterContainmentReport rep = simultaneous_cluster_probe(box.graph, lo, hi, proxy);
    CHECK(rep.exploratory);
    for (int count : rep.counts) CHECK(count >= 0);
  }
}

TEST_CASE("sweep summaries", "[stats]") {
  GraphBundle box = build_box(2, 4, 1);
  std::vector<ParamPoint> grid{{0.2, 1.0}, {0.5, 1.0}, {0.8, 1.0}};
  SweepOptions opts;
  opts.samples = 300;
  opts.seed = 11;
  std::vector<RunSummary> rows = sweep_summary(box, grid, BoundaryRule::Free, -1, opts);
  REQUIRE(rows.size() == 3);
  SECTION("no coalescence failures and no monotone violations") {
    for (const RunSummary& s : rows) {
      CHECK(s.coalesce_failures == 0);
      CHECK(s.monotone_violations == 0);
    }
  }
  SECTION("spanning probability moves from near 0 to near 1 in p") {
    CHECK(rows[0].spanning_probability < 0.2);
    CHECK(rows[2].spanning_probability > 0.8);
    CHECK(rows[0].spanning_probability <= rows[1].spanning_probability);
    CHECK(rows[1].spanning_probability <= rows[2].spanning_probability);
  }
  SECTION("largest cluster fraction grows with p") {
    CHECK(rows[0].largest_cluster_fraction <= rows[1].largest_cluster_fraction);
    CHECK(rows[1].largest_cluster_fraction <= rows[2].largest_cluster_fraction);
  }
  SECTION("q=1 edge marginals sit near p") {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double mean = 0.0;
      for (double f : rows[i].edge_open_freq) mean += f;
      mean /= rows[i].edge_open_freq.size();
      CHECK(mean == Approx(grid[i].p).margin(0.05));
    }
  }
}

TEST_CASE("wired marginals dominate free marginals pointwise", "[stats]") {
  GraphBundle box = build_box(2, 4, 2);
  std::vector<ParamPoint> grid{{0.5, 2.0}};
  SweepOptions opts;
  opts.samples = 200;
  opts.seed = 21;
  std::vector<RunSummary> free_rows =
      sweep_summary(box, grid, BoundaryRule::Free, 1, opts);
  std::vector<RunSummary> wired_rows =
      sweep_summary(box, grid, BoundaryRule::Wired, 1, opts);
  // Shared randomness per sample index: the coupling makes this pointwise,
  // hence it also holds for the averaged marginals on active edges.
  const auto& active = box.exhaustion.edge_mask_[0];
  for (EdgeId e = 0; e < box.graph.edge_count(); ++e)
    if (active[e])
      CHECK(free_rows[0].edge_open_freq[e] <= wired_rows[0].edge_open_freq[e] + 1e-12);
}

TEST_CASE("potts correlation estimators", "[stats]") {
  const int q = 3;
  GraphBundle k3 = make_complete(3);
  SECTION("a vertex always agrees with itself") {
    std::vector<SpinConfig> one{SpinConfig(q, 3, 2)};
    CHECK(potts_correlation(one, 1, 1) == 1.0);
  }
  SECTION("independent uniform spins agree with probability 1/q") {
    std::vector<SpinConfig> samples;
    for (std::uint64_t i = 0; i < 30000; ++i) {
      ComponentRandomness cr = component_randomness(derive_seed(31, i), 3, q);
      samples.push_back(assign_spins_free(k3.graph, all_closed(3), cr, q));
    }
    double freq = potts_correlation(samples, 0, 2);
    CHECK(freq == Approx(1.0 / q).margin(3.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / 30000)));
  }
  SECTION("sampled correlation matches the exact pair marginal and the identity") {
    const double p = 0.5;
    Distribution rc = rc_distribution(k3.graph, p, double(q));
    PottsDistribution potts = potts_distribution(k3.graph, q, p_to_beta(p));
    std::vector<SpinConfig> samples;
    std::size_t connected = 0;
    const std::size_t n = 20000;
    for (std::uint64_t i = 0; i < n; ++i) {
      std::uint64_t s = derive_seed(41, i);
      EdgeConfig cfg =
          rc.config_at(sample_index(rc, uniform_at(s, scope::replicate(0), 3)));
      ComponentLabels labels = label_components(k3.graph, cfg);
      connected += labels.label[0] == labels.label[1];
      samples.push_back(assign_spins_free(k3.graph, cfg, component_randomness(s, 3, q), q));
    }
    double est = potts_correlation(samples, 0, 1);
    CHECK(est == Approx(pair_agreement_probability(potts, 0, 1)).margin(0.01));
    CHECK(correlation_from_connectivity(double(connected) / n, q) ==
          Approx(est).margin(0.01));
  }
}
