#pragma once
// JSON and CSV forms of the toolkit's types. Graphs serialize to
// {"vertices": n, "edges": [[u,v],...], "volumes": [[...], ...]} with edges
// sorted lexicographically; distributions to arrays of {config, prob} with
// configs as bit strings in edge-id order.

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcpotts/cftp.hpp"
#include "rcpotts/edge_config.hpp"
#include "rcpotts/exact.hpp"
#include "rcpotts/graph.hpp"
#include "rcpotts/randomness.hpp"
#include "rcpotts/spin_config.hpp"
#include "rcpotts/stats.hpp"

namespace rcpotts {

using json = nlohmann::json;

inline json graph_to_json(const Graph& g,
                          const std::vector<std::vector<VertexId>>* volumes = nullptr) {
  json j;
  j["vertices"] = g.vertex_count;
  json edges = json::array();
  for (auto [u, v] : g.edges) edges.push_back(json::array({u, v}));
  j["edges"] = edges;
  if (volumes && !volumes->empty()) {
    json vols = json::array();
    for (const auto& vol : *volumes) vols.push_back(vol);
    j["volumes"] = vols;
  }
  return j;
}

struct LoadedGraph {
  Graph graph;
  std::vector<std::vector<VertexId>> volumes;  // may be empty
};

inline LoadedGraph graph_from_json(const json& j) {
  if (!j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument("graph json: needs \"vertices\" and \"edges\"");
  LoadedGraph out;
  VertexId n = j.at("vertices").get<VertexId>();
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph json: edges must be [u,v] pairs");
    edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
  }
  out.graph = Graph::from_edges(n, std::move(edges));
  if (j.contains("volumes"))
    for (const auto& vol : j.at("volumes"))
      out.volumes.push_back(vol.get<std::vector<VertexId>>());
  return out;
}

inline json distribution_to_json(const Distribution& d) {
  json arr = json::array();
  for (std::size_t i = 0; i < d.size(); ++i)
    arr.push_back({{"config", to_bit_string(d.config_at(i))}, {"prob", d.probs[i]}});
  return arr;
}

inline json potts_distribution_to_json(const PottsDistribution& d) {
  json arr = json::array();
  for (std::size_t i = 0; i < d.size(); ++i)
    arr.push_back({{"config", to_spin_string(d.config_at(i))}, {"prob", d.probs[i]}});
  return arr;
}

inline json spin_config_to_json(const SpinConfig& s) {
  json by_vertex = json::object();
  for (std::size_t v = 0; v < s.spins.size(); ++v)
    by_vertex[std::to_string(v)] = s.spins[v];
  return {{"q", s.q}, {"spins", by_vertex}, {"flat", to_spin_string(s)}};
}

inline json coupling_family_to_json(const CouplingFamily& fam, bool emit_configs) {
  json j;
  j["seed"] = fam.seed;
  j["window"] = fam.window;
  j["time_collisions"] = fam.time_collisions;
  json indices = json::array();
  for (std::size_t i = 0; i < fam.indices.size(); ++i) {
    const CouplingIndex& idx = fam.indices[i];
    json ij = {{"rule", idx.kind == BoundaryRule::Free ? "free" : "wired"},
               {"volume", idx.volume},
               {"p", idx.param.p},
               {"q", idx.param.q},
               {"coalesced", bool(fam.coalesced[i])},
               {"coalescence_window", fam.coalescence_window[i]}};
    if (emit_configs) ij["config"] = to_bit_string(fam.configs[i]);
    indices.push_back(ij);
  }
  j["indices"] = indices;
  j["order_checks"] = fam.checks.size();
  j["order_checks_passed"] = fam.checks.size() - fam.violations;
  j["order_violations"] = fam.violations;
  std::map<std::string, std::size_t> by_category, failed_by_category;
  for (const OrderCheck& chk : fam.checks) {
    std::string cat =
        order_check_category(fam.indices[chk.lower_index], fam.indices[chk.upper_index]);
    ++by_category[cat];
    if (!chk.holds) ++failed_by_category[cat];
  }
  json cats = json::object();
  for (auto& [cat, count] : by_category)
    cats[cat] = {{"checked", count}, {"violations", failed_by_category[cat]}};
  j["order_checks_by_category"] = cats;
  json coal = json::array();
  for (double w : fam.coalescence_window) coal.push_back(w);
  j["coalescence_times"] = coal;
  return j;
}

inline void events_to_csv(std::ostream& os, const std::vector<UpdateEvent>& events) {
  os << "edge,time,uniform\n";
  os.precision(17);
  for (const UpdateEvent& ev : events)
    os << ev.edge << "," << ev.time << "," << ev.u << "\n";
}

inline void run_summary_rows(std::ostream& os, const RunSummary& s, bool header,
                             bool per_edge = false) {
  if (header) os << "p,q,rule,volume,observable,value,stderr,samples,seed\n";
  os.precision(17);
  auto row = [&](const std::string& name, double value, double se) {
    os << s.param.p << "," << s.param.q << ","
       << (s.rule == BoundaryRule::Free ? "free" : "wired") << "," << s.volume << ","
       << name << "," << value << "," << se << "," << s.samples << "," << s.seed
       << "\n";
  };
  std::size_t n = s.samples - s.coalesce_failures;
  auto binom_se = [&](double p) {
    return n ? std::sqrt(std::max(p * (1.0 - p), 0.0) / n) : 0.0;
  };
  double mean_edge = 0.0;
  for (double f : s.edge_open_freq) mean_edge += f;
  if (!s.edge_open_freq.empty()) mean_edge /= s.edge_open_freq.size();
  row("edge_marginal_mean", mean_edge, binom_se(mean_edge));
  row("largest_cluster_fraction", s.largest_cluster_fraction, 0.0);
  if (s.spanning_probability >= 0.0)
    row("spanning_probability", s.spanning_probability, binom_se(s.spanning_probability));
  row("coalesce_failures", double(s.coalesce_failures), 0.0);
  row("monotone_violations", double(s.monotone_violations), 0.0);
  if (per_edge)
    for (std::size_t e = 0; e < s.edge_open_freq.size(); ++e)
      row("edge_marginal_" + std::to_string(e), s.edge_open_freq[e],
          binom_se(s.edge_open_freq[e]));
}

inline json run_summary_to_json(const RunSummary& s) {
  json j;
  j["p"] = s.param.p;
  j["q"] = s.param.q;
  j["rule"] = s.rule == BoundaryRule::Free ? "free" : "wired";
  j["volume"] = s.volume;
  j["seed"] = s.seed;
  j["samples"] = s.samples;
  j["coalesce_failures"] = s.coalesce_failures;
  j["edge_open_freq"] = s.edge_open_freq;
  j["largest_cluster_fraction"] = s.largest_cluster_fraction;
  if (s.spanning_probability >= 0.0) j["spanning_probability"] = s.spanning_probability;
  j["monotone_violations"] = s.monotone_violations;
  json hist = json::object();
  for (auto [size, count] : s.cluster_size_histogram)
    hist[std::to_string(size)] = count;
  j["cluster_size_histogram"] = hist;
  j["observed_vertices"] = s.observed_vertices;
  j["two_point"] = s.two_point;
  return j;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace rcpotts
