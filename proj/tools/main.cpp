// Command-line front end: exact oracle dumps, CFTP sampling, forward chains,
// grand couplings, the factor map, parameter sweeps, RNG audits, and the
// verification suite. One seed drives everything; identical configs produce
// byte-identical outputs.
//
// Exit codes: 0 success, 1 check failure, 2 validation error, 3 I/O error.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcpotts/acceptance.hpp"
#include "rcpotts/cftp.hpp"
#include "rcpotts/dynamics.hpp"
#include "rcpotts/exact.hpp"
#include "rcpotts/graph.hpp"
#include "rcpotts/potts.hpp"
#include "rcpotts/randomness.hpp"
#include "rcpotts/serialize.hpp"
#include "rcpotts/stats.hpp"
#include "rcpotts/version.hpp"

namespace {

using rcpotts::json;

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty numeric list: '" + s + "'");
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (double d : parse_double_list(s)) out.push_back(static_cast<int>(d));
  return out;
}

std::map<std::string, std::string> parse_kv(const std::string& s) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("graph spec: expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

int kv_int(const std::map<std::string, std::string>& kv, const std::string& key,
           int fallback = INT32_MIN) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    if (fallback == INT32_MIN)
      throw std::invalid_argument("graph spec: missing parameter '" + key + "'");
    return fallback;
  }
  return std::stoi(it->second);
}

rcpotts::GraphBundle load_graph(const std::string& spec) {
  using namespace rcpotts;
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    std::string text;
    try {
      text = read_text_file(spec);
    } catch (const std::runtime_error& e) {
      throw std::invalid_argument(std::string("graph file: ") + e.what());
    }
    LoadedGraph lg = graph_from_json(json::parse(text));
    GraphBundle b;
    b.graph = std::move(lg.graph);
    b.family = "file:" + spec;
    if (!lg.volumes.empty()) {
      b.exhaustion = Exhaustion::build(b.graph, lg.volumes);
    } else {
      std::vector<VertexId> full(b.graph.vertex_count);
      for (VertexId v = 0; v < b.graph.vertex_count; ++v) full[v] = v;
      b.exhaustion = Exhaustion::build(b.graph, {full});
    }
    return b;
  }
  auto colon = spec.find(':');
  std::string family = spec.substr(0, colon);
  std::map<std::string, std::string> kv =
      colon == std::string::npos ? std::map<std::string, std::string>{}
                                 : parse_kv(spec.substr(colon + 1));
  if (family == "box")
    return build_box(kv_int(kv, "dim"), kv_int(kv, "side"), kv_int(kv, "vols", 1));
  if (family == "torus") return build_torus(kv_int(kv, "dim"), kv_int(kv, "side"));
  if (family == "cycle") return make_cycle(kv_int(kv, "n"));
  if (family == "complete") return make_complete(kv_int(kv, "n"));
  if (family == "path") return make_path(kv_int(kv, "n"));
  if (family == "tree")
    return make_tree(kv_int(kv, "branch"), kv_int(kv, "depth"), kv_int(kv, "vols", 1));
  throw std::invalid_argument("unknown graph family '" + family +
                              "' (expected box, torus, cycle, complete, path, tree, "
                              "or a .json path)");
}

struct RuleSpec {
  rcpotts::BoundaryRule kind = rcpotts::BoundaryRule::Free;
  int volume = -1;
};

RuleSpec parse_rule(const std::string& s, int volume_flag) {
  RuleSpec r;
  std::string name = s;
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    name = s.substr(0, colon);
    r.volume = std::stoi(s.substr(colon + 1));
  }
  if (name == "free")
    r.kind = rcpotts::BoundaryRule::Free;
  else if (name == "wired")
    r.kind = rcpotts::BoundaryRule::Wired;
  else
    throw std::invalid_argument("rule must be free[:i] or wired[:i], got '" + s + "'");
  if (volume_flag >= 1) r.volume = volume_flag;
  return r;
}

// Shared option set. A JSON config file seeds the values; explicitly passed
// flags override it.
struct Opts {
  std::string config_path;
  std::string graph = "box:dim=2,side=4,vols=1";
  std::string p = "0.5";
  std::string q = "2";
  std::string rule = "free";
  int volume = -1;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000;
  double tmax = 4096.0;
  double t = 16.0;
  std::string out;
  std::string format = "csv";
};

struct OptRefs {
  std::map<std::string, CLI::Option*> by_key;
};

void add_common(CLI::App* cmd, Opts& o, OptRefs& refs) {
  refs.by_key["config"] =
      cmd->add_option("--config", o.config_path, "JSON config file; flags override it");
  refs.by_key["graph"] = cmd->add_option(
      "--graph", o.graph, "builtin family spec (e.g. box:dim=2,side=8,vols=3) or .json path");
  refs.by_key["p"] = cmd->add_option("--p", o.p, "edge parameter p (comma list allowed)");
  refs.by_key["q"] = cmd->add_option("--q", o.q, "cluster weight q >= 1 (comma list allowed)");
  refs.by_key["rule"] = cmd->add_option("--rule", o.rule, "free[:i] or wired[:i]");
  refs.by_key["volume"] = cmd->add_option("--volume", o.volume, "1-based volume index");
  refs.by_key["seed"] = cmd->add_option("--seed", o.seed, "master seed");
  refs.by_key["samples"] = cmd->add_option("--samples", o.samples, "sample count");
  refs.by_key["tmax"] = cmd->add_option("--tmax", o.tmax, "doubling-window bound");
  refs.by_key["t"] = cmd->add_option("--t", o.t, "window length");
  refs.by_key["out"] = cmd->add_option("--out", o.out, "output path (default stdout)");
  refs.by_key["format"] =
      cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

// Merge file config under explicitly-passed flags.
void resolve(Opts& o, const OptRefs& refs) {
  if (o.config_path.empty()) return;
  std::string text;
  try {
    text = rcpotts::read_text_file(o.config_path);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(std::string("config file: ") + e.what());
  }
  json j = json::parse(text);
  auto passed = [&](const char* key) {
    auto it = refs.by_key.find(key);
    return it != refs.by_key.end() && it->second->count() > 0;
  };
  auto as_list_string = [](const json& v) -> std::string {
    if (v.is_array()) {
      std::string s;
      for (const auto& x : v) {
        if (!s.empty()) s += ",";
        s += std::to_string(x.get<double>());
      }
      return s;
    }
    if (v.is_string()) return v.get<std::string>();
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  };
  if (j.contains("graph") && !passed("graph")) o.graph = j["graph"].get<std::string>();
  if (j.contains("p") && !passed("p")) o.p = as_list_string(j["p"]);
  if (j.contains("q") && !passed("q")) o.q = as_list_string(j["q"]);
  if (j.contains("rule") && !passed("rule")) o.rule = j["rule"].get<std::string>();
  if (j.contains("volume") && !passed("volume")) o.volume = j["volume"].get<int>();
  if (j.contains("seed") && !passed("seed")) o.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("samples") && !passed("samples"))
    o.samples = j["samples"].get<std::uint64_t>();
  if (j.contains("tmax") && !passed("tmax")) o.tmax = j["tmax"].get<double>();
  if (j.contains("t") && !passed("t")) o.t = j["t"].get<double>();
  if (j.contains("out") && !passed("out")) o.out = j["out"].get<std::string>();
  if (j.contains("format") && !passed("format")) o.format = j["format"].get<std::string>();
}

json resolved_config(const std::string& command, const Opts& o) {
  json c;
  c["command"] = command;
  c["graph"] = o.graph;
  c["p"] = o.p;
  c["q"] = o.q;
  c["rule"] = o.rule;
  c["volume"] = o.volume;
  c["seed"] = o.seed;
  c["samples"] = o.samples;
  c["tmax"] = o.tmax;
  c["t"] = o.t;
  c["format"] = o.format;
  return c;
}

void emit(const Opts& o, const std::string& content) {
  if (o.out.empty())
    std::cout << content;
  else
    rcpotts::write_text_file(o.out, content);
}

std::string csv_preamble(const json& config) {
  return std::string("# version: ") + rcpotts::kVersion + "\n# config: " + config.dump() +
         "\n";
}

json json_envelope(const json& config) {
  json j;
  j["version"] = rcpotts::kVersion;
  j["config"] = config;
  return j;
}

double single(const std::string& list, const char* what) {
  std::vector<double> v = parse_double_list(list);
  if (v.size() != 1)
    throw std::invalid_argument(std::string(what) + ": expected a single value");
  return v[0];
}

// ---------------------------------------------------------------------------

int cmd_verify(std::uint64_t seed, bool quick, bool inject_fault, const std::string& only,
               const std::string& out) {
  rcpotts::AcceptanceOptions opts;
  opts.seed = seed;
  opts.quick = quick;
  opts.inject_fault = inject_fault;
  opts.only = only;
  std::vector<rcpotts::CheckResult> results = rcpotts::run_acceptance_suite(opts);
  bool all_pass = true;
  json report = json::array();
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " - "
              << r.detail << " (" << r.seconds << "s)\n";
    report.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  std::cout << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES present\n");
  if (!out.empty()) {
    json j;
    j["version"] = rcpotts::kVersion;
    j["checks"] = report;
    j["all_pass"] = all_pass;
    rcpotts::write_text_file(out, j.dump(2) + "\n");
  }
  return all_pass ? 0 : 1;
}

int cmd_exact(const Opts& o, const std::string& model, double beta, int clamp_spin) {
  using namespace rcpotts;
  GraphBundle bundle = load_graph(o.graph);
  RuleSpec rule = parse_rule(o.rule, o.volume);
  json env = json_envelope(resolved_config("exact", o));

  if (model == "rc") {
    double p = single(o.p, "--p");
    double q = single(o.q, "--q");
    if (rule.volume >= 1) {
      if (rule.volume > bundle.exhaustion.count())
        throw std::invalid_argument("exact: volume out of range");
      InducedSubgraph sub =
          induced_subgraph(bundle.graph, bundle.exhaustion.volumes[rule.volume - 1]);
      std::vector<VertexId> boundary;
      for (VertexId v : bundle.exhaustion.boundaries[rule.volume - 1])
        boundary.push_back(static_cast<VertexId>(sub.from_host[v]));
      const std::vector<VertexId>* b =
          rule.kind == BoundaryRule::Wired ? &boundary : nullptr;
      Distribution d = rc_distribution(sub.graph, p, q, b);
      env["distribution"] = distribution_to_json(d);
      env["subgraph_vertices"] = sub.to_host;
    } else {
      Distribution d = rc_distribution(bundle.graph, p, q);
      env["distribution"] = distribution_to_json(d);
    }
  } else if (model == "potts") {
    int q = static_cast<int>(single(o.q, "--q"));
    double b = beta >= 0.0 ? beta : p_to_beta(single(o.p, "--p"));
    if (clamp_spin >= 1) {
      if (bundle.outer_boundary.empty())
        throw std::invalid_argument("exact: graph family has no outer boundary to clamp");
      PottsDistribution d =
          potts_distribution(bundle.graph, q, b, &bundle.outer_boundary, clamp_spin);
      env["distribution"] = potts_distribution_to_json(d);
      env["clamped_vertices"] = bundle.outer_boundary;
    } else {
      PottsDistribution d = potts_distribution(bundle.graph, q, b);
      env["distribution"] = potts_distribution_to_json(d);
    }
  } else {
    throw std::invalid_argument("exact: --model must be rc or potts");
  }
  emit(o, env.dump(2) + "\n");
  return 0;
}

int cmd_sample(const Opts& o) {
  using namespace rcpotts;
  GraphBundle bundle = load_graph(o.graph);
  RuleSpec rs = parse_rule(o.rule, o.volume);
  double p = single(o.p, "--p");
  double q = single(o.q, "--q");
  UpdateRule rule = UpdateRule::make(bundle.graph, rs.kind, ParamPoint(p, q),
                                     &bundle.exhaustion, rs.volume);
  json config = resolved_config("sample", o);

  std::size_t failures = 0;
  if (o.format == "csv") {
    std::ostringstream os;
    os << csv_preamble(config);
    os << "sample,coalesced,window,config\n";
    for (std::uint64_t i = 0; i < o.samples; ++i) {
      CftpResult r = cftp_exact(rule, derive_seed(o.seed, i), o.tmax);
      failures += !r.coalesced;
      os << i << "," << (r.coalesced ? 1 : 0) << "," << r.window << ","
         << (r.coalesced ? to_bit_string(r.config) : std::string("-")) << "\n";
    }
    emit(o, os.str());
  } else {
    json env = json_envelope(config);
    json rows = json::array();
    for (std::uint64_t i = 0; i < o.samples; ++i) {
      CftpResult r = cftp_exact(rule, derive_seed(o.seed, i), o.tmax);
      failures += !r.coalesced;
      json row = {{"sample", i}, {"coalesced", r.coalesced}, {"window", r.window}};
      if (r.coalesced) row["config"] = to_bit_string(r.config);
      rows.push_back(row);
    }
    env["samples"] = rows;
    env["coalesce_failures"] = failures;
    emit(o, env.dump(2) + "\n");
  }
  if (failures)
    std::cerr << "sample: " << failures << " of " << o.samples
              << " runs did not coalesce by tmax=" << o.tmax
              << " (reported, never silently replaced)\n";
  return 0;
}

int cmd_forward(const Opts& o, const std::string& start, double snap_every) {
  using namespace rcpotts;
  GraphBundle bundle = load_graph(o.graph);
  RuleSpec rs = parse_rule(o.rule, o.volume);
  UpdateRule rule = UpdateRule::make(bundle.graph, rs.kind,
                                     ParamPoint(single(o.p, "--p"), single(o.q, "--q")),
                                     &bundle.exhaustion, rs.volume);
  if (!(snap_every > 0.0)) throw std::invalid_argument("forward: --snap-every must be > 0");
  ChainStart cs = start == "open" ? ChainStart::AllOpen : ChainStart::AllClosed;

  // Forward-time events on (0, T]: the window generator mirrored to positive
  // times.
  std::vector<UpdateEvent> events = events_in_window(o.seed, bundle.graph, o.t);
  for (UpdateEvent& ev : events) ev.time = -ev.time;
  std::sort(events.begin(), events.end(), event_order);

  json config = resolved_config("forward", o);
  std::ostringstream os;
  os << csv_preamble(config) << "time,config\n";
  EdgeConfig state = rule.initial(cs);
  ConnectivityEngine engine = rule.engine();
  engine.prime(state);
  std::size_t next_event = 0;
  os.precision(17);
  for (double snap = 0.0; snap <= o.t + 1e-12; snap += snap_every) {
    while (next_event < events.size() && events[next_event].time <= snap) {
      const UpdateEvent& ev = events[next_event++];
      if (rule.active(ev.edge)) apply_heat_bath(state, ev.edge, ev.u, rule, engine);
    }
    os << snap << "," << to_bit_string(state) << "\n";
  }
  emit(o, os.str());
  return 0;
}

int cmd_grand(const Opts& o, const std::string& volumes_list, bool emit_configs) {
  using namespace rcpotts;
  GraphBundle bundle = load_graph(o.graph);
  std::vector<ParamPoint> params;
  for (double p : parse_double_list(o.p))
    for (double q : parse_double_list(o.q)) params.emplace_back(p, q);
  std::vector<int> volumes;
  if (!volumes_list.empty())
    volumes = parse_int_list(volumes_list);
  else
    for (int i = 1; i <= bundle.exhaustion.count(); ++i) volumes.push_back(i);

  GrandCouplingOptions gopts;
  gopts.throw_on_violation = false;
  CouplingFamily fam =
      grand_coupling(bundle.graph, bundle.exhaustion, params, volumes, o.t, o.seed, gopts);

  json env = json_envelope(resolved_config("grand", o));
  env["report"] = coupling_family_to_json(fam, emit_configs);
  emit(o, env.dump(2) + "\n");
  if (fam.violations > 0) {
    std::cerr << "grand: " << fam.violations
              << " order violations (this indicates an implementation bug)\n";
    return 1;
  }
  return 0;
}

int cmd_factor(const Opts& o, double beta, int spin_r) {
  using namespace rcpotts;
  GraphBundle bundle = load_graph(o.graph);
  int q = static_cast<int>(single(o.q, "--q"));
  double b = beta >= 0.0 ? beta : p_to_beta(single(o.p, "--p"));
  int volume = o.volume;
  VertexField field(o.seed, bundle.graph.vertex_count, bundle.graph.max_degree, q);

  const Exhaustion* ex = volume >= 1 ? &bundle.exhaustion : nullptr;
  FactorResult final_result = factor_map(bundle.graph, field, q, b, spin_r, o.t, ex, volume);

  // Stabilization in the window length: rerun at doubling windows and record
  // when each vertex's spin settles.
  std::vector<SpinConfig> sequence;
  for (double w = 1.0; w < o.t; w *= 2.0)
    sequence.push_back(factor_map(bundle.graph, field, q, b, spin_r, w, ex, volume).spins);
  sequence.push_back(final_result.spins);

  std::vector<int> first_stable(bundle.graph.vertex_count, 0);
  std::size_t stabilized = 0;
  for (VertexId v = 0; v < bundle.graph.vertex_count; ++v) {
    int stable = 0;
    for (std::size_t i = 1; i < sequence.size(); ++i)
      if (sequence[i].spins[v] != sequence[i - 1].spins[v]) stable = static_cast<int>(i);
    first_stable[v] = stable;
    if (stable + 1 < static_cast<int>(sequence.size())) ++stabilized;
  }

  json env = json_envelope(resolved_config("factor", o));
  env["beta"] = b;
  env["r"] = spin_r;
  env["spins"] = spin_config_to_json(final_result.spins);
  env["rc_config"] = to_bit_string(final_result.rc_config);
  env["stabilization"] = {
      {"windows", sequence.size()},
      {"first_stable_window_index", first_stable},
      {"fraction_stable", double(stabilized) / bundle.graph.vertex_count}};
  emit(o, env.dump(2) + "\n");
  return 0;
}

int cmd_sweep(const Opts& o, bool per_edge) {
  using namespace rcpotts;
  GraphBundle bundle = load_graph(o.graph);
  RuleSpec rs = parse_rule(o.rule, o.volume);
  std::vector<ParamPoint> grid;
  for (double q : parse_double_list(o.q))
    for (double p : parse_double_list(o.p)) grid.emplace_back(p, q);

  SweepOptions sopts;
  sopts.samples = o.samples;
  sopts.t_max = o.tmax;
  sopts.seed = o.seed;
  std::vector<RunSummary> rows = sweep_summary(bundle, grid, rs.kind, rs.volume, sopts);

  json config = resolved_config("sweep", o);
  if (o.format == "csv") {
    std::ostringstream os;
    os << csv_preamble(config);
    for (std::size_t i = 0; i < rows.size(); ++i)
      run_summary_rows(os, rows[i], i == 0, per_edge);
    emit(o, os.str());
  } else {
    json env = json_envelope(config);
    json arr = json::array();
    for (const RunSummary& s : rows) arr.push_back(run_summary_to_json(s));
    env["sweep"] = arr;
    emit(o, env.dump(2) + "\n");
  }
  return 0;
}

int cmd_audit_rng(const Opts& o, std::uint64_t count) {
  using namespace rcpotts;
  GraphBundle bundle = load_graph(o.graph);
  json config = resolved_config("audit-rng", o);
  std::ostringstream os;
  os << csv_preamble(config) << "edge,time,uniform\n";
  os.precision(17);
  for (EdgeId e = 0; e < bundle.graph.edge_count(); ++e) {
    double tau = 0.0;
    for (std::uint64_t k = 1; k <= count; ++k) {
      DrawPair pr = draw(o.seed, scope::edge_clock(e), k);
      tau += pr.phi;
      os << e << "," << -tau << "," << pr.u << "\n";
    }
  }
  emit(o, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-cluster and Potts coupling toolkit"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  std::uint64_t vseed = 20240801;
  bool vquick = false, vfault = false;
  std::string vonly, vout;
  verify->add_option("--seed", vseed, "suite seed");
  verify->add_flag("--quick", vquick, "reduced sample counts (smoke mode)");
  verify->add_flag("--inject-fault", vfault,
                   "flip one inequality on purpose; the suite must fail");
  verify->add_option("--only", vonly, "run a single criterion, e.g. C4");
  verify->add_option("--out", vout, "write a JSON report");

  Opts exact_o, sample_o, forward_o, grand_o, factor_o, sweep_o, audit_o;
  OptRefs exact_r, sample_r, forward_r, grand_r, factor_r, sweep_r, audit_r;

  auto* exact = app.add_subcommand("exact", "exact law by brute-force enumeration");
  add_common(exact, exact_o, exact_r);
  std::string exact_model = "rc";
  double exact_beta = -1.0;
  int exact_clamp = 0;
  exact->add_option("--model", exact_model, "rc or potts")
      ->check(CLI::IsMember({"rc", "potts"}));
  exact->add_option("--beta", exact_beta, "potts inverse temperature (else from --p)");
  exact->add_option("--clamp-outer", exact_clamp,
                    "potts: clamp the outer boundary to this spin");

  auto* sample = app.add_subcommand("sample", "exact samples via coupling from the past");
  add_common(sample, sample_o, sample_r);

  auto* forward = app.add_subcommand("forward", "forward-time trajectory snapshots");
  add_common(forward, forward_o, forward_r);
  std::string fstart = "closed";
  double fsnap = 1.0;
  forward->add_option("--start", fstart, "closed or open")
      ->check(CLI::IsMember({"closed", "open"}));
  forward->add_option("--snap-every", fsnap, "snapshot spacing");

  auto* grand = app.add_subcommand("grand", "omnithermal grand coupling with order checks");
  add_common(grand, grand_o, grand_r);
  std::string gvolumes;
  bool gconfigs = false;
  grand->add_option("--volumes", gvolumes, "comma list of volume indices (default: all)");
  grand->add_flag("--emit-configs", gconfigs, "include configuration bit strings");

  auto* factor = app.add_subcommand("factor", "spin configuration from an i.i.d. vertex field");
  add_common(factor, factor_o, factor_r);
  double fbeta = -1.0;
  int fr = 1;
  factor->add_option("--beta", fbeta, "inverse temperature (else from --p)");
  factor->add_option("--r", fr, "pinned spin for proxy-infinite clusters");

  auto* sweep = app.add_subcommand("sweep", "observable summaries over a (p,q) grid");
  add_common(sweep, sweep_o, sweep_r);
  bool sweep_per_edge = false;
  sweep->add_flag("--per-edge", sweep_per_edge, "emit per-edge marginal rows");

  auto* audit = app.add_subcommand("audit-rng", "dump the first k clock events per edge");
  add_common(audit, audit_o, audit_r);
  std::uint64_t audit_count = 10;
  audit->add_option("--count", audit_count, "events per edge");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(vseed, vquick, vfault, vonly, vout);
    if (exact->parsed()) {
      resolve(exact_o, exact_r);
      return cmd_exact(exact_o, exact_model, exact_beta, exact_clamp);
    }
    if (sample->parsed()) {
      resolve(sample_o, sample_r);
      return cmd_sample(sample_o);
    }
    if (forward->parsed()) {
      resolve(forward_o, forward_r);
      return cmd_forward(forward_o, fstart, fsnap);
    }
    if (grand->parsed()) {
      resolve(grand_o, grand_r);
      return cmd_grand(grand_o, gvolumes, gconfigs);
    }
    if (factor->parsed()) {
      resolve(factor_o, factor_r);
      return cmd_factor(factor_o, fbeta, fr);
    }
    if (sweep->parsed()) {
      resolve(sweep_o, sweep_r);
      return cmd_sweep(sweep_o, sweep_per_edge);
    }
    if (audit->parsed()) {
      resolve(audit_o, audit_r);
      return cmd_audit_rng(audit_o, audit_count);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
