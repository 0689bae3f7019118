#pragma once
// From-the-past sampling. run_from_past evolves a chain over (-T, 0] with the
// window's events; cftp_exact doubles the window, reusing the same randomness
// (window extension is a suffix, bit for bit), until the all-closed and
// all-open trajectories coalesce at time 0 - the coalesced state is an exact
// finite-volume sample. grand_coupling drives chains at every requested
// (parameter, boundary rule, volume) index off one shared event stream and
// certifies all pointwise orderings between comparable indices.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcpotts/dynamics.hpp"
#include "rcpotts/edge_config.hpp"
#include "rcpotts/graph.hpp"
#include "rcpotts/params.hpp"
#include "rcpotts/randomness.hpp"

namespace rcpotts {

// Events of `events` (ascending time over (-T_full, 0]) with time > -T:
// exactly the window-T stream, by the suffix property.
inline std::vector<UpdateEvent> window_suffix(const std::vector<UpdateEvent>& events,
                                              double T) {
  auto it = std::lower_bound(events.begin(), events.end(), -T,
                             [](const UpdateEvent& ev, double t) { return ev.time <= t; });
  return std::vector<UpdateEvent>(it, events.end());
}

inline EdgeConfig run_from_past(const UpdateRule& rule,
                                const std::vector<UpdateEvent>& events,
                                ChainStart start, const EvolveOptions& opts = {}) {
  return evolve(rule.initial(start), rule, events, opts);
}

inline EdgeConfig run_from_past(const UpdateRule& rule, std::uint64_t seed, double T,
                                ChainStart start, const EvolveOptions& opts = {}) {
  return run_from_past(rule, events_in_window(seed, *rule.graph, T), start, opts);
}

struct CftpResult {
  bool coalesced = false;
  EdgeConfig config;       // the exact sample when coalesced
  double window = 0.0;     // window length at coalescence (or last attempted)
  int stages = 0;          // number of windows tried
  EdgeConfig lower, upper; // final bounding pair (equal when coalesced)
};

// Monotone sandwich CFTP with the doubling schedule T = 1, 2, 4, ... <= t_max.
// Never returns a biased sample: failure to coalesce reports the bounding
// pair instead.
inline CftpResult cftp_exact(const UpdateRule& rule, std::uint64_t seed,
                             double t_max = 4096.0, const EvolveOptions& opts = {}) {
  if (!(t_max > 0.0)) throw std::invalid_argument("cftp_exact: t_max must be positive");
  CftpResult r;
  for (double T = std::min(1.0, t_max); T <= t_max; T *= 2.0) {
    std::vector<UpdateEvent> events = events_in_window(seed, *rule.graph, T);
    r.lower = run_from_past(rule, events, ChainStart::AllClosed, opts);
    r.upper = run_from_past(rule, events, ChainStart::AllOpen, opts);
    r.window = T;
    ++r.stages;
    if (!config_leq(r.lower, r.upper))
      throw std::logic_error("cftp_exact: sandwich order violated (kernel bug)");
    if (r.lower == r.upper) {
      r.coalesced = true;
      r.config = r.lower;
      return r;
    }
  }
  return r;
}

struct CouplingIndex {
  ParamPoint param;
  BoundaryRule kind = BoundaryRule::Free;
  int volume = 1;  // 1-based volume index

  std::string label() const {
    std::ostringstream os;
    os << (kind == BoundaryRule::Free ? "free" : "wired") << ":i=" << volume
       << ":p=" << param.p << ":q=" << param.q;
    return os.str();
  }
};

// Whether the coupled chain at `a` is provably below the one at `b` for every
// shared randomness: thresholds ordered, and the boundary rules and volumes
// compose monotonely (free grows with volume, wired shrinks, free below
// wired).
inline bool expected_leq(const CouplingIndex& a, const CouplingIndex& b) {
  if (!param_leq(a.param, b.param)) return false;
  if (a.kind == BoundaryRule::Free && b.kind == BoundaryRule::Free)
    return a.volume <= b.volume;
  if (a.kind == BoundaryRule::Wired && b.kind == BoundaryRule::Wired)
    return a.volume >= b.volume;
  return a.kind == BoundaryRule::Free;  // free <= wired, never wired <= free
}

// Which family of orderings a comparable pair certifies; used to label the
// order-check breakdown in reports.
inline std::string order_check_category(const CouplingIndex& a, const CouplingIndex& b) {
  std::string rules = a.kind == b.kind
                          ? (a.kind == BoundaryRule::Free ? "free" : "wired")
                          : "free-wired";
  if (a.param == b.param) {
    if (a.kind != b.kind && a.volume == b.volume) return "free-below-wired";
    if (a.kind == b.kind) return rules + "-volume-chain";
    return "free-below-wired-cross-volume";
  }
  std::string prefix = a.param.q == b.param.q ? "p-monotone-" : "pq-general-";
  return prefix + rules;
}

struct OrderCheck {
  std::size_t lower_index = 0;
  std::size_t upper_index = 0;
  bool holds = true;
  long violating_edge = -1;
};

struct CouplingFamily {
  std::vector<CouplingIndex> indices;
  std::vector<EdgeConfig> configs;
  std::vector<std::uint8_t> coalesced;
  std::vector<double> coalescence_window;  // 0 when not coalesced within T
  std::uint64_t seed = 0;
  double window = 0.0;
  std::vector<OrderCheck> checks;
  std::size_t violations = 0;
  std::size_t time_collisions = 0;
};

struct GrandCouplingOptions {
  bool check_orders = true;
  bool detect_coalescence = true;
  bool throw_on_violation = true;
  EvolveOptions evolve;
};

// One shared event stream drives every index; each chain starts from its
// rule's extremal state (free: all closed, wired: all open) and runs over
// (-T, 0]. Order violations between comparable indices would contradict the
// monotone kernel, so by default they raise instead of being reported softly.
inline CouplingFamily grand_coupling(const Graph& g, const Exhaustion& exhaustion,
                                     const std::vector<ParamPoint>& params,
                                     const std::vector<int>& volumes, double T,
                                     std::uint64_t seed,
                                     const GrandCouplingOptions& opts = {}) {
  if (params.empty() || volumes.empty())
    throw std::invalid_argument("grand_coupling: empty index set");
  CouplingFamily fam;
  fam.seed = seed;
  fam.window = T;
  for (const ParamPoint& p : params)
    for (BoundaryRule kind : {BoundaryRule::Free, BoundaryRule::Wired})
      for (int v : volumes) fam.indices.push_back({p, kind, v});

  std::vector<UpdateEvent> events = events_in_window(seed, g, T);
  fam.time_collisions = count_time_collisions(events);

  for (const CouplingIndex& idx : fam.indices) {
    UpdateRule rule = UpdateRule::make(g, idx.kind, idx.param, &exhaustion, idx.volume);
    ChainStart start =
        idx.kind == BoundaryRule::Free ? ChainStart::AllClosed : ChainStart::AllOpen;
    fam.configs.push_back(run_from_past(rule, events, start, opts.evolve));

    bool coalesced = false;
    double at = 0.0;
    if (opts.detect_coalescence) {
      for (double w = 1.0; w <= T; w *= 2.0) {
        std::vector<UpdateEvent> sub = window_suffix(events, w);
        EdgeConfig lo = run_from_past(rule, sub, ChainStart::AllClosed, opts.evolve);
        EdgeConfig hi = run_from_past(rule, sub, ChainStart::AllOpen, opts.evolve);
        if (lo == hi) {
          coalesced = true;
          at = w;
          break;
        }
      }
    }
    fam.coalesced.push_back(coalesced);
    fam.coalescence_window.push_back(at);
  }

  if (opts.check_orders) {
    for (std::size_t a = 0; a < fam.indices.size(); ++a) {
      for (std::size_t b = 0; b < fam.indices.size(); ++b) {
        if (a == b || !expected_leq(fam.indices[a], fam.indices[b])) continue;
        OrderCheck chk;
        chk.lower_index = a;
        chk.upper_index = b;
        chk.violating_edge = first_order_violation(fam.configs[a], fam.configs[b]);
        chk.holds = chk.violating_edge < 0;
        if (!chk.holds) ++fam.violations;
        fam.checks.push_back(chk);
      }
    }
    if (fam.violations > 0 && opts.throw_on_violation) {
      for (const OrderCheck& chk : fam.checks) {
        if (!chk.holds) {
          throw std::logic_error(
              "grand_coupling: pointwise order violated between " +
              fam.indices[chk.lower_index].label() + " and " +
              fam.indices[chk.upper_index].label() + " at edge " +
              std::to_string(chk.violating_edge) + " (kernel bug)");
        }
      }
    }
  }
  return fam;
}

enum class MonotoneExpectation { None, NonDecreasing, NonIncreasing };

struct StabilizationReport {
  std::vector<int> first_stable;  // per edge: first index after which constant
  double fraction_stable = 0.0;   // stabilized strictly before the last entry
  bool monotone_ok = true;
  long first_violation_edge = -1;
  int first_violation_step = -1;
};

// Per-edge stabilization along a family sequence (increasing volume or
// window). Optionally enforces the expected coordinatewise monotonicity;
// a violation marks the report rather than throwing, since callers decide
// whether it is fatal.
inline StabilizationReport volume_limit_diagnostic(
    const std::vector<EdgeConfig>& sequence,
    MonotoneExpectation expect = MonotoneExpectation::None) {
  if (sequence.size() < 2)
    throw std::invalid_argument("volume_limit_diagnostic: need at least two entries");
  const std::size_t m = sequence.front().size();
  for (const EdgeConfig& c : sequence)
    if (c.size() != m)
      throw std::invalid_argument("volume_limit_diagnostic: mismatched edge sets");

  StabilizationReport r;
  r.first_stable.assign(m, 0);
  for (std::size_t e = 0; e < m; ++e) {
    int stable = 0;
    for (std::size_t i = 1; i < sequence.size(); ++i)
      if (sequence[i][e] != sequence[i - 1][e]) stable = static_cast<int>(i);
    r.first_stable[e] = stable;
    // Stabilized: held constant for at least the final two entries.
    if (stable + 1 < static_cast<int>(sequence.size())) r.fraction_stable += 1.0;
  }
  r.fraction_stable /= m == 0 ? 1.0 : static_cast<double>(m);

  if (expect != MonotoneExpectation::None) {
    for (std::size_t i = 1; i < sequence.size() && r.monotone_ok; ++i) {
      const EdgeConfig& lo =
          expect == MonotoneExpectation::NonDecreasing ? sequence[i - 1] : sequence[i];
      const EdgeConfig& hi =
          expect == MonotoneExpectation::NonDecreasing ? sequence[i] : sequence[i - 1];
      long e = first_order_violation(lo, hi);
      if (e >= 0) {
        r.monotone_ok = false;
        r.first_violation_edge = e;
        r.first_violation_step = static_cast<int>(i);
      }
    }
  }
  return r;
}

}  // namespace rcpotts
