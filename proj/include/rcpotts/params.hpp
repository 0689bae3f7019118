#pragma once
// Random-cluster parameter points (p, q) and the two-threshold partial order
// governing which chains admit a monotone coupling under shared updates.

#include <stdexcept>

namespace rcpotts {

struct ParamPoint {
  double p = 0.5;
  double q = 1.0;

  ParamPoint() = default;
  ParamPoint(double p_, double q_) : p(p_), q(q_) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("ParamPoint: p must lie in [0,1]");
    if (!(q >= 1.0)) throw std::invalid_argument("ParamPoint: q must be >= 1");
  }

  // Heat-bath threshold when the endpoints are not otherwise connected.
  // Equals p at q = 1 and 1 at p = 1.
  double lower_threshold() const { return p / (p + (1.0 - p) * q); }
  double upper_threshold() const { return p; }
};

inline bool operator==(const ParamPoint& a, const ParamPoint& b) {
  return a.p == b.p && a.q == b.q;
}

// (p1,q1) precedes (p2,q2) when both heat-bath thresholds are ordered, which
// is exactly the condition under which shared updates keep the two chains
// pointwise ordered. Evaluated on the same floating-point expressions the
// kernel compares against, so a passing check is exact rather than
// approximate.
inline bool param_leq(const ParamPoint& a, const ParamPoint& b) {
  return a.p <= b.p && a.lower_threshold() <= b.lower_threshold();
}

}  // namespace rcpotts
