#include "urllc/planner.hpp"

#include <cmath>
#include <string>

namespace urllc {

namespace {

constexpr double kSnrResolutionDb = 0.01;

class BoundProbe {
 public:
  explicit BoundProbe(const PlanQuery& q) : q_(q) {}

  BoundResult operator()(double value) {
    ++evaluations_;
    const SweepAxis axis = q_.free == PlanTarget::MinBins ? SweepAxis::Bins : SweepAxis::SnrDb;
    const auto [link, code] = point_config(axis, value, q_.link, q_.code, q_.power_mode);
    return minimize_bound(code, link, q_.model);
  }

  bool meets(const BoundResult& r) const { return r.per_bound <= q_.target_per; }
  int evaluations() const { return evaluations_; }

 private:
  const PlanQuery& q_;
  int evaluations_ = 0;
};

PlanResult finish(const PlanQuery& q, const BoundProbe& probe, bool feasible, double value,
                  const BoundResult& bound) {
  PlanResult r;
  r.feasible = feasible;
  r.free = q.free;
  r.value = value;
  r.bound = bound;
  r.target_per = q.target_per;
  r.evaluations = probe.evaluations();
  return r;
}

PlanResult plan_bins(const PlanQuery& q) {
  BoundProbe probe(q);
  const auto lo = static_cast<int>(std::ceil(q.lo));
  const auto hi = static_cast<int>(std::floor(q.hi));
  if (lo > hi) throw DomainError("plan: no integer bin count in [lo, hi]");

  BoundResult at_lo = probe(lo);
  if (probe.meets(at_lo)) return finish(q, probe, true, lo, at_lo);
  BoundResult at_hi = probe(hi);
  if (!probe.meets(at_hi)) {
    const bool lo_better = at_lo.per_bound < at_hi.per_bound;
    return finish(q, probe, false, lo_better ? lo : hi, lo_better ? at_lo : at_hi);
  }

  // Invariant: bound(a) > target, bound(b) <= target.
  int a = lo;
  int b = hi;
  BoundResult at_b = at_hi;
  while (b - a > 1) {
    const int mid = a + (b - a) / 2;
    BoundResult r = probe(mid);
    if (probe.meets(r)) {
      b = mid;
      at_b = r;
    } else {
      a = mid;
    }
  }
  return finish(q, probe, true, b, at_b);
}

PlanResult plan_snr(const PlanQuery& q) {
  BoundProbe probe(q);
  BoundResult at_lo = probe(q.lo);
  if (probe.meets(at_lo)) return finish(q, probe, true, q.lo, at_lo);
  BoundResult at_hi = probe(q.hi);
  if (!probe.meets(at_hi)) return finish(q, probe, false, q.hi, at_hi);

  double a = q.lo;
  double b = q.hi;
  BoundResult at_b = at_hi;
  while (b - a > kSnrResolutionDb) {
    const double mid = 0.5 * (a + b);
    BoundResult r = probe(mid);
    if (probe.meets(r)) {
      b = mid;
      at_b = r;
    } else {
      a = mid;
    }
  }
  // Bracket check at twice the resolution below the answer.
  const double below = b - 2.0 * kSnrResolutionDb;
  if (below >= q.lo && probe.meets(probe(below))) {
    throw DomainError("plan: bound is not monotone in snr_db near the solution");
  }
  return finish(q, probe, true, b, at_b);
}

}  // namespace

std::string_view to_string(PlanTarget target) {
  return target == PlanTarget::MinBins ? "bins" : "snr_db";
}

void PlanQuery::validate() const {
  if (!(target_per > 0.0 && target_per < 1.0)) throw DomainError("target_per must lie in (0,1)");
  if (!(lo < hi)) throw DomainError("plan search range needs lo < hi");
  code.validate();
  LinkConfig probe = link;
  if (free == PlanTarget::MinBins) {
    if (lo < 1.0) throw DomainError("bin search range must start at >= 1");
    probe.bins = 1;
  }
  probe.validate();
}

PlanResult plan_parameters(const PlanQuery& query) {
  query.validate();
  return query.free == PlanTarget::MinBins ? plan_bins(query) : plan_snr(query);
}

nlohmann::json to_json(const BoundResult& r) {
  return {{"eps_star", r.eps_star},
          {"per_bound", r.per_bound},
          {"tau_star", r.tau_star},
          {"outage_at_star", r.outage_at_star},
          {"model", std::string(to_string(r.model))},
          {"evaluations", r.evaluations},
          {"degenerate", r.degenerate}};
}

nlohmann::json to_json(const PlanResult& r) {
  return {{"feasible", r.feasible},
          {"free", std::string(to_string(r.free))},
          {"value", r.value},
          {"target_per", r.target_per},
          {"achieved_bound", r.bound.per_bound},
          {"bound", to_json(r.bound)},
          {"evaluations", r.evaluations}};
}

}  // namespace urllc
