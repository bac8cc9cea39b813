#include <cmath>

#include "doctest.h"
#include "urllc/planner.hpp"

using namespace urllc;

namespace {

PlanQuery bins_query(double target) {
  PlanQuery q;
  q.target_per = target;
  q.free = PlanTarget::MinBins;
  q.lo = 1;
  q.hi = 20;
  q.link = LinkConfig{4, 1.0, 3.0};
  q.code = CodeParams{4096, 0.5};
  return q;
}

double bound_at_bins(const PlanQuery& q, int bins) {
  LinkConfig l = q.link;
  l.bins = bins;
  return minimize_bound(q.code, l, q.model).per_bound;
}

double bound_at_snr(const PlanQuery& q, double snr) {
  LinkConfig l = q.link;
  l.snr_db = snr;
  return minimize_bound(q.code, l, q.model).per_bound;
}

}  // namespace

TEST_CASE("loose target is met at the bottom of the range") {
  const PlanResult r = plan_parameters(bins_query(0.99));
  CHECK(r.feasible);
  CHECK(r.value == 1.0);
  CHECK(r.evaluations == 1);
}

TEST_CASE("minimum bins agrees with an exhaustive scan") {
  for (double target : {1e-2, 1e-3, 1e-5, 1e-7}) {
    const PlanQuery q = bins_query(target);
    int expected = -1;
    for (int l = 1; l <= 20; ++l) {
      if (bound_at_bins(q, l) <= target) {
        expected = l;
        break;
      }
    }
    CAPTURE(target);
    const PlanResult r = plan_parameters(q);
    REQUIRE(expected > 0);
    CHECK(r.feasible);
    CHECK(r.value == expected);
    CHECK(r.bound.per_bound <= target);
    if (expected > 1) CHECK(bound_at_bins(q, expected - 1) > target);
  }
  const PlanResult r = plan_parameters(bins_query(1e-5));
  CHECK(r.value == 5.0);
}

TEST_CASE("minimum SNR brackets the target") {
  PlanQuery q = bins_query(1e-5);
  q.free = PlanTarget::MinSnrDb;
  q.lo = -10;
  q.hi = 30;
  const PlanResult r = plan_parameters(q);
  REQUIRE(r.feasible);
  CHECK(r.bound.per_bound <= 1e-5);
  CHECK(bound_at_snr(q, r.value) <= 1e-5);
  CHECK(bound_at_snr(q, r.value - 0.02) > 1e-5);
}

TEST_CASE("plan round trips through a single-point sweep") {
  for (PowerMode mode : {PowerMode::PerBinFixed, PowerMode::TotalFixed}) {
    PlanQuery q = bins_query(1e-4);
    q.power_mode = mode;
    q.link.snr_db = 8.0;
    const PlanResult r = plan_parameters(q);
    REQUIRE(r.feasible);
    SweepSpec s;
    s.axis = SweepAxis::Bins;
    s.values = {r.value};
    s.link = q.link;
    s.code = q.code;
    s.power_mode = mode;
    s.outputs = {SweepOutput::BoundCorrected};
    const SweepTable t = run_sweep(s);
    CHECK(t.rows[0].cells[t.column("bound_corrected")] == r.bound.per_bound);
  }
  PlanQuery q = bins_query(1e-4);
  q.free = PlanTarget::MinSnrDb;
  q.lo = -5;
  q.hi = 25;
  const PlanResult r = plan_parameters(q);
  SweepSpec s;
  s.axis = SweepAxis::SnrDb;
  s.values = {r.value};
  s.link = q.link;
  s.code = q.code;
  s.outputs = {SweepOutput::BoundCorrected};
  CHECK(run_sweep(s).rows[0].cells[0] == r.bound.per_bound);
}

TEST_CASE("unreachable target is reported as infeasible") {
  PlanQuery q = bins_query(1e-30);
  q.hi = 3;
  const PlanResult r = plan_parameters(q);
  CHECK_FALSE(r.feasible);
  CHECK(r.bound.per_bound > 1e-30);
  CHECK(r.bound.per_bound == bound_at_bins(q, static_cast<int>(r.value)));
  q = bins_query(1e-9);
  q.free = PlanTarget::MinSnrDb;
  q.lo = -5;
  q.hi = 0;
  CHECK_FALSE(plan_parameters(q).feasible);
}

TEST_CASE("query validation") {
  PlanQuery q = bins_query(0.0);
  CHECK_THROWS_AS(plan_parameters(q), DomainError);
  q = bins_query(1e-3);
  q.lo = 5;
  q.hi = 5;
  CHECK_THROWS_AS(plan_parameters(q), DomainError);
  q = bins_query(1e-3);
  q.lo = 0;
  CHECK_THROWS_AS(plan_parameters(q), DomainError);
  q = bins_query(1e-3);
  q.code.n = 1;
  CHECK_THROWS_AS(plan_parameters(q), DomainError);
}

TEST_CASE("json rendering") {
  const PlanResult r = plan_parameters(bins_query(1e-3));
  const auto j = to_json(r);
  CHECK(j.at("feasible").get<bool>());
  CHECK(j.at("bound").at("per_bound").get<double>() == r.bound.per_bound);
  CHECK(j.at("bound").at("model").get<std::string>() == "corrected");
}
