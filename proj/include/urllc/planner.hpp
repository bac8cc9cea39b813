#pragma once

#include "urllc/bound_optimizer.hpp"
#include "urllc/sweep.hpp"

namespace urllc {

enum class PlanTarget {
  MinBins,   ///< smallest L in [lo, hi]
  MinSnrDb,  ///< smallest snr_db in [lo, hi], to 0.01 dB
};

std::string_view to_string(PlanTarget target);

struct PlanQuery {
  double target_per = 1e-5;
  PlanTarget free = PlanTarget::MinBins;
  double lo = 1.0;
  double hi = 20.0;
  LinkConfig link;  ///< the free field is ignored
  CodeParams code;
  OutageModel model = OutageModel::CorrectedB;
  PowerMode power_mode = PowerMode::PerBinFixed;

  void validate() const;
};

struct PlanResult {
  bool feasible = false;
  PlanTarget free = PlanTarget::MinBins;
  double value = 0.0;  ///< L or snr_db; when infeasible, the best point tried
  BoundResult bound;   ///< bound at `value`
  double target_per = 0.0;
  int evaluations = 0;  ///< number of minimize_bound calls
};

/// Smallest parameter whose bound meets target_per, found by bisection on
/// the (empirically monotone) bound. For MinBins the bracket
/// bound(value) <= target < bound(value - 1) is a loop invariant; for
/// MinSnrDb the point value - 0.02 dB is probed again and a DomainError is
/// thrown if it also meets the target.
PlanResult plan_parameters(const PlanQuery& query);

nlohmann::json to_json(const PlanResult& result);
nlohmann::json to_json(const BoundResult& result);

}  // namespace urllc
