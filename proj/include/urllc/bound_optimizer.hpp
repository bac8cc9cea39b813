#pragma once

#include "urllc/finite_blocklength.hpp"
#include "urllc/outage.hpp"

namespace urllc {

/// One evaluation of eps + (1 - eps) * F(tau(eps) / beta).
struct ObjectivePoint {
  double eps = 0.0;
  double tau = 0.0;
  double z = 0.0;
  double outage = 0.0;
  double value = 1.0;
  bool pinned = false;  ///< outage model undefined at z; value forced to 1
};

struct BoundResult {
  double eps_star = 0.5;
  double per_bound = 1.0;
  double tau_star = 0.0;
  double outage_at_star = 1.0;
  OutageModel model = OutageModel::CorrectedB;
  int evaluations = 0;
  bool degenerate = false;  ///< objective >= 1 on the whole search range
};

ObjectivePoint evaluate_objective(double eps, const CodeParams& code, const LinkConfig& link,
                                  OutageModel model);

/// Upper bound on the packet error rate for a fixed nominal error eps.
double per_objective(double eps, const CodeParams& code, const LinkConfig& link,
                     OutageModel model);

/// Minimizes per_objective over eps.
///
/// A 200-point grid on ln(eps) over [1e-12, 1 - 1e-6] brackets the minimum
/// (ties within 1e-12 relative go to the smallest eps), then golden-section
/// search narrows the bracket to 1e-4 in ln(eps). When the minimum sits on
/// the lowest grid point the grid is continued downward, since the objective
/// only turns back up once eps falls below the outage term. Deterministic.
BoundResult minimize_bound(const CodeParams& code, const LinkConfig& link, OutageModel model);

/// Packet error rate of a capacity-achieving code as n -> infinity:
/// Pr(rho < 2^R - 1).
Probability per_asymptotic(const CodeParams& code, const LinkConfig& link);

}  // namespace urllc
