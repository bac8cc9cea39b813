#include "urllc/bound_optimizer.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace urllc {

namespace {

constexpr double kEpsLow = 1e-12;
constexpr double kEpsHigh = 1.0 - 1e-6;
constexpr int kGridPoints = 200;
constexpr double kTieTolerance = 1e-12;
constexpr double kLogWidthTolerance = 1e-4;
// q_inv and the threshold stay finite down to here.
constexpr double kEpsFloor = 1e-300;

class Objective {
 public:
  Objective(const CodeParams& code, const LinkConfig& link, OutageModel model)
      : code_(code), link_(link), model_(model) {}

  double operator()(double log_eps) {
    ++evaluations_;
    return evaluate_objective(std::exp(log_eps), code_, link_, model_).value;
  }

  int evaluations() const { return evaluations_; }

 private:
  const CodeParams& code_;
  const LinkConfig& link_;
  OutageModel model_;
  int evaluations_ = 0;
};

bool better(double candidate, double incumbent) {
  return candidate < incumbent * (1.0 - kTieTolerance);
}

}  // namespace

ObjectivePoint evaluate_objective(double eps, const CodeParams& code, const LinkConfig& link,
                                  OutageModel model) {
  ObjectivePoint point;
  point.eps = eps;
  point.tau = snr_threshold(code, eps);
  point.z = point.tau / beta(link);

  const bool undefined =
      (model == OutageModel::ChernoffU && point.z >= 1.0) ||
      (model == OutageModel::CorrectedB && correction_term(link.bins) * point.z >= 1.0);
  if (undefined) {
    point.pinned = true;
    point.outage = 1.0;
    point.value = 1.0;
    return point;
  }
  point.outage = outage_probability(model, link.bins, point.z);
  point.value = std::min(1.0, eps + (1.0 - eps) * point.outage);
  return point;
}

double per_objective(double eps, const CodeParams& code, const LinkConfig& link,
                     OutageModel model) {
  return evaluate_objective(eps, code, link, model).value;
}

BoundResult minimize_bound(const CodeParams& code, const LinkConfig& link, OutageModel model) {
  code.validate();
  link.validate();
  Objective objective(code, link, model);

  const double lo = std::log(kEpsLow);
  const double hi = std::log(kEpsHigh);
  const double step = (hi - lo) / (kGridPoints - 1);

  std::vector<double> grid(kGridPoints);
  std::vector<double> values(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    grid[i] = (i == kGridPoints - 1) ? hi : lo + step * i;
    values[i] = objective(grid[i]);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (better(values[i], values[best])) best = i;
  }

  // Continue the grid below kEpsLow while the objective keeps falling.
  const double floor = std::log(kEpsFloor);
  while (best == 0 && grid.front() - step > floor) {
    const double x = grid.front() - step;
    const double v = objective(x);
    grid.insert(grid.begin(), x);
    values.insert(values.begin(), v);
    if (!better(v, values[1])) {
      best = 1;
      break;
    }
  }

  double best_x = grid[best];
  double best_v = values[best];

  if (best_v < 1.0) {
    double a = grid[best == 0 ? 0 : best - 1];
    double b = grid[best + 1 < grid.size() ? best + 1 : best];
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > kLogWidthTolerance) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = objective(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = objective(d);
      }
    }
    for (auto [x, v] : std::array{std::pair{c, fc}, std::pair{d, fd}}) {
      if (better(v, best_v)) {
        best_v = v;
        best_x = x;
      }
    }
  }

  const ObjectivePoint star = evaluate_objective(std::exp(best_x), code, link, model);
  BoundResult result;
  result.eps_star = star.eps;
  result.per_bound = star.value;
  result.tau_star = star.tau;
  result.outage_at_star = star.outage;
  result.model = model;
  result.evaluations = objective.evaluations() + 1;
  result.degenerate = star.value >= 1.0;
  if (result.degenerate) result.per_bound = 1.0;
  return result;
}

Probability per_asymptotic(const CodeParams& code, const LinkConfig& link) {
  code.validate();
  const double tau = std::expm1(std::numbers::ln2 * code.rate);
  return outage_exact(link.bins, tau / beta(link));
}

}  // namespace urllc
