#include "urllc/finite_blocklength.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace urllc {

namespace {

void check_rho(double rho) {
  if (!(rho >= 0.0)) throw DomainError("MRC-SNR must be >= 0");
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1)");
}

double log2_1p(double rho) { return std::log1p(rho) * std::numbers::log2e; }

double log_term(std::int64_t n) {
  const double nd = static_cast<double>(n);
  return std::log2(nd) / (2.0 * nd);
}

}  // namespace

void CodeParams::validate() const {
  if (n < 2) throw DomainError("blocklength n must be >= 2, got " + std::to_string(n));
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("code rate must be > 0");
}

double dispersion(double rho) {
  check_rho(rho);
  // rho(2+rho)/(1+rho)^2 == 1 - (1+rho)^-2, evaluated without cancellation.
  const double fraction = -std::expm1(-2.0 * std::log1p(rho));
  return fraction * kDispersionCap;
}

double achievable_rate(double rho, const CodeParams& code, double eps) {
  check_rho(rho);
  check_eps(eps);
  code.validate();
  const double nd = static_cast<double>(code.n);
  return log2_1p(rho) - std::sqrt(dispersion(rho) / nd) * q_inv(eps) + log_term(code.n);
}

double rate_lower_bound(double rho, const CodeParams& code, double eps) {
  check_rho(rho);
  check_eps(eps);
  code.validate();
  const double nd = static_cast<double>(code.n);
  return log2_1p(rho) - std::sqrt(kDispersionCap / nd) * q_inv(eps);
}

double snr_threshold(const CodeParams& code, double eps) {
  check_eps(eps);
  code.validate();
  const double nd = static_cast<double>(code.n);
  const double exponent = code.rate + std::sqrt(kDispersionCap / nd) * q_inv(eps);
  const double tau = std::expm1(std::numbers::ln2 * exponent);
  if (!std::isfinite(tau)) throw OverflowError("snr_threshold: threshold overflows");
  // Negative for eps near 1 and small R; Pr(rho < tau) is 0 there either way.
  return std::max(tau, 0.0);
}

Probability conditional_error_prob(double rho, const CodeParams& code, DecoderModel model) {
  check_rho(rho);
  code.validate();
  const double nd = static_cast<double>(code.n);

  if (model == DecoderModel::DispersionCap) {
    const double arg = std::sqrt(nd / kDispersionCap) * (log2_1p(rho) - code.rate);
    return q_func(arg);
  }

  const double margin = log2_1p(rho) - code.rate + log_term(code.n);
  if (rho == 0.0) {
    // V(0) = 0: the normal approximation degenerates to a step at the rate.
    if (margin > 0.0) return Probability(0.0);
    if (margin < 0.0) return Probability(1.0);
    return Probability(0.5);
  }
  const double arg = std::sqrt(nd / dispersion(rho)) * margin;
  if (std::isinf(arg)) return Probability(arg > 0.0 ? 0.0 : 1.0);
  return q_func(arg);
}

}  // namespace urllc
