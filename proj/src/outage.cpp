#include "urllc/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace urllc {

namespace {

void check_bins(int bins) {
  if (bins < 1) throw DomainError("number of bins L must be >= 1, got " + std::to_string(bins));
}

void check_z(double z) {
  if (!(z >= 0.0)) throw DomainError("outage argument z must be >= 0");
}

// L * (ln a + 1 - a) for a = (scaled) z, the common shape of U_L and B_L.
double log_chernoff_shape(int bins, double a) {
  if (a == 0.0) return -std::numeric_limits<double>::infinity();
  return bins * (std::log(a) + 1.0 - a);
}

}  // namespace

void LinkConfig::validate() const {
  check_bins(bins);
  if (!(sigma_h2 > 0.0) || !std::isfinite(sigma_h2)) throw DomainError("sigma_h2 must be > 0");
  if (!std::isfinite(snr_db)) throw DomainError("snr_db must be finite");
}

double LinkConfig::snr_linear() const { return std::pow(10.0, snr_db / 10.0); }

std::string_view to_string(OutageModel model) {
  switch (model) {
    case OutageModel::Exact: return "exact";
    case OutageModel::ChernoffU: return "chernoff";
    case OutageModel::CorrectedB: return "corrected";
    case OutageModel::AsymptoticSeries: return "asymptotic";
  }
  return "unknown";
}

OutageModel parse_outage_model(std::string_view name) {
  if (name == "exact") return OutageModel::Exact;
  if (name == "chernoff") return OutageModel::ChernoffU;
  if (name == "corrected") return OutageModel::CorrectedB;
  if (name == "asymptotic") return OutageModel::AsymptoticSeries;
  throw DomainError("unknown outage model: " + std::string(name));
}

double beta(const LinkConfig& link) {
  link.validate();
  return link.bins * link.snr_linear() * link.sigma_h2;
}

Probability outage_exact(int bins, double z) {
  check_bins(bins);
  check_z(z);
  return reg_lower_gamma(bins, bins * z);
}

double log_chernoff_bound(int bins, double z) {
  check_bins(bins);
  if (!(z >= 0.0 && z < 1.0)) throw DomainError("chernoff_bound: z must lie in [0,1)");
  return log_chernoff_shape(bins, z);
}

Probability chernoff_bound(int bins, double z) {
  return Probability::clamped(std::exp(log_chernoff_bound(bins, z)));
}

double correction_term(int bins) {
  check_bins(bins);
  return std::exp(std::log(static_cast<double>(bins)) - 1.0 - log_factorial(bins) / bins);
}

double log_corrected_bound(int bins, double z) {
  check_bins(bins);
  check_z(z);
  const double a = correction_term(bins) * z;
  if (a >= 1.0) throw DomainError("corrected_bound: c_L * z must be < 1");
  return log_chernoff_shape(bins, a);
}

Probability corrected_bound(int bins, double z) {
  return Probability::clamped(std::exp(log_corrected_bound(bins, z)));
}

Probability outage_series_leading(int bins, double z) {
  check_bins(bins);
  check_z(z);
  if (z == 0.0) return Probability(0.0);
  const double log_value = bins * std::log(bins * z) - log_factorial(bins);
  return Probability::clamped(std::exp(std::min(log_value, 0.0)));
}

Probability outage_probability(OutageModel model, int bins, double z) {
  switch (model) {
    case OutageModel::Exact: return outage_exact(bins, z);
    case OutageModel::ChernoffU: return chernoff_bound(bins, z);
    case OutageModel::CorrectedB: return corrected_bound(bins, z);
    case OutageModel::AsymptoticSeries: return outage_series_leading(bins, z);
  }
  throw DomainError("unknown outage model");
}

}  // namespace urllc
