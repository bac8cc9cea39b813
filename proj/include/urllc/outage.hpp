#pragma once

#include <cstdint>
#include <string_view>

#include "urllc/numerics.hpp"

namespace urllc {

/// L-branch i.i.d. Rayleigh link combined with MRC.
struct LinkConfig {
  int bins = 4;           ///< number of frequency/time bins L, >= 1
  double sigma_h2 = 1.0;  ///< per-bin channel power E|h_l|^2, > 0
  double snr_db = 3.0;    ///< per-bin transmit SNR P/N0 in dB

  void validate() const;
  double snr_linear() const;
};

/// Family of expressions used for Pr(Z_L < z).
enum class OutageModel {
  Exact,             ///< regularized incomplete gamma
  ChernoffU,         ///< (z e^{1-z})^L
  CorrectedB,        ///< (c_L z e^{1-c_L z})^L
  AsymptoticSeries,  ///< (Lz)^L / L!, the leading small-z term
};

std::string_view to_string(OutageModel model);
/// Accepts exact, chernoff, corrected, asymptotic. Throws DomainError otherwise.
OutageModel parse_outage_model(std::string_view name);

/// Mean MRC-SNR scale L * (P/N0) * sigma_h^2; rho = beta * Z_L.
double beta(const LinkConfig& link);

/// Pr(Z_L < z) where Z_L = chi^2_{2L} / (2L).
Probability outage_exact(int bins, double z);

/// Chernoff bound U_L(z), z in [0, 1). Increasing in z.
Probability chernoff_bound(int bins, double z);

/// c_L = L e^{-1} (L!)^{-1/L}; equals e^{-1} at L = 1 and is below e^{-1/L}
/// for L >= 2.
double correction_term(int bins);

/// B_L(z) = (c_L z e^{1 - c_L z})^L. Defined for c_L z < 1, which covers
/// [0, 1) and extends up to 1/c_L.
Probability corrected_bound(int bins, double z);

/// Leading term (Lz)^L / L! of the small-z expansion of Pr(Z_L <= z),
/// clamped to 1.
Probability outage_series_leading(int bins, double z);

/// ln of the bound values above; -inf at z = 0.
double log_chernoff_bound(int bins, double z);
double log_corrected_bound(int bins, double z);

/// Dispatches on the model. Domain errors of the selected model propagate.
Probability outage_probability(OutageModel model, int bins, double z);

}  // namespace urllc
