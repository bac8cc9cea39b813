#pragma once

#include <cstdint>

#include "urllc/numerics.hpp"

namespace urllc {

/// Upper bound 1/(ln 2)^2 on the complex-AWGN channel dispersion, bits^2.
inline constexpr double kDispersionCap = 2.0813689810056077979;

/// Blocklength and code rate of the transmitted codeword.
struct CodeParams {
  std::int64_t n = 4096;  ///< codeword length in channel uses, >= 2
  double rate = 0.5;      ///< bits per channel use, > 0

  /// Throws DomainError unless n >= 2 and rate > 0.
  void validate() const;
};

/// Which rate expression the per-realization decoder error inverts.
enum class DecoderModel {
  NormalApproximation,  ///< full normal approximation with V(rho) and log2(n)/(2n)
  DispersionCap,        ///< V replaced by kDispersionCap, no log term
};

/// Channel dispersion V(rho) in bits^2 per channel use.
double dispersion(double rho);

/// Normal-approximation achievable rate in bits per channel use.
double achievable_rate(double rho, const CodeParams& code, double eps);

/// Rate lower bound using kDispersionCap, which decouples eps from rho.
double rate_lower_bound(double rho, const CodeParams& code, double eps);

/// MRC-SNR threshold tau(eps) below which the rate lower bound falls under R,
/// clamped at 0 (the raw expression turns negative for eps close to 1).
/// Throws OverflowError when the threshold is not finite (eps far in the tail
/// with small n).
double snr_threshold(const CodeParams& code, double eps);

/// Nominal decoding error probability at a fixed MRC-SNR: the normal
/// approximation solved for eps at rate R.
Probability conditional_error_prob(double rho, const CodeParams& code,
                                   DecoderModel model = DecoderModel::NormalApproximation);

}  // namespace urllc
