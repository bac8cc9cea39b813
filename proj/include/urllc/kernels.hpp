#pragma once

#include <span>
#include <string_view>

#include "urllc/finite_blocklength.hpp"

namespace urllc::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// Per-call constants for the batched decoder-error kernel.
struct DecoderConstants {
  CodeParams code;
  DecoderModel model = DecoderModel::NormalApproximation;
  double sqrt_n = 0.0;
  double log_term = 0.0;  ///< log2(n)/(2n); unused by DispersionCap

  static DecoderConstants from(const CodeParams& code, DecoderModel model);
};

/// Batched inner loops of the Monte Carlo estimator. Every variant computes
/// the same functions; they differ only in rounding. Output spans must have
/// the same length as the (per-bin) input spans.
struct KernelSet {
  Isa isa;
  std::string_view name;

  void (*log)(std::span<const double> x, std::span<double> out);
  void (*exp)(std::span<const double> x, std::span<double> out);
  void (*erfc)(std::span<const double> x, std::span<double> out);

  /// rho[i] = scale * sum_{l < bins} -ln(uniforms[l * rho.size() + i]).
  /// Uniforms are bin-major; the bins are summed in increasing l.
  void (*mrc_snr)(std::span<const double> uniforms, int bins, double scale,
                  std::span<double> rho);

  /// eps[i] = conditional_error_prob(rho[i]) for the decoder in `constants`.
  void (*conditional_error)(std::span<const double> rho, const DecoderConstants& constants,
                            std::span<double> eps);
};

const KernelSet& scalar_kernels();

/// True when the variant was compiled in and the CPU supports it.
bool available(Isa isa);

/// Throws DomainError when the variant is unavailable.
const KernelSet& kernels_for(Isa isa);

/// Best available variant, unless the URLLC_KERNELS environment variable
/// names one (`scalar` or `avx2`). Resolved once per process.
const KernelSet& active_kernels();

}  // namespace urllc::kernels
