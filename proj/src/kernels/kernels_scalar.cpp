// Reference kernels: plain loops over the library's scalar functions. The
// SIMD variants are tested for equivalence against these.
#include <cassert>
#include <cmath>

#include "kernels_internal.hpp"

namespace urllc::kernels {

namespace {

void log_scalar(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::log(x[i]);
}

void exp_scalar(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::exp(x[i]);
}

void erfc_scalar(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::erfc(x[i]);
}

void mrc_snr_scalar(std::span<const double> uniforms, int bins, double scale,
                    std::span<double> rho) {
  const std::size_t count = rho.size();
  assert(uniforms.size() == count * static_cast<std::size_t>(bins));
  for (std::size_t i = 0; i < count; ++i) {
    double sum = 0.0;
    for (int l = 0; l < bins; ++l) sum += -std::log(uniforms[l * count + i]);
    rho[i] = scale * sum;
  }
}

void conditional_error_scalar(std::span<const double> rho, const DecoderConstants& constants,
                              std::span<double> eps) {
  assert(rho.size() == eps.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    eps[i] = conditional_error_prob(rho[i], constants.code, constants.model);
  }
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

DecoderConstants DecoderConstants::from(const CodeParams& code, DecoderModel model) {
  code.validate();
  const double nd = static_cast<double>(code.n);
  return DecoderConstants{code, model, std::sqrt(nd), std::log2(nd) / (2.0 * nd)};
}

const KernelSet& scalar_kernels() {
  static const KernelSet set{Isa::Scalar,    "scalar",       &log_scalar,
                             &exp_scalar,    &erfc_scalar,   &mrc_snr_scalar,
                             &conditional_error_scalar};
  return set;
}

}  // namespace urllc::kernels
