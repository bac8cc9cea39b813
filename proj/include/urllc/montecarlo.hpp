#pragma once

#include <cstdint>
#include <string_view>

#include "urllc/finite_blocklength.hpp"
#include "urllc/kernels.hpp"
#include "urllc/outage.hpp"
#include "urllc/philox.hpp"

namespace urllc {

enum class Estimator {
  AnalyticAverage,  ///< average eps(rho) over channel draws
  Bernoulli,        ///< count trials where a uniform draw falls below eps(rho)
};

std::string_view to_string(Estimator estimator);
/// Accepts analytic, bernoulli.
Estimator parse_estimator(std::string_view name);

struct SimSpec {
  LinkConfig link;
  CodeParams code;
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  Estimator estimator = Estimator::AnalyticAverage;
  int shards = 1;
  DecoderModel decoder = DecoderModel::NormalApproximation;

  void validate() const;
};

struct PerEstimate {
  double per = 0.0;
  double ci_halfwidth_95 = 0.0;
  double sample_variance = 0.0;  ///< of the per-trial contributions
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Trials are processed in fixed blocks of this size; block b draws from
/// substreams [b * kTrialBlock, (b+1) * kTrialBlock).
inline constexpr std::int64_t kTrialBlock = 4096;

/// One MRC-SNR draw: (P/N0) * sum of L i.i.d. Exp(sigma_h2) gains, each from
/// -sigma_h2 * ln(u). Consumes L uniforms from the stream.
double sample_mrc_snr(RandomStream& stream, const LinkConfig& link);

/// Monte Carlo packet error rate. Trial i uses substream i of the seed:
/// draws 0..L-1 form the channel and, for the Bernoulli estimator, draw L
/// decides the packet. Block partial sums are merged in block order, so the
/// result does not depend on the number of shards (worker threads).
PerEstimate estimate_per(const SimSpec& spec);
PerEstimate estimate_per(const SimSpec& spec, const kernels::KernelSet& kernels);

}  // namespace urllc
