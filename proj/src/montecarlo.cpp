#include "urllc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

namespace urllc {

namespace {

// Running mean and centered second moment, merged with Chan's update.
struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double total = na + nb;
    const double delta = other.mean - mean;
    mean += delta * nb / total;
    m2 += other.m2 + delta * delta * na * nb / total;
    count += other.count;
  }
};

struct BlockWorkspace {
  std::vector<double> uniforms;
  std::vector<double> decision;
  std::vector<double> rho;
  std::vector<double> eps;
};

Moments run_block(const SimSpec& spec, const kernels::KernelSet& kernels,
                  const kernels::DecoderConstants& decoder, std::int64_t block,
                  BlockWorkspace& ws) {
  const std::int64_t first = block * kTrialBlock;
  const auto count = static_cast<std::size_t>(std::min(kTrialBlock, spec.trials - first));
  const int bins = spec.link.bins;

  ws.uniforms.resize(count * static_cast<std::size_t>(bins));
  ws.rho.resize(count);
  ws.eps.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto substream = static_cast<std::uint64_t>(first) + i;
    fill_substream_uniforms(spec.seed, substream, static_cast<std::size_t>(bins),
                            ws.uniforms.data() + i, count);
  }

  const double scale = spec.link.snr_linear() * spec.link.sigma_h2;
  kernels.mrc_snr(ws.uniforms, bins, scale, ws.rho);
  kernels.conditional_error(ws.rho, decoder, ws.eps);

  Moments moments;
  if (spec.estimator == Estimator::AnalyticAverage) {
    for (double e : ws.eps) moments.add(e);
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const auto substream = static_cast<std::uint64_t>(first) + i;
      const double u = substream_uniform(spec.seed, substream, bins);
      moments.add(u < ws.eps[i] ? 1.0 : 0.0);
    }
  }
  return moments;
}

}  // namespace

std::string_view to_string(Estimator estimator) {
  return estimator == Estimator::AnalyticAverage ? "analytic" : "bernoulli";
}

Estimator parse_estimator(std::string_view name) {
  if (name == "analytic") return Estimator::AnalyticAverage;
  if (name == "bernoulli") return Estimator::Bernoulli;
  throw DomainError("unknown estimator: " + std::string(name));
}

void SimSpec::validate() const {
  link.validate();
  code.validate();
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (shards < 1) throw DomainError("shards must be >= 1");
}

double sample_mrc_snr(RandomStream& stream, const LinkConfig& link) {
  link.validate();
  double gain = 0.0;
  for (int l = 0; l < link.bins; ++l) gain += -std::log(stream.uniform());
  return link.snr_linear() * link.sigma_h2 * gain;
}

PerEstimate estimate_per(const SimSpec& spec) {
  return estimate_per(spec, kernels::active_kernels());
}

PerEstimate estimate_per(const SimSpec& spec, const kernels::KernelSet& kernels) {
  spec.validate();
  const auto decoder = kernels::DecoderConstants::from(spec.code, spec.decoder);
  const std::int64_t blocks = (spec.trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<Moments> partial(static_cast<std::size_t>(blocks));

  // Shard s owns the contiguous block range [begin(s), begin(s+1)).
  const std::int64_t shards = std::min<std::int64_t>(spec.shards, blocks);
  auto begin = [&](std::int64_t s) { return blocks * s / shards; };
  auto work = [&](std::int64_t s) {
    BlockWorkspace ws;
    for (std::int64_t b = begin(s); b < begin(s + 1); ++b) {
      partial[static_cast<std::size_t>(b)] = run_block(spec, kernels, decoder, b, ws);
    }
  };

  if (shards == 1) {
    work(0);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(static_cast<std::size_t>(shards));
    for (std::int64_t s = 0; s < shards; ++s) workers.emplace_back(work, s);
  }

  Moments total;
  for (const Moments& m : partial) total.merge(m);

  PerEstimate estimate;
  estimate.per = std::clamp(total.mean, 0.0, 1.0);
  estimate.trials = spec.trials;
  estimate.seed = spec.seed;
  estimate.sample_variance =
      total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
  estimate.ci_halfwidth_95 =
      1.959963984540054 * std::sqrt(estimate.sample_variance / static_cast<double>(total.count));
  return estimate;
}

}  // namespace urllc
