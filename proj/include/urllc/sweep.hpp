#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "urllc/bound_optimizer.hpp"
#include "urllc/montecarlo.hpp"

namespace urllc {

enum class SweepAxis { Rate, Bins, SnrDb, Blocklength, TailZ };

enum class SweepOutput { BoundExact, BoundCorrected, BoundChernoff, Asymptotic, Simulation };

/// PerBinFixed: snr_db is the per-bin SNR. TotalFixed: snr_db is L*P/N0, so
/// each bin gets snr_db - 10 log10(L).
enum class PowerMode { PerBinFixed, TotalFixed };

std::string_view to_string(SweepAxis axis);
std::string_view to_string(SweepOutput output);
std::string_view to_string(PowerMode mode);
SweepAxis parse_sweep_axis(std::string_view name);
SweepOutput parse_sweep_output(std::string_view name);
/// Accepts per-bin, total.
PowerMode parse_power_mode(std::string_view name);

struct SimSettings {
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  Estimator estimator = Estimator::AnalyticAverage;
  int shards = 1;
  DecoderModel decoder = DecoderModel::NormalApproximation;
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::Rate;
  std::vector<double> values;
  LinkConfig link;
  CodeParams code;
  std::vector<SweepOutput> outputs;
  SimSettings sim;
  PowerMode power_mode = PowerMode::PerBinFixed;

  /// Non-empty strictly increasing values, integral values on the Bins and
  /// Blocklength axes, no Simulation output on the TailZ axis.
  void validate() const;
};

struct SweepRow {
  double axis_value = 0.0;
  std::vector<double> cells;  ///< NaN where the point failed
  std::string status = "ok";
};

struct SweepTable {
  std::string axis;
  std::vector<std::string> columns;  ///< excludes the axis and status columns
  std::vector<SweepRow> rows;

  /// Index of a column by name; throws DomainError when absent.
  std::size_t column(std::string_view name) const;
};

/// Link and code actually evaluated at one axis value (power mode applied).
std::pair<LinkConfig, CodeParams> point_config(SweepAxis axis, double value,
                                               const LinkConfig& link, const CodeParams& code,
                                               PowerMode mode);

/// Evaluates every requested output at every axis value, in axis order.
/// Failures at a point are recorded in that row's status; the sweep goes on.
SweepTable run_sweep(const SweepSpec& spec);

/// Built-in sweeps fig1 .. fig5 behind the reference plots.
SweepSpec preset(std::string_view name);

nlohmann::json to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

/// CSV with a leading `# config: <json>` comment line; numbers are written
/// with 17 significant digits so that reading the file back is lossless.
void write_csv(std::ostream& out, const SweepTable& table, const nlohmann::json& config);
SweepTable read_csv(std::istream& in, nlohmann::json* config = nullptr);

}  // namespace urllc
