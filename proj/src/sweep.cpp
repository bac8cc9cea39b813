#include "urllc/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <tuple>

namespace urllc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view model_suffix(OutageModel model) { return to_string(model); }

OutageModel bound_model(SweepOutput output) {
  switch (output) {
    case SweepOutput::BoundExact: return OutageModel::Exact;
    case SweepOutput::BoundCorrected: return OutageModel::CorrectedB;
    case SweepOutput::BoundChernoff: return OutageModel::ChernoffU;
    default: break;
  }
  throw DomainError("not a bound output");
}

bool is_bound(SweepOutput output) {
  return output == SweepOutput::BoundExact || output == SweepOutput::BoundCorrected ||
         output == SweepOutput::BoundChernoff;
}

std::vector<std::string> columns_for(const SweepSpec& spec) {
  std::vector<std::string> cols;
  for (SweepOutput out : spec.outputs) {
    if (spec.axis == SweepAxis::TailZ) {
      switch (out) {
        case SweepOutput::BoundExact: cols.emplace_back("outage_exact"); break;
        case SweepOutput::BoundCorrected: cols.emplace_back("corrected_b"); break;
        case SweepOutput::BoundChernoff: cols.emplace_back("chernoff_u"); break;
        case SweepOutput::Asymptotic: cols.emplace_back("series_leading"); break;
        case SweepOutput::Simulation: break;
      }
      continue;
    }
    if (is_bound(out)) {
      const std::string suffix(model_suffix(bound_model(out)));
      cols.push_back("bound_" + suffix);
      cols.push_back("eps_star_" + suffix);
    } else if (out == SweepOutput::Asymptotic) {
      cols.emplace_back("asymptotic");
    } else {
      cols.emplace_back("sim_per");
      cols.emplace_back("sim_ci95");
    }
  }
  return cols;
}

void append_status(SweepRow& row, const std::string& message) {
  if (row.status == "ok") {
    row.status = message;
  } else {
    row.status += "; " + message;
  }
}

// Runs `fn`, recording any library error in the row instead of propagating.
template <typename Fn>
void guarded(SweepRow& row, std::string_view what, Fn fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    append_status(row, std::string(what) + ": " + e.what());
  }
}

SweepRow tail_row(const SweepSpec& spec, double z) {
  SweepRow row;
  row.axis_value = z;
  for (SweepOutput out : spec.outputs) {
    if (out == SweepOutput::Simulation) continue;
    double cell = kNaN;
    const OutageModel model =
        out == SweepOutput::Asymptotic ? OutageModel::AsymptoticSeries : bound_model(out);
    guarded(row, to_string(model),
            [&] { cell = outage_probability(model, spec.link.bins, z); });
    row.cells.push_back(cell);
  }
  return row;
}

SweepRow point_row(const SweepSpec& spec, double value) {
  SweepRow row;
  row.axis_value = value;
  LinkConfig link;
  CodeParams code;
  try {
    std::tie(link, code) = point_config(spec.axis, value, spec.link, spec.code, spec.power_mode);
    link.validate();
    code.validate();
  } catch (const std::exception& e) {
    row.status = std::string("config: ") + e.what();
    row.cells.assign(columns_for(spec).size(), kNaN);
    return row;
  }

  for (SweepOutput out : spec.outputs) {
    if (is_bound(out)) {
      double bound = kNaN;
      double eps = kNaN;
      guarded(row, to_string(out), [&] {
        const BoundResult r = minimize_bound(code, link, bound_model(out));
        bound = r.per_bound;
        eps = r.eps_star;
        if (r.degenerate) append_status(row, std::string(to_string(out)) + ": degenerate");
      });
      row.cells.push_back(bound);
      row.cells.push_back(eps);
    } else if (out == SweepOutput::Asymptotic) {
      double cell = kNaN;
      guarded(row, "asymptotic", [&] { cell = per_asymptotic(code, link); });
      row.cells.push_back(cell);
    } else {
      double per = kNaN;
      double ci = kNaN;
      guarded(row, "simulation", [&] {
        SimSpec sim{link,          code,           spec.sim.trials, spec.sim.seed,
                    spec.sim.estimator, spec.sim.shards, spec.sim.decoder};
        const PerEstimate e = estimate_per(sim);
        per = e.per;
        ci = e.ci_halfwidth_95;
      });
      row.cells.push_back(per);
      row.cells.push_back(ci);
    }
  }
  return row;
}

bool is_integral(double v) { return std::isfinite(v) && v == std::floor(v); }

std::vector<double> stepped(double first, double last, double step) {
  std::vector<double> v;
  const auto count = static_cast<int>(std::llround((last - first) / step)) + 1;
  for (int i = 0; i < count; ++i) {
    // Snap to 1e-9 so values like 0.35 print as written.
    v.push_back(std::round((first + step * i) * 1e9) / 1e9);
  }
  return v;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename Enum, std::size_t N>
Enum parse_named(std::string_view name, const std::pair<std::string_view, Enum> (&table)[N],
                 std::string_view what) {
  for (const auto& [key, value] : table) {
    if (key == name) return value;
  }
  throw DomainError("unknown " + std::string(what) + ": " + std::string(name));
}

constexpr std::pair<std::string_view, SweepAxis> kAxisNames[] = {
    {"rate", SweepAxis::Rate},
    {"bins", SweepAxis::Bins},
    {"snr_db", SweepAxis::SnrDb},
    {"blocklength", SweepAxis::Blocklength},
    {"tail_z", SweepAxis::TailZ}};

constexpr std::pair<std::string_view, SweepOutput> kOutputNames[] = {
    {"bound_exact", SweepOutput::BoundExact},
    {"bound_corrected", SweepOutput::BoundCorrected},
    {"bound_chernoff", SweepOutput::BoundChernoff},
    {"asymptotic", SweepOutput::Asymptotic},
    {"simulation", SweepOutput::Simulation}};

constexpr std::pair<std::string_view, PowerMode> kPowerModeNames[] = {
    {"per-bin", PowerMode::PerBinFixed}, {"total", PowerMode::TotalFixed}};

constexpr std::pair<std::string_view, DecoderModel> kDecoderNames[] = {
    {"normal", DecoderModel::NormalApproximation}, {"dispersion-cap", DecoderModel::DispersionCap}};

template <typename Enum, std::size_t N>
std::string_view name_of(Enum value, const std::pair<std::string_view, Enum> (&table)[N]) {
  for (const auto& [key, v] : table) {
    if (v == value) return key;
  }
  return "unknown";
}

}  // namespace

std::string_view to_string(SweepAxis axis) { return name_of(axis, kAxisNames); }
std::string_view to_string(SweepOutput output) { return name_of(output, kOutputNames); }
std::string_view to_string(PowerMode mode) { return name_of(mode, kPowerModeNames); }

SweepAxis parse_sweep_axis(std::string_view name) {
  return parse_named(name, kAxisNames, "sweep axis");
}
SweepOutput parse_sweep_output(std::string_view name) {
  return parse_named(name, kOutputNames, "sweep output");
}
PowerMode parse_power_mode(std::string_view name) {
  return parse_named(name, kPowerModeNames, "power mode");
}

void SweepSpec::validate() const {
  if (values.empty()) throw DomainError("sweep needs at least one axis value");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) throw DomainError("sweep values must be strictly increasing");
  }
  if (axis == SweepAxis::Bins || axis == SweepAxis::Blocklength) {
    for (double v : values) {
      if (!is_integral(v)) throw DomainError("bins/blocklength sweep values must be integers");
    }
  }
  if (outputs.empty()) throw DomainError("sweep needs at least one output");
  if (axis == SweepAxis::TailZ) {
    for (SweepOutput out : outputs) {
      if (out == SweepOutput::Simulation) {
        throw DomainError("the simulation output is not defined on the tail_z axis");
      }
    }
  }
  if (sim.trials < 1 || sim.shards < 1) throw DomainError("sim trials and shards must be >= 1");
}

std::size_t SweepTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw DomainError("no such column: " + std::string(name));
}

std::pair<LinkConfig, CodeParams> point_config(SweepAxis axis, double value,
                                               const LinkConfig& link, const CodeParams& code,
                                               PowerMode mode) {
  LinkConfig l = link;
  CodeParams c = code;
  switch (axis) {
    case SweepAxis::Rate: c.rate = value; break;
    case SweepAxis::Bins:
      if (!is_integral(value)) throw DomainError("bins must be an integer");
      l.bins = static_cast<int>(value);
      break;
    case SweepAxis::SnrDb: l.snr_db = value; break;
    case SweepAxis::Blocklength:
      if (!is_integral(value)) throw DomainError("blocklength must be an integer");
      c.n = static_cast<std::int64_t>(value);
      break;
    case SweepAxis::TailZ: break;
  }
  if (mode == PowerMode::TotalFixed) {
    if (l.bins < 1) throw DomainError("bins must be >= 1");
    l.snr_db -= 10.0 * std::log10(static_cast<double>(l.bins));
  }
  return {l, c};
}

SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  if (spec.axis == SweepAxis::TailZ) spec.link.validate();
  SweepTable table;
  table.axis = std::string(to_string(spec.axis));
  table.columns = columns_for(spec);
  table.rows.reserve(spec.values.size());
  for (double v : spec.values) {
    table.rows.push_back(spec.axis == SweepAxis::TailZ ? tail_row(spec, v) : point_row(spec, v));
  }
  return table;
}

SweepSpec preset(std::string_view name) {
  SweepSpec spec;
  spec.link = LinkConfig{4, 1.0, 3.0};
  spec.code = CodeParams{4096, 0.5};
  spec.outputs = {SweepOutput::BoundCorrected, SweepOutput::BoundExact, SweepOutput::Asymptotic,
                  SweepOutput::Simulation};

  if (name == "fig1") {
    spec.axis = SweepAxis::TailZ;
    spec.outputs = {SweepOutput::BoundExact, SweepOutput::BoundCorrected,
                    SweepOutput::BoundChernoff, SweepOutput::Asymptotic};
    constexpr int points = 41;
    const double lo = std::log(1e-4);
    const double hi = std::log(0.99);
    for (int i = 0; i < points; ++i) {
      spec.values.push_back(i == points - 1 ? 0.99 : std::exp(lo + (hi - lo) * i / (points - 1)));
    }
  } else if (name == "fig2") {
    spec.axis = SweepAxis::Rate;
    spec.values = stepped(0.1, 1.5, 0.05);
  } else if (name == "fig3") {
    spec.axis = SweepAxis::Bins;
    spec.values = stepped(1, 10, 1);
    spec.power_mode = PowerMode::TotalFixed;
  } else if (name == "fig4") {
    spec.axis = SweepAxis::SnrDb;
    spec.values = stepped(-3, 15, 0.5);
  } else if (name == "fig5") {
    spec.axis = SweepAxis::Blocklength;
    for (int k = 7; k <= 15; ++k) spec.values.push_back(std::ldexp(1.0, k));
  } else {
    throw DomainError("unknown preset: " + std::string(name) + " (expected fig1..fig5)");
  }
  return spec;
}

nlohmann::json to_json(const SweepSpec& spec) {
  nlohmann::json outputs = nlohmann::json::array();
  for (SweepOutput o : spec.outputs) outputs.push_back(std::string(to_string(o)));
  return {
      {"axis", std::string(to_string(spec.axis))},
      {"values", spec.values},
      {"base",
       {{"link",
         {{"bins", spec.link.bins},
          {"sigma_h2", spec.link.sigma_h2},
          {"snr_db", spec.link.snr_db}}},
        {"code", {{"n", spec.code.n}, {"rate", spec.code.rate}}}}},
      {"outputs", outputs},
      {"sim",
       {{"trials", spec.sim.trials},
        {"seed", spec.sim.seed},
        {"estimator", std::string(to_string(spec.sim.estimator))},
        {"shards", spec.sim.shards},
        {"decoder", std::string(name_of(spec.sim.decoder, kDecoderNames))}}},
      {"power_mode", std::string(to_string(spec.power_mode))},
  };
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  try {
    SweepSpec spec;
    spec.axis = parse_sweep_axis(j.at("axis").get<std::string>());
    spec.values = j.at("values").get<std::vector<double>>();
    if (j.contains("base")) {
      const auto& base = j.at("base");
      if (base.contains("link")) {
        const auto& l = base.at("link");
        spec.link.bins = l.value("bins", spec.link.bins);
        spec.link.sigma_h2 = l.value("sigma_h2", spec.link.sigma_h2);
        spec.link.snr_db = l.value("snr_db", spec.link.snr_db);
      }
      if (base.contains("code")) {
        const auto& c = base.at("code");
        spec.code.n = c.value("n", spec.code.n);
        spec.code.rate = c.value("rate", spec.code.rate);
      }
    }
    if (j.contains("outputs")) {
      for (const auto& o : j.at("outputs")) spec.outputs.push_back(parse_sweep_output(o.get<std::string>()));
    } else {
      spec.outputs = {SweepOutput::BoundCorrected};
    }
    if (j.contains("sim")) {
      const auto& s = j.at("sim");
      spec.sim.trials = s.value("trials", spec.sim.trials);
      spec.sim.seed = s.value("seed", spec.sim.seed);
      spec.sim.shards = s.value("shards", spec.sim.shards);
      if (s.contains("estimator")) spec.sim.estimator = parse_estimator(s.at("estimator").get<std::string>());
      if (s.contains("decoder")) {
        spec.sim.decoder = parse_named(s.at("decoder").get<std::string>(), kDecoderNames, "decoder");
      }
    }
    if (j.contains("power_mode")) spec.power_mode = parse_power_mode(j.at("power_mode").get<std::string>());
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed sweep spec: ") + e.what());
  }
}

void write_csv(std::ostream& out, const SweepTable& table, const nlohmann::json& config) {
  out << "# config: " << config.dump() << '\n';
  out << table.axis;
  for (const auto& c : table.columns) out << ',' << c;
  out << ",status\n";
  for (const auto& row : table.rows) {
    out << format_number(row.axis_value);
    for (double cell : row.cells) out << ',' << format_number(cell);
    std::string status = row.status;
    for (char& ch : status) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out << ',' << status << '\n';
  }
}

SweepTable read_csv(std::istream& in, nlohmann::json* config) {
  SweepTable table;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# config: ", 0) == 0) {
      if (config) *config = nlohmann::json::parse(line.substr(10));
      continue;
    }
    if (line[0] == '#') continue;
    const auto fields = split_csv_line(line);
    if (!header_seen) {
      if (fields.size() < 2 || fields.back() != "status") throw DomainError("bad CSV header");
      table.axis = fields.front();
      table.columns.assign(fields.begin() + 1, fields.end() - 1);
      header_seen = true;
      continue;
    }
    if (fields.size() != table.columns.size() + 2) throw DomainError("CSV row width mismatch");
    SweepRow row;
    row.axis_value = std::strtod(fields.front().c_str(), nullptr);
    for (std::size_t i = 1; i + 1 < fields.size(); ++i) {
      row.cells.push_back(std::strtod(fields[i].c_str(), nullptr));
    }
    row.status = fields.back();
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw DomainError("CSV has no header");
  return table;
}

}  // namespace urllc
