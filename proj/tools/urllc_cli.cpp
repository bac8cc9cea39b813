// urllc: packet-error-rate bounds and Monte Carlo estimates for L-branch
// MRC over Rayleigh fading with finite-blocklength codes.
//
// Exit codes: 0 success, 1 usage error, 2 numeric domain error,
// 3 planner target infeasible.
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "urllc/bound_optimizer.hpp"
#include "urllc/montecarlo.hpp"
#include "urllc/planner.hpp"
#include "urllc/sweep.hpp"

namespace {

using nlohmann::json;
using namespace urllc;

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitInfeasible = 3;

struct ConfigFlags {
  std::int64_t n = 4096;
  double rate = 0.5;
  int bins = 4;
  double snr_db = 3.0;
  double sigma_h2 = 1.0;
  std::string power_mode = "per-bin";

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "Codeword length (channel uses)")->capture_default_str();
    cmd->add_option("--rate", rate, "Code rate R, bits per channel use")->capture_default_str();
    cmd->add_option("--bins", bins, "Number of bins L")->capture_default_str();
    cmd->add_option("--snr-db", snr_db, "SNR P/N0 in dB (per bin, or total with --power-mode total)")
        ->capture_default_str();
    cmd->add_option("--sigma-h2", sigma_h2, "Rayleigh channel power")->capture_default_str();
    cmd->add_option("--power-mode", power_mode, "per-bin or total")
        ->check(CLI::IsMember({"per-bin", "total"}))
        ->capture_default_str();
  }

  // Link and code with the power mode applied.
  std::pair<LinkConfig, CodeParams> resolve() const {
    return point_config(SweepAxis::Rate, rate, LinkConfig{bins, sigma_h2, snr_db},
                        CodeParams{n, rate}, parse_power_mode(power_mode));
  }
};

struct SimFlags {
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  int shards = 1;
  std::string estimator = "analytic";

  void attach(CLI::App* cmd) {
    cmd->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
    cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();
    cmd->add_option("--shards", shards, "Worker threads; results do not depend on it")
        ->capture_default_str();
    cmd->add_option("--estimator", estimator, "analytic or bernoulli")
        ->check(CLI::IsMember({"analytic", "bernoulli"}))
        ->capture_default_str();
  }
};

json config_json(const LinkConfig& link, const CodeParams& code) {
  return {{"bins", link.bins},
          {"sigma_h2", link.sigma_h2},
          {"snr_db", link.snr_db},
          {"n", code.n},
          {"rate", code.rate}};
}

int run_bound(const ConfigFlags& cfg, const std::string& model) {
  const auto [link, code] = cfg.resolve();
  const BoundResult r = minimize_bound(code, link, parse_outage_model(model));
  json out = to_json(r);
  out["config"] = config_json(link, code);
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_outage(int bins, double z, const std::string& model) {
  const double p = outage_probability(parse_outage_model(model), bins, z);
  std::cout << json{{"bins", bins}, {"z", z}, {"model", model}, {"probability", p}}.dump(2) << '\n';
  return 0;
}

int run_simulate(const ConfigFlags& cfg, const SimFlags& sim) {
  const auto [link, code] = cfg.resolve();
  SimSpec spec;
  spec.link = link;
  spec.code = code;
  spec.trials = sim.trials;
  spec.seed = sim.seed;
  spec.shards = sim.shards;
  spec.estimator = parse_estimator(sim.estimator);
  const PerEstimate e = estimate_per(spec);
  json out{{"per", e.per},
           {"ci_halfwidth_95", e.ci_halfwidth_95},
           {"sample_variance", e.sample_variance},
           {"trials", e.trials},
           {"seed", e.seed},
           {"estimator", sim.estimator},
           {"kernels", std::string(kernels::active_kernels().name)},
           {"config", config_json(link, code)}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_sweep_cmd(const std::string& preset_name, const std::string& spec_file,
                  const std::string& out_file, CLI::App* cmd, const SimFlags& sim) {
  SweepSpec spec;
  if (!spec_file.empty()) {
    std::ifstream in(spec_file);
    if (!in) throw CLI::ValidationError("--spec", "cannot open " + spec_file);
    json j;
    try {
      j = json::parse(in);
      spec = sweep_spec_from_json(j);
    } catch (const std::exception& e) {
      throw CLI::ValidationError("--spec", e.what());
    }
  } else {
    spec = preset(preset_name);
  }
  if (cmd->count("--trials")) spec.sim.trials = sim.trials;
  if (cmd->count("--seed")) spec.sim.seed = sim.seed;
  if (cmd->count("--shards")) spec.sim.shards = sim.shards;
  if (cmd->count("--estimator")) spec.sim.estimator = parse_estimator(sim.estimator);

  const SweepTable table = run_sweep(spec);
  if (out_file.empty()) {
    write_csv(std::cout, table, to_json(spec));
  } else {
    std::ofstream out(out_file);
    if (!out) throw CLI::ValidationError("--out", "cannot write " + out_file);
    write_csv(out, table, to_json(spec));
  }
  return 0;
}

int run_plan(const ConfigFlags& cfg, double target, const std::string& free, double lo, double hi,
             const std::string& model) {
  PlanQuery q;
  q.target_per = target;
  q.free = free == "bins" ? PlanTarget::MinBins : PlanTarget::MinSnrDb;
  q.lo = lo;
  q.hi = hi;
  q.link = LinkConfig{cfg.bins, cfg.sigma_h2, cfg.snr_db};
  q.code = CodeParams{cfg.n, cfg.rate};
  q.model = parse_outage_model(model);
  q.power_mode = parse_power_mode(cfg.power_mode);
  const PlanResult r = plan_parameters(q);
  std::cout << to_json(r).dump(2) << '\n';
  return r.feasible ? 0 : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packet error rate bounds for multichannel URLLC over Rayleigh fading"};
  app.require_subcommand(1);

  const std::vector<std::string> models{"exact", "chernoff", "corrected", "asymptotic"};

  ConfigFlags bound_cfg;
  std::string bound_model = "corrected";
  auto* bound = app.add_subcommand("bound", "Minimized PER upper bound for one configuration");
  bound_cfg.attach(bound);
  bound->add_option("--model", bound_model, "Outage model")
      ->check(CLI::IsMember(models))
      ->capture_default_str();

  int outage_bins = 4;
  double outage_z = 0.1;
  std::string outage_model = "exact";
  auto* outage = app.add_subcommand("outage", "Tail probability Pr(Z_L < z) or one of its bounds");
  outage->add_option("--bins", outage_bins, "Number of bins L")->capture_default_str();
  outage->add_option("--z", outage_z, "Normalized threshold z")->required();
  outage->add_option("--model", outage_model, "Outage model")
      ->check(CLI::IsMember(models))
      ->capture_default_str();

  ConfigFlags sim_cfg;
  SimFlags sim_flags;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo packet error rate");
  sim_cfg.attach(simulate);
  sim_flags.attach(simulate);

  std::string preset_name;
  std::string spec_file;
  std::string out_file;
  SimFlags sweep_sim;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
  auto* preset_opt = sweep->add_option("--preset", preset_name, "Built-in sweep")
                         ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5"}));
  auto* spec_opt = sweep->add_option("--spec", spec_file, "JSON sweep specification");
  preset_opt->excludes(spec_opt);
  sweep->add_option("--out", out_file, "Write CSV here instead of stdout");
  sweep_sim.attach(sweep);

  ConfigFlags plan_cfg;
  double plan_target = 1e-5;
  std::string plan_free = "bins";
  double plan_lo = 1.0;
  double plan_hi = 20.0;
  std::string plan_model = "corrected";
  auto* plan = app.add_subcommand("plan", "Smallest L or SNR meeting a PER target");
  plan_cfg.attach(plan);
  plan->add_option("--target", plan_target, "Target packet error rate")->required();
  plan->add_option("--free", plan_free, "Parameter to search: bins or snr")
      ->check(CLI::IsMember({"bins", "snr"}))
      ->capture_default_str();
  plan->add_option("--lo", plan_lo, "Lower end of the search range")->capture_default_str();
  plan->add_option("--hi", plan_hi, "Upper end of the search range")->capture_default_str();
  plan->add_option("--model", plan_model, "Outage model")
      ->check(CLI::IsMember(models))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (*sweep && preset_name.empty() && spec_file.empty()) {
      throw CLI::RequiredError("sweep needs --preset or --spec");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*bound) return run_bound(bound_cfg, bound_model);
    if (*outage) return run_outage(outage_bins, outage_z, outage_model);
    if (*simulate) return run_simulate(sim_cfg, sim_flags);
    if (*sweep) return run_sweep_cmd(preset_name, spec_file, out_file, sweep, sweep_sim);
    if (*plan) return run_plan(plan_cfg, plan_target, plan_free, plan_lo, plan_hi, plan_model);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
