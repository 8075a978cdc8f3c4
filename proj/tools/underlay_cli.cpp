// Command-line front end: sweeps, optimization reports and analytic-vs-simulation validation.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "underlay/commands.hpp"
#include "underlay/scenario_file.hpp"

namespace {

using namespace underlay;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string scenario;
  std::optional<double> rate;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out;
};

RatePolicy pick_rate(const Common& c, const ScenarioConfig& cfg) {
  if (c.rate) return RatePolicy(*c.rate);
  if (cfg.rate_bpcu) return RatePolicy(*cfg.rate_bpcu);
  throw ParameterError("no rate given: pass --rate or set rate_bpcu in the scenario");
}

void emit(const SweepResult& table, const std::string& path) {
  if (path.empty() || path == "-") {
    table.write_csv(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  table.write_csv(out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-throughput analysis and Monte Carlo simulation for two secondary networks under an interference limit"};
  app.require_subcommand(1);

  Common c;
  int grid = 0;
  std::string tier_name = "rational";
  std::string users_list = "1,3,5,7,10";
  std::string rate_range = "0.25:10";

  auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", c.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  };
  auto add_mc = [&](CLI::App* cmd) {
    cmd->add_option("--trials", c.trials, "Monte Carlo trials (default: scenario value)");
    cmd->add_option("--seed", c.seed, "RNG seed (default: scenario value)");
  };

  auto* sweep_alpha_cmd = app.add_subcommand("sweep-alpha", "tau_sum vs alpha as CSV");
  add_scenario(sweep_alpha_cmd);
  sweep_alpha_cmd->add_option("--rate", c.rate, "Fixed rate R in bpcu");
  sweep_alpha_cmd->add_option("--grid", grid, "Number of alpha points on [0,1]")->default_val(41);
  add_mc(sweep_alpha_cmd);
  sweep_alpha_cmd->add_option("--out", c.out, "Output CSV (default: stdout)");

  auto* sweep_rate_cmd = app.add_subcommand("sweep-rate", "tau_sum vs R for several L = M as CSV");
  add_scenario(sweep_rate_cmd);
  sweep_rate_cmd->add_option("--rate-range", rate_range, "LO:HI rate range in bpcu")->capture_default_str();
  sweep_rate_cmd->add_option("--grid", grid, "Number of rate points")->default_val(40);
  sweep_rate_cmd->add_option("--users", users_list, "Comma-separated L = M values")->capture_default_str();
  add_mc(sweep_rate_cmd);
  sweep_rate_cmd->add_option("--out", c.out, "Output CSV (default: stdout)");

  auto* optimize_cmd = app.add_subcommand("optimize", "Optimal alpha, critical rate and recommendation");
  add_scenario(optimize_cmd);
  optimize_cmd->add_option("--rate", c.rate, "Fixed rate R in bpcu");
  optimize_cmd->add_option("--tier", tier_name, "exact | highitl | rational")->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "Analytic vs Monte Carlo agreement checks");
  add_scenario(validate_cmd);
  add_mc(validate_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = load_scenario(c.scenario);
    const std::uint64_t trials = c.trials.value_or(cfg.trials);
    const std::uint64_t seed = c.seed.value_or(cfg.seed);

    if (*sweep_alpha_cmd) {
      emit(sweep_alpha(cfg.scenario, pick_rate(c, cfg), grid, trials, seed), c.out);
    } else if (*sweep_rate_cmd) {
      const auto [lo, hi] = parse_rate_range(rate_range);
      const auto users = parse_users(users_list);
      emit(sweep_rate(cfg.scenario, cfg.power, lo, hi, grid, users, trials, seed), c.out);
    } else if (*optimize_cmd) {
      std::cout << optimize(cfg.scenario, pick_rate(c, cfg), parse_tier(tier_name)).format();
    } else if (*validate_cmd) {
      const auto report = validate(cfg.scenario, trials, seed);
      std::cout << report.format();
      return report.all_passed() ? 0 : kExitCheckFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
