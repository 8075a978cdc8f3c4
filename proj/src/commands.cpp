#include "underlay/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "underlay/simulator.hpp"

namespace underlay {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  if (n == 1) return {0.5 * (lo + hi)};
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

PowerPolicy policy_for_alpha(double alpha) {
  if (alpha <= 0.0) return PowerPolicy::single(2);
  if (alpha >= 1.0) return PowerPolicy::single(1);
  return PowerPolicy::concurrent(alpha);
}

void require_grid(int grid) {
  if (grid < 1) throw ParameterError(fmt::format("grid size must be >= 1, got {}", grid));
}

CheckResult agreement_check(const Scenario& sc, int network, std::uint64_t trials, std::uint64_t seed) {
  std::vector<double> thresholds;
  for (double r : kValidationRates) thresholds.push_back(RatePolicy(r).gamma_th());

  int agree = 0;
  int cells = 0;
  std::string worst;
  double worst_z = 0.0;
  for (double alpha : kValidationAlphas) {
    const auto power = PowerPolicy::concurrent(alpha);
    const auto tally = tally_outages(sc, power, thresholds, 0, trials, seed);
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      const RatePolicy rate(kValidationRates[k]);
      const double exact = outage_exact(network_params(sc, rate, power, network));
      const auto mc = tally.outage(k, network, seed);
      // The null-hypothesis SE keeps cells with zero observed outages testable at small trial counts.
      const double se_null = std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials));
      const double se = std::max(mc.std_error, se_null);
      const double z = se > 0.0 ? std::abs(mc.mean - exact) / se : (mc.mean == exact ? 0.0 : INFINITY);
      ++cells;
      if (z < 3.0) ++agree;
      if (z >= worst_z) {
        worst_z = z;
        worst = fmt::format("alpha={} R={} mc={:.6g} exact={:.6g}", alpha, kValidationRates[k], mc.mean, exact);
      }
    }
  }
  return {fmt::format("mc-agreement-network-{}", network), agree >= cells - 1,
          fmt::format("{}/{} cells within 3 SE; worst |z|={:.2f} at {}", agree, cells, worst_z, worst)};
}

OutageParams check_params(const Scenario& sc) {
  return network_params(sc, RatePolicy(1.0), PowerPolicy::concurrent(0.5), 1);
}

CheckResult singularity_check(const Scenario& sc) {
  auto p = check_params(sc);
  p.num_users = 1;
  const double delta = 1e-6;
  const auto at = with_cross_ratio(p, 1.0);
  const double a = 1.0 + at.noise_coeff();
  const double centre = outage_exact(at);
  // Away from the window the exact expression has slope 1/(6a) in r = b/a.
  double worst = 0.0;
  for (double sign : {-1.0, 1.0}) {
    const double off = outage_exact(with_cross_ratio(p, 1.0 + sign * delta));
    worst = std::max(worst, std::abs(off - centre - sign * delta / (6.0 * a)));
  }
  return {"singularity-continuity", worst < 1e-11,
          fmt::format("deviation from first-order continuation {:.3g} (limit 1e-11)", worst)};
}

CheckResult reduction_check(const Scenario& sc) {
  auto p = check_params(sc);
  p.mu_cross = INFINITY;
  double worst = 0.0;
  for (int n : {1, 2, 5, 10}) {
    p.num_users = n;
    // E[(1 - e^(-c X))^N] for X ~ Exp(1) is prod_j j c / (1 + j c), free of cancellation.
    double reference = 1.0;
    for (int j = 1; j <= n; ++j) reference *= j * p.noise_coeff() / (1.0 + j * p.noise_coeff());
    worst = std::max(worst, std::abs(outage_exact(p) - reference));
  }
  return {"b0-reduction", worst <= 1e-13, fmt::format("max |exact - noise-only sum| = {:.3g}", worst)};
}

CheckResult convergence_check(const Scenario& sc) {
  auto p = check_params(sc);
  std::vector<double> gaps;
  for (double rho : {1e2, 1e3, 1e4}) {
    p.rho = rho;
    gaps.push_back(std::abs(outage_exact(p) - outage_approx_highitl(p)));
  }
  const bool ok = gaps[1] < gaps[0] && gaps[2] < gaps[1];
  return {"tier-convergence", ok,
          fmt::format("|exact - highitl| at rho=1e2,1e3,1e4: {:.3g}, {:.3g}, {:.3g}", gaps[0], gaps[1], gaps[2])};
}

}  // namespace

void SweepResult::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt::format("{:.9g}", row[i]);
    out << '\n';
  }
}

std::string SweepResult::to_csv() const {
  std::ostringstream s;
  write_csv(s);
  return s.str();
}

SweepResult sweep_alpha(const Scenario& sc, const RatePolicy& rate, int grid, std::uint64_t trials,
                        std::uint64_t seed) {
  sc.validate();
  require_grid(grid);
  if (trials < kMinTrials) {
    throw ParameterError(fmt::format("at least {} Monte Carlo trials are required, got {}", kMinTrials, trials));
  }
  SweepResult out;
  out.header = {"alpha", "tau_exact", "tau_rational", "tau_mc", "tau_mc_se"};
  const double threshold = rate.gamma_th();
  for (double alpha : linspace(0.0, 1.0, grid)) {
    const auto power = policy_for_alpha(alpha);
    const auto mc = tally_outages(sc, power, {&threshold, 1}, 0, trials, seed).sum_throughput(0, rate.rate(), seed);
    out.rows.push_back({alpha, sum_throughput(sc, rate, power, Tier::exact),
                        sum_throughput(sc, rate, power, Tier::rational), mc.mean, mc.std_error});
  }
  return out;
}

SweepResult sweep_rate(const Scenario& sc, const PowerPolicy& power, double rate_lo, double rate_hi, int grid,
                       std::span<const int> users, std::uint64_t trials, std::uint64_t seed) {
  sc.validate();
  power.validate();
  require_grid(grid);
  if (users.empty()) throw ParameterError("users list must not be empty");
  if (!(rate_lo > 0.0 && rate_hi >= rate_lo)) {
    throw InvalidRate(fmt::format("rate range must satisfy 0 < lo <= hi, got {}:{}", rate_lo, rate_hi));
  }
  const auto rates = linspace(rate_lo, rate_hi, grid);

  SweepResult out;
  out.header = {"rate"};
  out.rows.assign(rates.size(), {});
  for (std::size_t k = 0; k < rates.size(); ++k) out.rows[k].push_back(rates[k]);

  for (int n : users) {
    Scenario s = sc;
    s.users1 = s.users2 = n;
    s.validate();
    out.header.push_back(fmt::format("tau_exact_LM{}", n));
    out.header.push_back(fmt::format("tau_mc_LM{}", n));
    out.header.push_back(fmt::format("tau_mc_se_LM{}", n));
    const auto mc = estimate_sum_throughput_curve(s, rates, power, trials, seed);
    for (std::size_t k = 0; k < rates.size(); ++k) {
      out.rows[k].push_back(sum_throughput(s, RatePolicy(rates[k]), power, Tier::exact));
      out.rows[k].push_back(mc[k].mean);
      out.rows[k].push_back(mc[k].std_error);
    }
  }
  return out;
}

OptimizeReport optimize(const Scenario& sc, const RatePolicy& rate, Tier tier) {
  sc.validate();
  OptimizeReport r;
  r.rate = rate.rate();
  r.tier = tier;
  r.closed_form_valid = (sc.users1 == 1 && sc.users2 == 1) || sc.selection == Selection::round_robin;
  r.alpha_closed = alpha_star_closed_form(sc.stats);
  r.rate_critical_closed = critical_rate_closed_form(sc.stats);
  r.numeric = alpha_star_numeric(sc, rate, tier);
  r.critical_numeric = critical_rate_numeric(sc, tier);
  r.tau_single1_exact = sum_throughput(sc, rate, PowerPolicy::single(1), Tier::exact);
  r.tau_single2_exact = sum_throughput(sc, rate, PowerPolicy::single(2), Tier::exact);
  const double best_single = std::max(r.tau_single1_exact, r.tau_single2_exact);
  if (r.numeric.tau_exact > best_single) {
    r.recommendation = Mode::concurrent;
  } else {
    r.recommendation = r.tau_single1_exact >= r.tau_single2_exact ? Mode::single1 : Mode::single2;
  }
  return r;
}

std::string OptimizeReport::format() const {
  std::string s;
  s += fmt::format("rate_bpcu: {:.6g}\n", rate);
  if (closed_form_valid) {
    s += fmt::format("alpha_star_closed_form: {:.4f}\n", alpha_closed);
    s += fmt::format("critical_rate_closed_form: {:.4f}\n", rate_critical_closed);
  } else {
    s += "alpha_star_closed_form: n/a (needs L = M = 1 or round-robin)\n";
    s += "critical_rate_closed_form: n/a (needs L = M = 1 or round-robin)\n";
  }
  s += fmt::format("alpha_star_numeric ({}): {:.4f}\n", to_string(tier), numeric.alpha);
  s += fmt::format("tau_concurrent ({}): {:.6g}\n", to_string(tier), numeric.tau);
  s += fmt::format("tau_concurrent (exact): {:.6g}\n", numeric.tau_exact);
  s += fmt::format("tau_single_network_1 (exact): {:.6g}\n", tau_single1_exact);
  s += fmt::format("tau_single_network_2 (exact): {:.6g}\n", tau_single2_exact);
  if (critical_numeric.crossover) {
    s += fmt::format("critical_rate_numeric ({}): {:.4f}\n", to_string(tier), critical_numeric.rate);
  } else if (critical_numeric.rate == 0.0) {
    s += fmt::format("critical_rate_numeric ({}): none (concurrent never wins)\n", to_string(tier));
  } else {
    s += fmt::format("critical_rate_numeric ({}): > {:.4g} (no crossover in bracket)\n", to_string(tier),
                     critical_numeric.rate);
  }
  s += fmt::format("recommendation: {}\n", to_string(recommendation));
  return s;
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string ValidationReport::format() const {
  std::string s;
  for (const auto& c : checks) s += fmt::format("[{}] {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
  s += all_passed() ? "all checks passed\n" : "validation FAILED\n";
  return s;
}

ValidationReport validate(const Scenario& sc, std::uint64_t trials, std::uint64_t seed) {
  sc.validate();
  if (trials < kMinTrials) {
    throw ParameterError(fmt::format("at least {} Monte Carlo trials are required, got {}", kMinTrials, trials));
  }
  ValidationReport report;
  report.checks.push_back(agreement_check(sc, 1, trials, seed));
  report.checks.push_back(agreement_check(sc, 2, trials, seed));
  report.checks.push_back(singularity_check(sc));
  report.checks.push_back(reduction_check(sc));
  report.checks.push_back(convergence_check(sc));
  return report;
}

OutageParams with_cross_ratio(OutageParams p, double ratio) {
  if (!(p.share > 0.0 && p.share < 1.0)) throw ParameterError("cross interference needs share in (0,1)");
  if (!(ratio > 0.0)) throw ParameterError("ratio must be positive");
  const double a = 1.0 + p.noise_coeff();
  p.mu_cross = p.mu_other_p * p.lambda_main * ((1.0 - p.share) / p.share) * p.gamma_th / (p.mu_own_p * ratio * a);
  return p;
}

std::vector<int> parse_users(const std::string& list) {
  std::vector<int> users;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ParameterError(fmt::format("bad user count '{}'", item));
    }
    if (item.find_first_not_of(' ', used) != std::string::npos) {
      throw ParameterError(fmt::format("bad user count '{}'", item));
    }
    if (n < 1 || n > kMaxUsers) throw ParameterError(fmt::format("user count {} outside [1, {}]", n, kMaxUsers));
    users.push_back(n);
  }
  if (users.empty()) throw ParameterError("users list must not be empty");
  return users;
}

std::pair<double, double> parse_rate_range(const std::string& range) {
  const auto colon = range.find(':');
  if (colon == std::string::npos) throw ParameterError(fmt::format("rate range '{}' is not LO:HI", range));
  try {
    const double lo = std::stod(range.substr(0, colon));
    const double hi = std::stod(range.substr(colon + 1));
    if (!(lo > 0.0 && hi >= lo)) throw InvalidRate(fmt::format("rate range '{}' needs 0 < LO <= HI", range));
    return {lo, hi};
  } catch (const InvalidRate&) {
    throw;
  } catch (const std::exception&) {
    throw ParameterError(fmt::format("rate range '{}' is not LO:HI", range));
  }
}

}  // namespace underlay
