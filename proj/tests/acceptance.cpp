// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "support/quadrature.hpp"
#include "underlay/analytics.hpp"
#include "underlay/commands.hpp"
#include "underlay/optimizer.hpp"
#include "underlay/scenario_file.hpp"
#include "underlay/simulator.hpp"

using namespace underlay;

namespace {

constexpr std::uint64_t kSeed = 20180101;

ScenarioConfig bundled(const std::string& name) {
  return load_scenario(std::string(UNDERLAY_SCENARIO_DIR) + "/" + name);
}

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void check(bool ok, std::string note) {
    passed = passed && ok;
    notes.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", note));
  }
};

// 1. closed-form critical rate
Outcome critical_rate() {
  Outcome o;
  const double fig2 = critical_rate_closed_form(bundled("fig2.scn").scenario.stats);
  const double fig3a = critical_rate_closed_form(bundled("fig3a.scn").scenario.stats);
  o.check(std::abs(fig2 - 3.9724) <= 5e-4, fmt::format("fig2 R_c = {:.6f} (3.9724 +- 5e-4)", fig2));
  o.check(std::abs(fig3a - 3.7037) <= 5e-4, fmt::format("fig3a R_c = {:.6f} (3.7037 +- 5e-4)", fig3a));
  return o;
}

// 2. closed-form apportioning
Outcome apportioning() {
  Outcome o;
  const double a = alpha_star_closed_form(bundled("fig3a.scn").scenario.stats);
  const double b = alpha_star_closed_form(bundled("fig3b.scn").scenario.stats);
  const double sym = alpha_star_closed_form(bundled("fig4.scn").scenario.stats);
  const double sym2 = alpha_star_closed_form({2.5, 2.5, 7.0, 7.0, 3.0, 3.0});
  o.check(std::abs(a - 0.1058) <= 5e-4, fmt::format("fig3a alpha* = {:.6f} (0.1058 +- 5e-4)", a));
  o.check(std::abs(b - 0.9117) <= 5e-4, fmt::format("fig3b alpha* = {:.6f} (0.9117 +- 5e-4)", b));
  o.check(sym == 0.5 && sym2 == 0.5, fmt::format("symmetric alpha* = {}, {} (exactly 0.5)", sym, sym2));
  return o;
}

// 3. analytic vs simulation on the 25-cell grid
Outcome agreement() {
  Outcome o;
  const auto sc = bundled("fig2.scn").scenario;
  const std::uint64_t trials = 1000000;
  std::vector<double> thresholds;
  for (double r : kValidationRates) thresholds.push_back(RatePolicy(r).gamma_th());
  int agree[3] = {0, 0, 0};
  double worst[3] = {0, 0, 0};
  for (double alpha : kValidationAlphas) {
    const auto power = PowerPolicy::concurrent(alpha);
    const auto tally = tally_outages(sc, power, thresholds, 0, trials, kSeed);
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      for (int net : {1, 2}) {
        const auto mc = tally.outage(k, net, kSeed);
        const double exact = outage_exact(network_params(sc, RatePolicy(kValidationRates[k]), power, net));
        const double z = std::abs(mc.mean - exact) / mc.std_error;
        if (z < 3.0) ++agree[net];
        worst[net] = std::max(worst[net], z);
      }
    }
  }
  for (int net : {1, 2}) {
    o.check(agree[net] >= 24,
            fmt::format("network {}: {}/25 cells with |mc - exact| < 3 SE at 1e6 trials (worst z {:.2f})", net,
                        agree[net], worst[net]));
  }
  return o;
}

// 4. closed form vs three-level quadrature
Outcome quadrature_oracle() {
  Outcome o;
  std::mt19937_64 rng(4);
  const auto log_uniform = [&](double lo, double hi) {
    return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
  };
  for (int i = 0; i < 5; ++i) {
    OutageParams p;
    p.num_users = std::uniform_int_distribution<int>(1, 4)(rng);
    p.lambda_main = log_uniform(0.5, 20.0);
    p.mu_own_p = log_uniform(1.0, 100.0);
    p.mu_other_p = log_uniform(1.0, 100.0);
    p.mu_cross = log_uniform(1.0, 100.0);
    p.share = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    p.gamma_th = log_uniform(0.1, 30.0);
    p.rho = log_uniform(3.0, 1000.0);
    const double closed = outage_exact(p);
    const double quad = oracle::outage_by_quadrature(p);
    o.check(std::abs(closed - quad) <= 1e-6,
            fmt::format("point {} (N={}): exact {:.12f} quadrature {:.12f} diff {:.2e}", i, p.num_users, closed, quad,
                        std::abs(closed - quad)));
  }
  return o;
}

// 5. concurrent vs single crossover at the closed-form alpha*
Outcome crossover() {
  Outcome o;
  const auto sc = bundled("fig2.scn").scenario;
  const auto power = PowerPolicy::concurrent(alpha_star_closed_form(sc.stats));
  double best_gain = 0.0;
  for (double r : {1.0, 2.0, 5.0}) {
    const RatePolicy rate(r);
    const double conc = sum_throughput(sc, rate, power, Tier::exact);
    const double single = best_single_throughput(sc, rate, Tier::exact);
    const bool want_concurrent = r < 3.0;
    if (want_concurrent) best_gain = std::max(best_gain, conc - single);
    o.check(want_concurrent ? conc > single : conc < single,
            fmt::format("R={}: concurrent {:.4f} vs best single {:.4f}", r, conc, single));
  }
  o.check(best_gain >= 0.5, fmt::format("gain over single at R in {{1,2}}: {:.4f} bpcu (>= 0.5)", best_gain));
  return o;
}

// 6. multiuser scaling on fig4
Outcome multiuser() {
  Outcome o;
  const auto cfg = bundled("fig4.scn");
  std::vector<double> rates;
  for (int k = 0; k < 40; ++k) rates.push_back(0.25 + k * (10.0 - 0.25) / 39.0);
  const std::vector<int> users = {1, 3, 5, 7, 10};
  std::vector<std::vector<MonteCarloEstimate>> curves;
  for (int n : users) {
    auto sc = cfg.scenario;
    sc.users1 = sc.users2 = n;
    curves.push_back(estimate_sum_throughput_curve(sc, rates, cfg.power, cfg.trials, cfg.seed));
  }
  int violations = 0;
  double worst = 0.0;
  for (std::size_t u = 1; u < users.size(); ++u) {
    for (std::size_t k = 0; k < rates.size(); ++k) {
      const auto& lo = curves[u - 1][k];
      const auto& hi = curves[u][k];
      const double slack = 3.0 * std::hypot(lo.std_error, hi.std_error);
      if (hi.mean < lo.mean - slack) ++violations;
      worst = std::min(worst, hi.mean - lo.mean + slack);
    }
  }
  o.check(violations == 0,
          fmt::format("non-decreasing in L=M over {} rates: {} violations beyond 3 SE", rates.size(), violations));
  std::string peaks;
  double previous = 0.0;
  bool monotone = true;
  for (std::size_t u = 0; u < users.size(); ++u) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < rates.size(); ++k) {
      if (curves[u][k].mean > curves[u][best].mean) best = k;
    }
    monotone = monotone && rates[best] >= previous;
    previous = rates[best];
    peaks += fmt::format(" LM{}={:.3f}", users[u], rates[best]);
  }
  o.check(monotone, "peak rate non-decreasing:" + peaks);
  return o;
}

// 7. property suites
Outcome properties() {
  Outcome o;
  const auto fig2 = bundled("fig2.scn").scenario;

  double continuity = 0.0;
  for (double gamma : {40.0, 200.0, 1000.0}) {
    const OutageParams base{1, 1.0, 1.0, 2.0, 1.0, 0.5, gamma, 1.0};
    const double centre = outage_exact(with_cross_ratio(base, 1.0));
    for (double delta : {1e-6, -1e-6}) {
      continuity = std::max(continuity, std::abs(outage_exact(with_cross_ratio(base, 1.0 + delta)) - centre));
    }
  }
  o.check(continuity < 1e-8, fmt::format("singularity continuity: max jump {:.3g} at |delta| = 1e-6", continuity));

  double reduction = 0.0;
  for (int n : {1, 2, 3, 5, 10}) {
    OutageParams p{n, 8.0, 27.0, 27.0, INFINITY, 0.5, 3.0, 100.0};
    // E[(1 - e^(-c X))^N] for X ~ Exp(1) is prod_j j c / (1 + j c), free of cancellation.
    double reference = 1.0;
    for (int j = 1; j <= n; ++j) reference *= j * p.noise_coeff() / (1.0 + j * p.noise_coeff());
    reduction = std::max(reduction, std::abs(outage_exact(p) - reference));
  }
  o.check(reduction <= 1e-14, fmt::format("b -> 0 reduction (N <= 10): max diff {:.3g} from the product form", reduction));

  bool converges = true;
  for (int net : {1, 2}) {
    double previous = INFINITY;
    for (double ip_db : {20.0, 30.0, 40.0}) {
      auto sc = fig2;
      sc.ip_db = ip_db;
      const auto p = network_params(sc, RatePolicy(1.0), PowerPolicy::concurrent(0.5), net);
      const double gap = std::abs(outage_exact(p) - outage_approx_highitl(p));
      converges = converges && gap < previous;
      previous = gap;
    }
  }
  o.check(converges, "tier convergence: |exact - highitl| strictly decreasing at rho = 1e2, 1e3, 1e4");

  const std::vector<double> th = {1.0, 3.0, 15.0};
  auto multi = fig2;
  multi.users1 = 4;
  multi.users2 = 6;
  const auto t1 = tally_outages(multi, PowerPolicy::concurrent(0.4), th, 0, 100000, kSeed);
  const auto t2 = tally_outages(multi, PowerPolicy::concurrent(0.4), th, 0, 100000, kSeed);
  const auto ts = tally_outages_serial(multi, PowerPolicy::concurrent(0.4), th, 0, 100000, kSeed);
  const std::vector<int> users = {1, 3};
  const auto csv1 = sweep_rate(fig2, PowerPolicy::concurrent(0.5), 0.5, 5.0, 10, users, 10000, kSeed).to_csv();
  const auto csv2 = sweep_rate(fig2, PowerPolicy::concurrent(0.5), 0.5, 5.0, 10, users, 10000, kSeed).to_csv();
  o.check(t1 == t2 && t1 == ts && csv1 == csv2, "determinism: bit-identical tallies (serial and parallel) and CSV");

  double argmax_shift = 0.0;
  double ratio_shift = 0.0;
  for (double c : {0.01, 7.0, 300.0}) {
    auto scaled = fig2;
    scaled.stats = fig2.stats.scaled(c);
    argmax_shift = std::max(argmax_shift,
                            std::abs(alpha_star_closed_form(scaled.stats) - alpha_star_closed_form(fig2.stats)));
    ratio_shift = std::max(ratio_shift, std::abs(critical_rate_closed_form(scaled.stats) -
                                                 critical_rate_closed_form(fig2.stats)));
    for (auto tier : {Tier::exact, Tier::rational}) {
      const auto a = alpha_star_numeric(fig2, RatePolicy(2.0), tier);
      const auto b = alpha_star_numeric(scaled, RatePolicy(2.0), tier);
      argmax_shift = std::max(argmax_shift, std::abs(a.alpha - b.alpha));
      ratio_shift = std::max(ratio_shift, std::abs(a.tau - b.tau));
    }
  }
  o.check(argmax_shift < 1e-9 && ratio_shift < 1e-12,
          fmt::format("common rate scaling: argmax shift {:.2g}, value shift {:.2g}", argmax_shift, ratio_shift));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form critical rate", critical_rate},
      {"closed-form apportioning", apportioning},
      {"analytic-simulation agreement", agreement},
      {"quadrature oracle equivalence", quadrature_oracle},
      {"concurrent-vs-single crossover", crossover},
      {"multiuser scaling", multiuser},
      {"property suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, fmt::format("exception: {}", e.what()));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& n : o.notes) fmt::print("    {}\n", n);
    fmt::print("[{}] criterion {}: {} ({:.1f} s)\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, secs);
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  fmt::print("{}\n", failed == 0 ? "acceptance: all criteria passed" : fmt::format("acceptance: {} criteria FAILED", failed));
  return failed == 0 ? 0 : 1;
}
