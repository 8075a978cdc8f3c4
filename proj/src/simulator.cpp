#include "underlay/simulator.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace underlay {

namespace {

void check_inputs(const Scenario& sc, const PowerPolicy& power) {
  sc.validate();
  power.validate();
}

// Shared per-trial body of the serial and OpenMP kernels.
inline void tally_trial(OutageTally& tally, TrialDraw& draw, const Scenario& sc, double rho,
                        const PowerPolicy& power, std::span<const double> thresholds, const CounterRng& rng,
                        std::uint64_t trial) {
  draw_trial_into(draw, sc.stats, sc.users1, sc.users2, rng, trial);
  const auto [gamma1, gamma2] = sinr_pair(draw, power, rho, sc.selection);
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    const bool o1 = gamma1 < thresholds[k];
    const bool o2 = gamma2 < thresholds[k];
    tally.out1[k] += o1;
    tally.out2[k] += o2;
    tally.out_both[k] += o1 && o2;
  }
  ++tally.trials;
}

void require_trials(std::uint64_t trials) {
  if (trials < kMinTrials) {
    throw ParameterError(fmt::format("at least {} Monte Carlo trials are required, got {}", kMinTrials, trials));
  }
}

}  // namespace

void draw_trial_into(TrialDraw& out, const ChannelStatistics& stats, int users1, int users2,
                     const CounterRng& rng, std::uint64_t trial) {
  out.h1.resize(static_cast<std::size_t>(users1));
  out.h2.resize(static_cast<std::size_t>(users2));
  for (int i = 0; i < users1; ++i) {
    out.h1[i] = rng.exponential(trial, channel_id::h1_base + static_cast<std::uint32_t>(i), stats.lambda11);
  }
  for (int i = 0; i < users2; ++i) {
    out.h2[i] = rng.exponential(trial, channel_id::h2_base + static_cast<std::uint32_t>(i), stats.lambda22);
  }
  out.g1p = rng.exponential(trial, channel_id::g1p, stats.mu1p);
  out.g2p = rng.exponential(trial, channel_id::g2p, stats.mu2p);
  out.g1_star = rng.exponential(trial, channel_id::g1_star, stats.mu12);
  out.g2_star = rng.exponential(trial, channel_id::g2_star, stats.mu21);
}

TrialDraw draw_trial(const ChannelStatistics& stats, int users1, int users2, const CounterRng& rng,
                     std::uint64_t trial) {
  TrialDraw d;
  draw_trial_into(d, stats, users1, users2, rng, trial);
  return d;
}

std::pair<double, double> sinr_pair(const TrialDraw& draw, const PowerPolicy& power, double rho,
                                    Selection selection) {
  const auto served = [selection](const std::vector<double>& gains) {
    return selection == Selection::best_user ? *std::max_element(gains.begin(), gains.end()) : gains.front();
  };
  // Peak-interference power control: P_Si = share_i * I_P / |giP|^2.
  const double p1 = power.share(1) * rho / draw.g1p;
  const double p2 = power.share(2) * rho / draw.g2p;
  const double gamma1 = p1 * served(draw.h1) / (p2 * draw.g2_star + 1.0);
  const double gamma2 = p2 * served(draw.h2) / (p1 * draw.g1_star + 1.0);
  return {gamma1, gamma2};
}

std::pair<double, double> sinr_pair(const TrialDraw& draw, double alpha, double rho, Selection selection) {
  return sinr_pair(draw, PowerPolicy::concurrent(alpha), rho, selection);
}

void OutageTally::merge(const OutageTally& other) {
  trials += other.trials;
  for (std::size_t k = 0; k < out1.size(); ++k) {
    out1[k] += other.out1[k];
    out2[k] += other.out2[k];
    out_both[k] += other.out_both[k];
  }
}

MonteCarloEstimate OutageTally::outage(std::size_t k, int network, std::uint64_t seed) const {
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(network == 1 ? out1.at(k) : out2.at(k)) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), trials, seed};
}

MonteCarloEstimate OutageTally::sum_throughput(std::size_t k, double rate, std::uint64_t seed) const {
  const double n = static_cast<double>(trials);
  const double s1 = n - static_cast<double>(out1.at(k));
  const double s2 = n - static_cast<double>(out2.at(k));
  const double both = n - static_cast<double>(out1[k]) - static_cast<double>(out2[k]) +
                      static_cast<double>(out_both[k]);
  // Per-trial delivered units K in {0,1,2}: sum K = s1 + s2, sum K^2 = s1 + s2 + 2*both.
  const double mean = (s1 + s2) / n;
  const double var = trials > 1 ? std::max(0.0, (s1 + s2 + 2.0 * both - n * mean * mean) / (n - 1.0)) : 0.0;
  return {rate * mean, rate * std::sqrt(var / n), trials, seed};
}

OutageTally tally_outages_serial(const Scenario& sc, const PowerPolicy& power,
                                 std::span<const double> thresholds, std::uint64_t first_trial,
                                 std::uint64_t trials, std::uint64_t seed) {
  check_inputs(sc, power);
  const CounterRng rng(seed);
  const double rho = sc.rho();
  OutageTally tally(thresholds.size());
  TrialDraw draw;
  for (std::uint64_t t = 0; t < trials; ++t) {
    tally_trial(tally, draw, sc, rho, power, thresholds, rng, first_trial + t);
  }
  return tally;
}

OutageTally tally_outages(const Scenario& sc, const PowerPolicy& power, std::span<const double> thresholds,
                          std::uint64_t first_trial, std::uint64_t trials, std::uint64_t seed) {
  check_inputs(sc, power);
  const CounterRng rng(seed);
  const double rho = sc.rho();
  OutageTally total(thresholds.size());
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel
  {
    OutageTally local(thresholds.size());
    TrialDraw draw;
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
      tally_trial(local, draw, sc, rho, power, thresholds, rng, first_trial + static_cast<std::uint64_t>(t));
    }
#pragma omp critical(underlay_tally_merge)
    total.merge(local);
  }
  return total;
}

MonteCarloEstimate estimate_outage(const Scenario& sc, const RatePolicy& rate, const PowerPolicy& power,
                                   int network, std::uint64_t trials, std::uint64_t seed) {
  if (network != 1 && network != 2) throw ParameterError("network must be 1 or 2");
  require_trials(trials);
  const double threshold = rate.gamma_th();
  return tally_outages(sc, power, {&threshold, 1}, 0, trials, seed).outage(0, network, seed);
}

MonteCarloEstimate estimate_sum_throughput(const Scenario& sc, const RatePolicy& rate,
                                           const PowerPolicy& power, std::uint64_t trials, std::uint64_t seed) {
  require_trials(trials);
  const double threshold = rate.gamma_th();
  return tally_outages(sc, power, {&threshold, 1}, 0, trials, seed).sum_throughput(0, rate.rate(), seed);
}

std::vector<MonteCarloEstimate> estimate_sum_throughput_curve(const Scenario& sc,
                                                              std::span<const double> rates,
                                                              const PowerPolicy& power, std::uint64_t trials,
                                                              std::uint64_t seed) {
  require_trials(trials);
  std::vector<double> thresholds;
  thresholds.reserve(rates.size());
  for (double r : rates) thresholds.push_back(RatePolicy(r).gamma_th());
  const auto tally = tally_outages(sc, power, thresholds, 0, trials, seed);
  std::vector<MonteCarloEstimate> out;
  out.reserve(rates.size());
  for (std::size_t k = 0; k < rates.size(); ++k) out.push_back(tally.sum_throughput(k, rates[k], seed));
  return out;
}

}  // namespace underlay
