#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "underlay/philox.hpp"
#include "underlay/scenario.hpp"

namespace underlay {

/// One quasi-static fading block. Only the cross gains into the *selected*
/// receivers are drawn, since selection looks at own-channel gains alone.
struct TrialDraw {
  std::vector<double> h1;  // |h1i|^2, i < L
  std::vector<double> h2;  // |h2i|^2, i < M
  double g1p = 0.0;
  double g2p = 0.0;
  double g1_star = 0.0;  // S1 -> selected network-2 receiver
  double g2_star = 0.0;  // S2 -> selected network-1 receiver
};

/// Stream ids of the individual gains. Ids are fixed per channel, so a run
/// with more users reuses every draw of a run with fewer users.
namespace channel_id {
inline constexpr std::uint32_t g1p = 0;
inline constexpr std::uint32_t g2p = 1;
inline constexpr std::uint32_t g1_star = 2;
inline constexpr std::uint32_t g2_star = 3;
inline constexpr std::uint32_t h1_base = 16;
inline constexpr std::uint32_t h2_base = 64;
}  // namespace channel_id

void draw_trial_into(TrialDraw& out, const ChannelStatistics& stats, int users1, int users2,
                     const CounterRng& rng, std::uint64_t trial);
TrialDraw draw_trial(const ChannelStatistics& stats, int users1, int users2, const CounterRng& rng,
                     std::uint64_t trial);

/// Received SINRs (Gamma1, Gamma2) for a draw under concurrent transmission,
/// with noise power normalized to 1.
std::pair<double, double> sinr_pair(const TrialDraw& draw, double alpha, double rho, Selection selection);

/// SINRs for any power policy. In single-network mode the silent network
/// reports 0 and the active one sees no cross interference.
std::pair<double, double> sinr_pair(const TrialDraw& draw, const PowerPolicy& power, double rho,
                                    Selection selection);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Integer outage counters for a list of SINR thresholds. Merging is plain
/// integer addition, so totals do not depend on how trials were partitioned.
struct OutageTally {
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> out1;      // Gamma1 < threshold
  std::vector<std::uint64_t> out2;      // Gamma2 < threshold
  std::vector<std::uint64_t> out_both;  // both below threshold

  explicit OutageTally(std::size_t thresholds = 0)
      : out1(thresholds, 0), out2(thresholds, 0), out_both(thresholds, 0) {}

  void merge(const OutageTally& other);
  bool operator==(const OutageTally&) const = default;

  MonteCarloEstimate outage(std::size_t k, int network, std::uint64_t seed) const;
  /// Sum throughput at rate R for threshold k, with the standard error of
  /// the per-trial delivered rate (the two outage events are correlated
  /// through the shared primary-link gains).
  MonteCarloEstimate sum_throughput(std::size_t k, double rate, std::uint64_t seed) const;
};

/// Serial reference kernel over trials [first_trial, first_trial + trials).
OutageTally tally_outages_serial(const Scenario& sc, const PowerPolicy& power,
                                 std::span<const double> thresholds, std::uint64_t first_trial,
                                 std::uint64_t trials, std::uint64_t seed);

/// OpenMP kernel; bit-identical to tally_outages_serial for any thread count.
OutageTally tally_outages(const Scenario& sc, const PowerPolicy& power, std::span<const double> thresholds,
                          std::uint64_t first_trial, std::uint64_t trials, std::uint64_t seed);

inline constexpr std::uint64_t kMinTrials = 1000;

MonteCarloEstimate estimate_outage(const Scenario& sc, const RatePolicy& rate, const PowerPolicy& power,
                                   int network, std::uint64_t trials, std::uint64_t seed);

MonteCarloEstimate estimate_sum_throughput(const Scenario& sc, const RatePolicy& rate,
                                           const PowerPolicy& power, std::uint64_t trials, std::uint64_t seed);

/// Sum-throughput estimates for several rates from one pass over the trials.
std::vector<MonteCarloEstimate> estimate_sum_throughput_curve(const Scenario& sc,
                                                              std::span<const double> rates,
                                                              const PowerPolicy& power, std::uint64_t trials,
                                                              std::uint64_t seed);

}  // namespace underlay
