#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "underlay/analytics.hpp"
#include "underlay/optimizer.hpp"
#include "underlay/scenario.hpp"

namespace underlay {

/// A numeric table with a header row, written as CSV with 9 significant digits.
struct SweepResult {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void write_csv(std::ostream& out) const;
  std::string to_csv() const;
};

/// tau vs alpha on `grid` evenly spaced points of [0, 1]. The endpoints are
/// the single-network modes (alpha = 0: only S2, alpha = 1: only S1), which
/// are the alpha -> 0/1 limits of the concurrent expressions.
/// Columns: alpha, tau_exact, tau_rational, tau_mc, tau_mc_se.
SweepResult sweep_alpha(const Scenario& sc, const RatePolicy& rate, int grid, std::uint64_t trials,
                        std::uint64_t seed);

/// tau vs R on `grid` evenly spaced rates of [rate_lo, rate_hi], one column
/// group (tau_exact_LMn, tau_mc_LMn, tau_mc_se_LMn) per common user count L = M = n.
SweepResult sweep_rate(const Scenario& sc, const PowerPolicy& power, double rate_lo, double rate_hi, int grid,
                       std::span<const int> users, std::uint64_t trials, std::uint64_t seed);

struct OptimizeReport {
  double rate = 0.0;
  Tier tier = Tier::rational;
  bool closed_form_valid = false;  // L = M = 1 or round-robin
  double alpha_closed = 0.0;
  double rate_critical_closed = 0.0;
  AlphaOptimum numeric;
  CriticalRate critical_numeric;
  double tau_single1_exact = 0.0;
  double tau_single2_exact = 0.0;
  Mode recommendation = Mode::concurrent;

  std::string format() const;
};

OptimizeReport optimize(const Scenario& sc, const RatePolicy& rate, Tier tier = Tier::rational);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::string format() const;
};

/// Analytic-vs-Monte-Carlo agreement on a 5x5 (alpha, R) grid for both
/// networks, plus the singularity, b -> 0 and high-ITL convergence checks.
ValidationReport validate(const Scenario& sc, std::uint64_t trials, std::uint64_t seed);

inline constexpr std::array<double, 5> kValidationAlphas = {0.1, 0.3, 0.5, 0.7, 0.9};
inline constexpr std::array<double, 5> kValidationRates = {0.5, 1.375, 2.25, 3.125, 4.0};

/// Copy of `p` with mu_cross chosen so that b_1 = ratio * a_1 in the exact
/// outage expression (ratio = 1 lands on the removable singularity).
OutageParams with_cross_ratio(OutageParams p, double ratio);

/// Comma-separated user counts, e.g. "1,3,5,7,10".
std::vector<int> parse_users(const std::string& list);

/// "LO:HI" rate range.
std::pair<double, double> parse_rate_range(const std::string& range);

}  // namespace underlay
