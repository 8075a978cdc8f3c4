#pragma once

#include <cmath>

#include "underlay/analytics.hpp"
#include "underlay/scenario.hpp"

namespace underlay {

/// Golden-section search for a maximum of `f` on [lo, hi], stopping once the
/// bracket is narrower than `tol`. Returns the midpoint of the final bracket.
template <typename F>
double golden_section_maximize(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

struct AlphaOptimum {
  double alpha = 0.5;
  double tau = 0.0;        // sum throughput in the search tier
  double tau_exact = 0.0;  // exact-tier sum throughput at the same alpha
};

inline constexpr double kAlphaMin = 0.005;
inline constexpr double kAlphaMax = 0.995;
inline constexpr int kAlphaGrid = 101;
inline constexpr double kAlphaTol = 1e-5;

/// Maximizes concurrent sum throughput over alpha: a 101-point grid over
/// [0.005, 0.995] and then golden-section refinement around the best cell.
AlphaOptimum alpha_star_numeric(const Scenario& sc, const RatePolicy& rate, Tier tier = Tier::rational);

/// max over the two single-network modes.
double best_single_throughput(const Scenario& sc, const RatePolicy& rate, Tier tier);

struct CriticalRate {
  double rate = 0.0;
  bool crossover = false;  // false: concurrent never wins (rate 0) or still wins at the upper bracket
};

inline constexpr double kRateBracketLo = 0.01;
inline constexpr double kRateBracketHi = 20.0;
inline constexpr double kRateTol = 1e-4;

/// Largest fixed rate at which the optimized concurrent throughput still beats
/// the best single network, by bisection on [0.01, 20].
CriticalRate critical_rate_numeric(const Scenario& sc, Tier tier = Tier::rational);

}  // namespace underlay
