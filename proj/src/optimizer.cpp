#include "underlay/optimizer.hpp"

#include <algorithm>
#include <array>

namespace underlay {

AlphaOptimum alpha_star_numeric(const Scenario& sc, const RatePolicy& rate, Tier tier) {
  sc.validate();
  const auto tau = [&](double alpha) { return sum_throughput(sc, rate, PowerPolicy::concurrent(alpha), tier); };

  constexpr double step = (kAlphaMax - kAlphaMin) / (kAlphaGrid - 1);
  std::array<double, kAlphaGrid> grid{};
#pragma omp parallel for schedule(static)
  for (int i = 0; i < kAlphaGrid; ++i) grid[i] = tau(kAlphaMin + i * step);

  const auto best = static_cast<int>(std::max_element(grid.begin(), grid.end()) - grid.begin());
  const double lo = kAlphaMin + std::max(best - 1, 0) * step;
  const double hi = kAlphaMin + std::min(best + 1, kAlphaGrid - 1) * step;

  AlphaOptimum out;
  out.alpha = golden_section_maximize(tau, lo, hi, kAlphaTol);
  out.tau = tau(out.alpha);
  if (grid[best] > out.tau) {
    out.alpha = kAlphaMin + best * step;
    out.tau = grid[best];
  }
  out.tau_exact = sum_throughput(sc, rate, PowerPolicy::concurrent(out.alpha), Tier::exact);
  return out;
}

double best_single_throughput(const Scenario& sc, const RatePolicy& rate, Tier tier) {
  return std::max(sum_throughput(sc, rate, PowerPolicy::single(1), tier),
                  sum_throughput(sc, rate, PowerPolicy::single(2), tier));
}

CriticalRate critical_rate_numeric(const Scenario& sc, Tier tier) {
  const auto concurrent_wins = [&](double r) {
    const RatePolicy rate(r);
    return alpha_star_numeric(sc, rate, tier).tau > best_single_throughput(sc, rate, tier);
  };
  double lo = kRateBracketLo;
  double hi = kRateBracketHi;
  if (!concurrent_wins(lo)) return {0.0, false};
  if (concurrent_wins(hi)) return {hi, false};
  while (hi - lo > kRateTol) {
    const double mid = 0.5 * (lo + hi);
    (concurrent_wins(mid) ? lo : hi) = mid;
  }
  return {lo, true};
}

}  // namespace underlay
