#pragma once

#include "underlay/scenario.hpp"

namespace underlay {

/// Which outage expression to evaluate.
///   exact    - closed form including receiver noise
///   highitl  - noise terms dropped (I_P large compared to the main-channel rate)
///   rational - highitl with ln z replaced by 2(z-1)/(z+1)
enum class Tier { exact, highitl, rational };

std::string to_string(Tier t);
Tier parse_tier(const std::string& s);

/// Inputs of one network's outage expression.
///
/// Network 1 is (L, lambda11, mu1P, mu2P, mu21, alpha); network 2 swaps roles
/// to (M, lambda22, mu2P, mu1P, mu12, 1 - alpha). mu_cross may be +inf to
/// switch cross interference off.
struct OutageParams {
  int num_users = 1;
  double lambda_main = 1.0;
  double mu_own_p = 1.0;
  double mu_other_p = 1.0;
  double mu_cross = 1.0;
  double share = 1.0;
  double gamma_th = 1.0;
  double rho = 1.0;

  void validate() const;

  /// a_j - 1 = j * noise_coeff(): noise-limited part of the outage exponent.
  double noise_coeff() const;
  /// b_j = j * interference_coeff(); equals gamma_th * x in the approximate tiers.
  double interference_coeff() const;
};

OutageParams network_params(const Scenario& sc, const RatePolicy& rate, const PowerPolicy& power,
                            int network);

/// r (r - 1 - ln r) / (r - 1)^2, continuous at r = 1 (value 1/2) and at r = 0 (value 0).
double interference_kernel(double r);

double outage_exact(const OutageParams& p);
double outage_approx_highitl(const OutageParams& p);
double outage_approx_rational(const OutageParams& p);
double outage(const OutageParams& p, Tier tier);

/// (1 - p_out1) R + (1 - p_out2) R. In a single-network mode the active
/// network uses the whole ITL without cross interference and the silent one
/// contributes nothing.
double sum_throughput(const Scenario& sc, const RatePolicy& rate, const PowerPolicy& power, Tier tier);

/// Throughput-maximizing apportioning for L = M = 1 (or round-robin) under the rational tier.
double alpha_star_closed_form(const ChannelStatistics& stats);

/// Fixed rate above which the rational-tier sum throughput turns convex in alpha.
double critical_rate_closed_form(const ChannelStatistics& stats);

}  // namespace underlay
