#include "underlay/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <fmt/format.h>

namespace underlay {

namespace {

// Half-width around r = 1 inside which the kernel uses its Taylor series. At
// the edge the series truncation is ~1e-20 and the direct form is good to ~2e-14.
constexpr double kSingularWindow = 1e-2;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Neumaier summation over terms visited in order of decreasing magnitude.
double compensated_sum(std::array<double, kMaxUsers>& terms, int n) {
  std::sort(terms.begin(), terms.begin() + n,
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  double sum = 0.0;
  double comp = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = sum + terms[i];
    if (std::abs(sum) >= std::abs(terms[i])) {
      comp += (sum - t) + terms[i];
    } else {
      comp += (terms[i] - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

// Every tier has the form  sum_{j=1..N} C(N,j) (-1)^{j+1} U_j  where U_j is the
// outage-side term for a max over j exponentials.
template <typename Term>
double alternating_binomial_sum(int n, Term&& term) {
  std::array<double, kMaxUsers> terms{};
  for (int j = 1; j <= n; ++j) {
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    terms[j - 1] = sign * binomial(n, j) * term(j);
  }
  return std::clamp(compensated_sum(terms, n), 0.0, 1.0);
}

}  // namespace

std::string to_string(Tier t) {
  switch (t) {
    case Tier::exact:
      return "exact";
    case Tier::highitl:
      return "highitl";
    case Tier::rational:
      return "rational";
  }
  return "?";
}

Tier parse_tier(const std::string& s) {
  if (s == "exact") return Tier::exact;
  if (s == "highitl") return Tier::highitl;
  if (s == "rational") return Tier::rational;
  throw ParameterError(fmt::format("unknown tier '{}' (expected exact, highitl or rational)", s));
}

void OutageParams::validate() const {
  if (num_users < 1) throw ParameterError(fmt::format("num_users must be >= 1, got {}", num_users));
  if (num_users > kMaxUsers) {
    throw ParameterError(fmt::format(
        "num_users = {} exceeds {}: the alternating binomial sum loses all precision", num_users,
        kMaxUsers));
  }
  if (!positive_finite(lambda_main) || !positive_finite(mu_own_p) || !positive_finite(mu_other_p)) {
    throw ParameterError("channel rates must be positive and finite");
  }
  if (!(mu_cross > 0.0) || std::isnan(mu_cross)) {
    throw ParameterError("cross-interference rate must be positive (or +inf)");
  }
  if (!(share > 0.0 && share <= 1.0)) throw ParameterError(fmt::format("share must be in (0,1], got {}", share));
  if (!positive_finite(gamma_th)) throw ParameterError(fmt::format("gamma_th must be positive, got {}", gamma_th));
  if (!positive_finite(rho)) throw ParameterError(fmt::format("rho must be positive, got {}", rho));
}

double OutageParams::noise_coeff() const { return lambda_main * gamma_th / (mu_own_p * share * rho); }

double OutageParams::interference_coeff() const {
  if (std::isinf(mu_cross) || share == 1.0) return 0.0;
  return mu_other_p * lambda_main / (mu_own_p * mu_cross) * ((1.0 - share) / share) * gamma_th;
}

OutageParams network_params(const Scenario& sc, const RatePolicy& rate, const PowerPolicy& power,
                            int network) {
  const bool rr = sc.selection == Selection::round_robin;
  OutageParams p;
  p.gamma_th = rate.gamma_th();
  p.rho = sc.rho();
  p.share = power.share(network);
  if (network == 1) {
    p.num_users = rr ? 1 : sc.users1;
    p.lambda_main = sc.stats.lambda11;
    p.mu_own_p = sc.stats.mu1p;
    p.mu_other_p = sc.stats.mu2p;
    p.mu_cross = sc.stats.mu21;
  } else {
    p.num_users = rr ? 1 : sc.users2;
    p.lambda_main = sc.stats.lambda22;
    p.mu_own_p = sc.stats.mu2p;
    p.mu_other_p = sc.stats.mu1p;
    p.mu_cross = sc.stats.mu12;
  }
  return p;
}

double interference_kernel(double r) {
  if (r == 0.0) return 0.0;
  if (std::isinf(r)) return 1.0;
  const double d = r - 1.0;
  if (std::abs(d) < kSingularWindow) {
    // 1/2 + sum_{k=1..8} (-1)^(k+1) d^k / ((k+1)(k+2))
    return 0.5 +
           d * (1.0 / 6.0 +
                d * (-1.0 / 12.0 +
                     d * (1.0 / 20.0 + d * (-1.0 / 30.0 + d * (1.0 / 42.0 + d * (-1.0 / 56.0 + d * (1.0 / 72.0 - d / 90.0)))))));
  }
  if (r < 0.5) return r * (d - std::log(r)) / (d * d);
  return r * (d - std::log1p(d)) / (d * d);
}

double outage_exact(const OutageParams& p) {
  p.validate();
  const double nc = p.noise_coeff();
  const double ic = p.interference_coeff();
  // 1 - T_j with T_j = (1 - K(b_j/a_j)) / a_j, written without the 1 - (...) cancellation.
  return alternating_binomial_sum(p.num_users, [&](int j) {
    const double a = 1.0 + j * nc;
    const double b = j * ic;
    return (j * nc + interference_kernel(b / a)) / a;
  });
}

double outage_approx_highitl(const OutageParams& p) {
  p.validate();
  const double ic = p.interference_coeff();
  return alternating_binomial_sum(p.num_users, [&](int j) { return interference_kernel(j * ic); });
}

double outage_approx_rational(const OutageParams& p) {
  p.validate();
  const double ic = p.interference_coeff();
  return alternating_binomial_sum(p.num_users, [&](int j) {
    const double t = j * ic;
    return t / (t + 1.0);
  });
}

double outage(const OutageParams& p, Tier tier) {
  switch (tier) {
    case Tier::exact:
      return outage_exact(p);
    case Tier::highitl:
      return outage_approx_highitl(p);
    case Tier::rational:
      return outage_approx_rational(p);
  }
  throw ParameterError("unknown tier");
}

double sum_throughput(const Scenario& sc, const RatePolicy& rate, const PowerPolicy& power, Tier tier) {
  power.validate();
  double tau = 0.0;
  for (int network : {1, 2}) {
    if (power.share(network) == 0.0) continue;  // silent transmitter
    tau += (1.0 - outage(network_params(sc, rate, power, network), tier)) * rate.rate();
  }
  return tau;
}

double alpha_star_closed_form(const ChannelStatistics& s) {
  s.validate();
  return 1.0 / (1.0 + (s.mu1p / s.mu2p) * std::sqrt((s.lambda22 / s.lambda11) * (s.mu21 / s.mu12)));
}

double critical_rate_closed_form(const ChannelStatistics& s) {
  s.validate();
  return std::log2(1.0 + std::sqrt((s.mu12 * s.mu21) / (s.lambda11 * s.lambda22)));
}

}  // namespace underlay
