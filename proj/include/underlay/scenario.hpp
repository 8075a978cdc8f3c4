#pragma once

#include <stdexcept>
#include <string>

namespace underlay {

class InvalidGeometry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidRate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for any out-of-domain model parameter (rates, shares, user counts, trial counts).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Normalized distances of the two secondary clusters and the primary receiver.
///
/// d11/d22 are transmitter-to-own-receivers distances, r12 is S1 to the
/// receivers of network 2, r21 is S2 to the receivers of network 1, and
/// r1p/r2p are the distances from each transmitter to the primary receiver.
struct Geometry {
  double d11 = 1.0;
  double d22 = 1.0;
  double r12 = 1.0;
  double r21 = 1.0;
  double r1p = 1.0;
  double r2p = 1.0;
  double phi = 3.0;

  void validate() const;
};

/// Rate parameters of the six exponential channel-gain distributions.
/// Mean gain of every channel is 1/rate.
struct ChannelStatistics {
  double lambda11 = 1.0;  // |h1i|^2
  double lambda22 = 1.0;  // |h2i|^2
  double mu12 = 1.0;      // |g1i|^2, S1 into network-2 receivers
  double mu21 = 1.0;      // |g2i|^2, S2 into network-1 receivers
  double mu1p = 1.0;      // |g1P|^2
  double mu2p = 1.0;      // |g2P|^2

  void validate() const;
  ChannelStatistics scaled(double factor) const;
};

/// Hard cap on L and M. The outage sums alternate in sign with binomial
/// weights, so the cancellation error grows like C(N, N/2).
inline constexpr int kMaxUsers = 25;

enum class Selection { best_user, round_robin };

struct Scenario {
  ChannelStatistics stats;
  int users1 = 1;  // L
  int users2 = 1;  // M
  double ip_db = 20.0;
  double noise_power = 1.0;
  Selection selection = Selection::best_user;

  /// I_P / sigma_n^2.
  double rho() const;
  void validate() const;
};

/// Fixed transmission rate R and its SINR threshold 2^R - 1.
class RatePolicy {
 public:
  explicit RatePolicy(double rate_bpcu);

  double rate() const { return rate_; }
  double gamma_th() const { return gamma_th_; }

 private:
  double rate_;
  double gamma_th_;
};

enum class Mode { concurrent, single1, single2 };

struct PowerPolicy {
  double alpha = 0.5;
  Mode mode = Mode::concurrent;

  static PowerPolicy concurrent(double alpha) { return {alpha, Mode::concurrent}; }
  static PowerPolicy single(int network) { return {network == 1 ? 1.0 : 0.0, network == 1 ? Mode::single1 : Mode::single2}; }

  /// Fraction of the ITL granted to the given network (1 or 2).
  double share(int network) const;
  void validate() const;
};

ChannelStatistics channel_stats_from_geometry(const Geometry& geom);
double gamma_threshold(double rate_bpcu);
double ip_linear(double ip_db);

std::string to_string(Selection s);
std::string to_string(Mode m);
Selection parse_selection(const std::string& s);
Mode parse_mode(const std::string& s);

}  // namespace underlay
