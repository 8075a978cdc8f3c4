#include "underlay/scenario.hpp"

#include <cmath>

#include <fmt/format.h>

namespace underlay {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require_distance(double v, const char* name) {
  if (!positive_finite(v)) {
    throw InvalidGeometry(fmt::format("distance {} must be positive and finite, got {}", name, v));
  }
}

void require_rate(double v, const char* name) {
  if (!positive_finite(v)) {
    throw ParameterError(fmt::format("channel rate {} must be positive and finite, got {}", name, v));
  }
}

}  // namespace

void Geometry::validate() const {
  require_distance(d11, "d11");
  require_distance(d22, "d22");
  require_distance(r12, "r12");
  require_distance(r21, "r21");
  require_distance(r1p, "r1P");
  require_distance(r2p, "r2P");
  if (!positive_finite(phi)) {
    throw InvalidGeometry(fmt::format("path-loss exponent must be positive, got {}", phi));
  }
}

void ChannelStatistics::validate() const {
  require_rate(lambda11, "lambda11");
  require_rate(lambda22, "lambda22");
  require_rate(mu12, "mu12");
  require_rate(mu21, "mu21");
  require_rate(mu1p, "mu1P");
  require_rate(mu2p, "mu2P");
}

ChannelStatistics ChannelStatistics::scaled(double factor) const {
  if (!positive_finite(factor)) throw ParameterError("scale factor must be positive");
  return {lambda11 * factor, lambda22 * factor, mu12 * factor,
          mu21 * factor,     mu1p * factor,     mu2p * factor};
}

double Scenario::rho() const { return ip_linear(ip_db) / noise_power; }

void Scenario::validate() const {
  stats.validate();
  if (users1 < 1 || users2 < 1) {
    throw ParameterError(fmt::format("user counts must be >= 1, got L={} M={}", users1, users2));
  }
  if (users1 > kMaxUsers || users2 > kMaxUsers) {
    throw ParameterError(fmt::format("user counts above {} are not supported, got L={} M={}", kMaxUsers,
                                     users1, users2));
  }
  if (!std::isfinite(ip_db)) throw ParameterError("ip_db must be finite");
  if (!positive_finite(noise_power)) throw ParameterError("noise power must be positive");
  if (!positive_finite(rho())) throw ParameterError("I_P / noise ratio is not a positive finite number");
}

RatePolicy::RatePolicy(double rate_bpcu) : rate_(rate_bpcu), gamma_th_(gamma_threshold(rate_bpcu)) {}

double PowerPolicy::share(int network) const {
  switch (mode) {
    case Mode::concurrent:
      return network == 1 ? alpha : 1.0 - alpha;
    case Mode::single1:
      return network == 1 ? 1.0 : 0.0;
    case Mode::single2:
      return network == 2 ? 1.0 : 0.0;
  }
  return 0.0;
}

void PowerPolicy::validate() const {
  if (mode == Mode::concurrent && !(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError(fmt::format("concurrent mode needs 0 < alpha < 1, got {}", alpha));
  }
}

ChannelStatistics channel_stats_from_geometry(const Geometry& geom) {
  geom.validate();
  const auto rate = [&](double d) { return std::pow(d, geom.phi); };
  return {rate(geom.d11), rate(geom.d22), rate(geom.r12),
          rate(geom.r21), rate(geom.r1p), rate(geom.r2p)};
}

double gamma_threshold(double rate_bpcu) {
  if (!positive_finite(rate_bpcu)) {
    throw InvalidRate(fmt::format("rate must be positive and finite, got {}", rate_bpcu));
  }
  return std::expm1(rate_bpcu * std::log(2.0));
}

double ip_linear(double ip_db) { return std::pow(10.0, ip_db / 10.0); }

std::string to_string(Selection s) { return s == Selection::best_user ? "best-user" : "round-robin"; }

std::string to_string(Mode m) {
  switch (m) {
    case Mode::concurrent:
      return "concurrent";
    case Mode::single1:
      return "single-network-1";
    case Mode::single2:
      return "single-network-2";
  }
  return "?";
}

Selection parse_selection(const std::string& s) {
  if (s == "best-user") return Selection::best_user;
  if (s == "round-robin") return Selection::round_robin;
  throw ParameterError(fmt::format("unknown selection '{}' (expected best-user or round-robin)", s));
}

Mode parse_mode(const std::string& s) {
  if (s == "concurrent") return Mode::concurrent;
  if (s == "single-network-1") return Mode::single1;
  if (s == "single-network-2") return Mode::single2;
  throw ParameterError(
      fmt::format("unknown mode '{}' (expected concurrent, single-network-1 or single-network-2)", s));
}

}  // namespace underlay
