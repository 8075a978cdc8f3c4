#include "underlay/scenario_file.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace underlay {

namespace {

constexpr std::array kDistanceKeys = {"d11", "d22", "r12", "r21", "r1P", "r2P"};
constexpr std::array kRateKeys = {"lambda11", "lambda22", "mu12", "mu21", "mu1P", "mu2P"};
constexpr std::array kOtherKeys = {"phi",  "L",         "M",         "ip_db",  "rate_bpcu",
                                   "alpha", "mode",     "selection", "trials", "seed"};

bool known_key(const std::string& key) {
  for (const auto* k : kDistanceKeys) if (key == k) return true;
  for (const auto* k : kRateKeys) if (key == k) return true;
  for (const auto* k : kOtherKeys) if (key == k) return true;
  return false;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Entries {
 public:
  void add(const std::string& key, const std::string& value, int line) {
    if (!known_key(key)) throw ScenarioFileError(fmt::format("line {}: unknown key '{}'", line, key));
    if (!values_.emplace(key, value).second) {
      throw ScenarioFileError(fmt::format("line {}: duplicate key '{}'", line, key));
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  double real(const std::string& key) const {
    const std::string& v = values_.at(key);
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw ScenarioFileError(fmt::format("key '{}': '{}' is not a number", key, v));
    }
  }

  template <typename Int>
  Int integer(const std::string& key) const {
    const std::string& v = values_.at(key);
    Int out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
      throw ScenarioFileError(fmt::format("key '{}': '{}' is not an integer", key, v));
    }
    return out;
  }

  const std::string& text(const std::string& key) const { return values_.at(key); }

 private:
  std::map<std::string, std::string> values_;
};

template <std::size_t N>
int count_present(const Entries& e, const std::array<const char*, N>& keys) {
  int n = 0;
  for (const auto* k : keys) n += e.has(k) ? 1 : 0;
  return n;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  Entries e;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ScenarioFileError(fmt::format("line {}: expected 'key = value'", line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ScenarioFileError(fmt::format("line {}: empty key or value", line_no));
    }
    e.add(key, value, line_no);
  }

  ScenarioConfig cfg;
  const int n_dist = count_present(e, kDistanceKeys);
  const int n_rates = count_present(e, kRateKeys);
  if (n_dist != 0 && n_dist != 6) throw ScenarioFileError("geometry needs all six distances");
  if (n_rates != 0 && n_rates != 6) throw ScenarioFileError("explicit statistics need all six rates");
  if (n_dist == 0 && n_rates == 0) {
    throw ScenarioFileError("scenario needs either six distances plus phi or six channel rates");
  }

  std::optional<ChannelStatistics> explicit_stats;
  if (n_rates == 6) {
    explicit_stats = ChannelStatistics{e.real("lambda11"), e.real("lambda22"), e.real("mu12"),
                                       e.real("mu21"),     e.real("mu1P"),     e.real("mu2P")};
    explicit_stats->validate();
  }

  if (n_dist == 6) {
    if (!e.has("phi")) throw ScenarioFileError("geometry needs the path-loss exponent 'phi'");
    Geometry g{e.real("d11"), e.real("d22"), e.real("r12"), e.real("r21"),
               e.real("r1P"), e.real("r2P"), e.real("phi")};
    cfg.scenario.stats = channel_stats_from_geometry(g);
    cfg.geometry = g;
    if (explicit_stats) {
      const auto& a = cfg.scenario.stats;
      const auto& b = *explicit_stats;
      if (!close(a.lambda11, b.lambda11) || !close(a.lambda22, b.lambda22) || !close(a.mu12, b.mu12) ||
          !close(a.mu21, b.mu21) || !close(a.mu1p, b.mu1p) || !close(a.mu2p, b.mu2p)) {
        throw ScenarioFileError("explicit channel rates disagree with the geometry");
      }
    }
  } else {
    if (e.has("phi")) throw ScenarioFileError("'phi' given without distances");
    cfg.scenario.stats = *explicit_stats;
  }

  if (e.has("L")) cfg.scenario.users1 = e.integer<int>("L");
  if (e.has("M")) cfg.scenario.users2 = e.integer<int>("M");
  if (e.has("ip_db")) cfg.scenario.ip_db = e.real("ip_db");
  if (e.has("selection")) cfg.scenario.selection = parse_selection(e.text("selection"));
  if (e.has("rate_bpcu")) {
    cfg.rate_bpcu = e.real("rate_bpcu");
    gamma_threshold(*cfg.rate_bpcu);
  }
  if (e.has("mode")) cfg.power.mode = parse_mode(e.text("mode"));
  if (e.has("alpha")) cfg.power.alpha = e.real("alpha");
  if (e.has("trials")) cfg.trials = e.integer<std::uint64_t>("trials");
  if (e.has("seed")) cfg.seed = e.integer<std::uint64_t>("seed");

  cfg.scenario.validate();
  cfg.power.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioFileError(fmt::format("cannot open scenario file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace underlay
