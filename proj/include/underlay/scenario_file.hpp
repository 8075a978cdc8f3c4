#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "underlay/scenario.hpp"

namespace underlay {

class ScenarioFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a scenario file can carry. Fields that a file leaves out keep
/// the defaults below; rate_bpcu stays empty unless given.
struct ScenarioConfig {
  Scenario scenario;
  std::optional<Geometry> geometry;
  std::optional<double> rate_bpcu;
  PowerPolicy power;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 20180101;
};

/// Parses the flat `key = value` format. Lines may hold `#` comments.
///
/// Channel statistics come from either the six distances plus `phi`, or the
/// six explicit rates (`lambda11 lambda22 mu12 mu21 mu1P mu2P`). When both are
/// present the geometry wins, and the explicit rates must agree with it to a
/// relative 1e-9. Unknown keys, duplicate keys and partial sets are errors.
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace underlay
