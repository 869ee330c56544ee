#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leocov/scenario.hpp"

namespace leocov::cli {

// A config value with where it came from ("file.conf:12" or "--flag").
struct ConfigEntry {
  std::string value;
  std::string origin;
};

using ConfigValues = std::map<std::string, ConfigEntry>;

struct KeyInfo {
  std::string_view name;
  std::string_view help;
};

// Every accepted config key, in human units (degrees, km, dB, users per km^2).
const std::vector<KeyInfo>& config_keys();
bool is_config_key(std::string_view key);

// Flat `key = value` text; '#' starts a comment. Unknown keys, missing '=' and
// duplicates are reported with their line number.
ConfigValues parse_config_text(std::string_view text, const std::string& source_name);
ConfigValues load_config_file(const std::filesystem::path& path);

// `requested` as given if it exists, else searched in LEOCOV_CONFIG_PATH (':'-separated).
// With no request, looks for leocov.conf in the search path.
std::optional<std::filesystem::path> resolve_config_path(const std::optional<std::string>& requested);

// Later entries win.
ConfigValues merge(ConfigValues base, const ConfigValues& overrides);

struct RunConfig {
  Scenario scenario;
  std::uint64_t seed = 1;
  std::size_t realizations = 10000;
  unsigned threads = 0;
};

// Builds the scenario in SI-consistent internal units. noise_dbw and kappa are
// mandatory; everything else falls back to the reference channel/link values.
RunConfig resolve(const ConfigValues& values);

// Inverse of resolve for the scenario fields, back in human units.
std::map<std::string, double> human_units(const Scenario& scn);

double parse_number(std::string_view text, std::string_view what);

}  // namespace leocov::cli
