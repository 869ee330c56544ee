#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"
#include "leocov/scenario.hpp"

namespace leocov::cli {

inline constexpr std::string_view kToolVersion = "0.3.0";

// Shortest round-trip decimal form, '.' separator, locale independent.
std::string format_double(double v);

// "LO:HI:STEP" (inclusive when HI lands on the lattice) or "a,b,c". Throws ConfigError on an empty grid.
std::vector<double> parse_grid(std::string_view spec);

// CSV with a header row; numbers through format_double.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void write(std::ostream& os) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Resolved scenario in SI units, as recorded in run manifests.
nlohmann::json scenario_si(const Scenario& scn);

struct ManifestInfo {
  std::vector<std::string> argv;
  ConfigValues config;
  std::uint64_t seed = 0;
  nlohmann::json extra = nlohmann::json::object();
};

nlohmann::json make_manifest(const Scenario& scn, const ManifestInfo& info);

// <output>.manifest.json next to the output file.
std::filesystem::path manifest_path(const std::filesystem::path& output);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace leocov::cli
