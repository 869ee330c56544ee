#include "cli/output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "leocov/errors.hpp"
#include "leocov/geometry.hpp"

namespace leocov::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<double> parse_grid(std::string_view spec) {
  if (spec.empty()) throw ConfigError("empty grid specification");
  std::vector<double> out;
  if (spec.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
      const auto colon = spec.find(':', start);
      parts.push_back(parse_number(spec.substr(start, colon - start), "grid"));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3) throw ConfigError("grid must be LO:HI:STEP, got '" + std::string(spec) + "'");
    const double lo = parts[0];
    const double hi = parts[1];
    const double step = parts[2];
    if (!(step > 0.0)) throw ConfigError("grid step must be positive");
    if (hi < lo) throw ConfigError("grid '" + std::string(spec) + "' is empty (HI < LO)");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < n; ++k) out.push_back(lo + step * static_cast<double>(k));
  } else {
    std::size_t start = 0;
    while (start <= spec.size()) {
      const auto comma = spec.find(',', start);
      out.push_back(parse_number(spec.substr(start, comma - start), "grid"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (!(out[i] > out[i - 1])) throw ConfigError("grid values must be strictly increasing");
    }
  }
  if (out.empty()) throw ConfigError("grid '" + std::string(spec) + "' is empty");
  return out;
}

void CsvTable::write(std::ostream& os) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

nlohmann::json scenario_si(const Scenario& scn) {
  const GeometryContext g = scn.geometry();
  nlohmann::json j;
  j["earth_radius_m"] = scn.earth.radius_km * 1e3;
  j["altitude_m"] = scn.constellation.altitude_km * 1e3;
  j["n_sats"] = scn.constellation.n_sats;
  j["constellation"] = std::string(to_string(scn.constellation.kind));
  if (scn.constellation.is_walker()) {
    j["inclination_rad"] = scn.constellation.inclination_rad;
    j["planes"] = scn.constellation.plane_count();
    j["sats_per_plane"] = scn.constellation.sats_per_plane();
    j["phasing"] = scn.constellation.phasing;
  }
  j["alpha"] = g.alpha;
  j["psi_eff_rad"] = g.psi_eff;
  j["psi_horizon_rad"] = g.psi_horizon;
  j["varphi_max_rad"] = g.varphi_max;
  j["freq_hz"] = scn.budget.freq_hz;
  j["transmit_gain_w"] = scn.budget.transmit_gain_w();
  j["noise_w"] = scn.budget.noise_w();
  j["kappa"] = scn.budget.kappa;
  j["target_sinr_linear"] = scn.budget.target_sinr();
  j["active_density_per_m2"] = scn.active_density_per_m2();
  j["channel"] = {{"beta", scn.channel.beta},
                  {"mu_los_db", scn.channel.mu_los_db},
                  {"mu_nlos_db", scn.channel.mu_nlos_db},
                  {"sigma_los_db", scn.channel.sigma_los_db},
                  {"sigma_nlos_db", scn.channel.sigma_nlos_db}};
  return j;
}

nlohmann::json make_manifest(const Scenario& scn, const ManifestInfo& info) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream ts;
  ts << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");

  nlohmann::json j;
  j["tool"] = "leocov";
  j["version"] = std::string(kToolVersion);
  j["timestamp"] = ts.str();
  j["argv"] = info.argv;
  j["seed"] = info.seed;
  j["rng_streams"] = "realisation k uses mt19937_64(mix64(mix64(seed) ^ mix64(k + 0x9E3779B97F4A7C15)))";
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : info.config) cfg[k] = v.value;
  j["config"] = cfg;
  j["scenario_si"] = scenario_si(scn);
  j["run"] = info.extra;
  return j;
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
  return std::filesystem::path(output.string() + ".manifest.json");
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << contents;
}

}  // namespace leocov::cli
