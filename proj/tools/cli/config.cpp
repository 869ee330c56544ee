#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "leocov/errors.hpp"
#include "leocov/units.hpp"

namespace leocov::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const ConfigEntry* find(const ConfigValues& values, const std::string& key) {
  auto it = values.find(key);
  return it == values.end() ? nullptr : &it->second;
}

double number(const ConfigValues& values, const std::string& key, double fallback) {
  const auto* e = find(values, key);
  if (!e) return fallback;
  return parse_number(e->value, key + " (" + e->origin + ")");
}

double required(const ConfigValues& values, const std::string& key) {
  const auto* e = find(values, key);
  if (!e) throw ConfigError("'" + key + "' has no default and must be given in the config or as --" + key);
  return parse_number(e->value, key + " (" + e->origin + ")");
}

std::size_t count(const ConfigValues& values, const std::string& key, std::size_t fallback) {
  const double v = number(values, key, static_cast<double>(fallback));
  if (!(v >= 0.0) || v != std::floor(v)) throw ConfigError("'" + key + "' must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

const std::vector<KeyInfo>& config_keys() {
  static const std::vector<KeyInfo> keys = {
      {"n_sats", "number of satellites N"},
      {"altitude_km", "constellation altitude h [km]"},
      {"constellation", "random_bpp | walker_delta | walker_star"},
      {"inclination_deg", "Walker inclination [deg] (default 86.4 delta, 53 star)"},
      {"planes", "Walker orbital planes (default round(sqrt(N)))"},
      {"phasing", "Walker phasing factor F (default 0)"},
      {"psi_deg", "effective beamwidth [deg] (default 90)"},
      {"psi_s_deg", "satellite beamwidth [deg]; with psi_t_deg replaces psi_deg"},
      {"psi_t_deg", "user beamwidth [deg]"},
      {"earth_radius_km", "Earth radius [km] (default 6371)"},
      {"freq_hz", "carrier frequency [Hz] (default 2e9)"},
      {"eirp_dbw", "user transmit EIRP [dBW] (default 23)"},
      {"gain_s_dbi", "satellite antenna gain [dBi] (default 0)"},
      {"noise_dbw", "noise power W [dBW] (required)"},
      {"kappa", "interference mitigation factor in [0,1] (required)"},
      {"target_sinr_db", "target SINR [dB] (default -20)"},
      {"beta", "LoS probability parameter (default 2.3)"},
      {"mu_los_db", "LoS excess path-loss mean [dB] (default 0)"},
      {"mu_nlos_db", "NLoS excess path-loss mean [dB] (default 12)"},
      {"sigma_los_db", "LoS excess path-loss deviation [dB] (default 2.8)"},
      {"sigma_nlos_db", "NLoS excess path-loss deviation [dB] (default 9)"},
      {"user_density_per_km2", "density of all ground devices [1/km^2] (default 0.04)"},
      {"duty_cycle", "spatial duty cycle D (default 0.01)"},
      {"seed", "simulation seed (default 1)"},
      {"realizations", "Monte Carlo realisations (default 10000)"},
      {"threads", "worker threads, 0 = all cores (default 0)"},
  };
  return keys;
}

bool is_config_key(std::string_view key) {
  for (const auto& k : config_keys()) {
    if (k.name == key) return true;
  }
  return false;
}

double parse_number(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError("cannot parse '" + std::string(text) + "' as a number for " + std::string(what));
  }
  return v;
}

ConfigValues parse_config_text(std::string_view text, const std::string& source_name) {
  ConfigValues out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    if (!is_config_key(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
    if (out.contains(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    out[key] = {value, where};
  }
  return out;
}

ConfigValues load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

std::optional<std::filesystem::path> resolve_config_path(const std::optional<std::string>& requested) {
  namespace fs = std::filesystem;
  if (requested && fs::exists(*requested)) return fs::path(*requested);
  const std::string name = requested.value_or("leocov.conf");
  if (!requested || fs::path(name).is_relative()) {
    if (const char* env = std::getenv("LEOCOV_CONFIG_PATH")) {
      std::string_view dirs = env;
      while (!dirs.empty()) {
        const auto colon = dirs.find(':');
        const std::string_view dir = dirs.substr(0, colon);
        if (!dir.empty()) {
          const fs::path candidate = fs::path(dir) / name;
          if (fs::exists(candidate)) return candidate;
        }
        if (colon == std::string_view::npos) break;
        dirs.remove_prefix(colon + 1);
      }
    }
  }
  if (requested) throw ConfigError("config file '" + *requested + "' not found (also searched LEOCOV_CONFIG_PATH)");
  return std::nullopt;
}

ConfigValues merge(ConfigValues base, const ConfigValues& overrides) {
  for (const auto& [k, v] : overrides) base[k] = v;
  return base;
}

RunConfig resolve(const ConfigValues& values) {
  RunConfig rc;
  Scenario& scn = rc.scenario;

  scn.earth.radius_km = number(values, "earth_radius_km", 6371.0);

  auto& cs = scn.constellation;
  cs.n_sats = count(values, "n_sats", 1000);
  cs.altitude_km = number(values, "altitude_km", 500.0);
  if (const auto* kind = find(values, "constellation")) cs.kind = parse_constellation_kind(trim(kind->value));
  const double default_inclination = cs.kind == ConstellationKind::walker_star ? 53.0 : 86.4;
  cs.inclination_rad = cs.is_walker() ? deg_to_rad(number(values, "inclination_deg", default_inclination)) : 0.0;
  cs.planes = count(values, "planes", 0);
  cs.phasing = count(values, "phasing", 0);

  const bool has_s = find(values, "psi_s_deg") != nullptr;
  const bool has_t = find(values, "psi_t_deg") != nullptr;
  if (has_s != has_t) throw ConfigError("psi_s_deg and psi_t_deg must be given together");
  if (has_s && find(values, "psi_deg")) throw ConfigError("give either psi_deg or the psi_s_deg/psi_t_deg pair, not both");
  if (has_s) {
    scn.beam = BeamConfig{deg_to_rad(required(values, "psi_s_deg")), deg_to_rad(required(values, "psi_t_deg"))};
  } else {
    scn.beam = DirectBeamwidth{deg_to_rad(number(values, "psi_deg", 90.0))};
  }

  auto& b = scn.budget;
  b.freq_hz = number(values, "freq_hz", b.freq_hz);
  b.eirp_dbw = number(values, "eirp_dbw", b.eirp_dbw);
  b.gain_s_dbi = number(values, "gain_s_dbi", b.gain_s_dbi);
  b.noise_dbw = required(values, "noise_dbw");
  b.kappa = required(values, "kappa");
  b.target_sinr_db = number(values, "target_sinr_db", b.target_sinr_db);

  auto& ch = scn.channel;
  ch.beta = number(values, "beta", ch.beta);
  ch.mu_los_db = number(values, "mu_los_db", ch.mu_los_db);
  ch.mu_nlos_db = number(values, "mu_nlos_db", ch.mu_nlos_db);
  ch.sigma_los_db = number(values, "sigma_los_db", ch.sigma_los_db);
  ch.sigma_nlos_db = number(values, "sigma_nlos_db", ch.sigma_nlos_db);

  scn.user_density_per_km2 = number(values, "user_density_per_km2", 0.04);
  scn.duty_cycle = number(values, "duty_cycle", 0.01);

  rc.seed = static_cast<std::uint64_t>(count(values, "seed", 1));
  rc.realizations = count(values, "realizations", 10000);
  rc.threads = static_cast<unsigned>(count(values, "threads", 0));

  scn.earth.validate();
  scn.channel.validate();
  scn.budget.validate();
  return rc;
}

std::map<std::string, double> human_units(const Scenario& scn) {
  std::map<std::string, double> out;
  out["n_sats"] = static_cast<double>(scn.constellation.n_sats);
  out["altitude_km"] = scn.constellation.altitude_km;
  out["earth_radius_km"] = scn.earth.radius_km;
  if (scn.constellation.is_walker()) out["inclination_deg"] = rad_to_deg(scn.constellation.inclination_rad);
  if (const auto* beams = std::get_if<BeamConfig>(&scn.beam)) {
    out["psi_s_deg"] = rad_to_deg(beams->psi_s);
    out["psi_t_deg"] = rad_to_deg(beams->psi_t);
  } else {
    out["psi_deg"] = rad_to_deg(std::get<DirectBeamwidth>(scn.beam).psi_rad);
  }
  out["freq_hz"] = scn.budget.freq_hz;
  out["eirp_dbw"] = scn.budget.eirp_dbw;
  out["gain_s_dbi"] = scn.budget.gain_s_dbi;
  out["noise_dbw"] = scn.budget.noise_dbw;
  out["kappa"] = scn.budget.kappa;
  out["target_sinr_db"] = scn.budget.target_sinr_db;
  out["beta"] = scn.channel.beta;
  out["mu_los_db"] = scn.channel.mu_los_db;
  out["mu_nlos_db"] = scn.channel.mu_nlos_db;
  out["sigma_los_db"] = scn.channel.sigma_los_db;
  out["sigma_nlos_db"] = scn.channel.sigma_nlos_db;
  out["user_density_per_km2"] = scn.user_density_per_km2;
  out["duty_cycle"] = scn.duty_cycle;
  return out;
}

}  // namespace leocov::cli
