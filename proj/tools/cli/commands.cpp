#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "leocov/analytic.hpp"
#include "leocov/errors.hpp"
#include "leocov/geometry.hpp"
#include "leocov/montecarlo.hpp"
#include "leocov/optimizer.hpp"
#include "leocov/stats.hpp"
#include "leocov/units.hpp"

namespace leocov::cli {
namespace {

using nlohmann::json;

// Thrown by `validate` when a check misses its threshold, after the report is written.
struct ValidationFailure {};

struct CommonOptions {
  std::optional<std::string> config;
  std::map<std::string, std::optional<std::string>> keys;
  std::optional<std::string> out;
  std::string format = "csv";
};

void add_common(CLI::App& sub, CommonOptions& common, const std::string& default_format) {
  common.format = default_format;
  sub.add_option("--config", common.config, "flat key = value config file (searched in LEOCOV_CONFIG_PATH)");
  sub.add_option("--out", common.out, "output file (default stdout); a .manifest.json is written next to it");
  sub.add_option("--format", common.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  for (const auto& key : config_keys()) {
    auto& slot = common.keys[std::string(key.name)];
    std::string flag = "--" + std::string(key.name);
    std::string dashed = flag;
    std::replace(dashed.begin() + 2, dashed.end(), '_', '-');
    const std::string names = dashed == flag ? flag : flag + "," + dashed;
    sub.add_option(names, slot, std::string(key.help))->group("Scenario overrides");
  }
}

ConfigValues collect(const CommonOptions& common) {
  ConfigValues values;
  if (const auto path = resolve_config_path(common.config)) values = load_config_file(*path);
  ConfigValues flags;
  for (const auto& [k, v] : common.keys) {
    if (v) flags[k] = {*v, "--" + k};
  }
  return merge(std::move(values), flags);
}

// Walker constellations need planes * sats_per_plane == N; fall back to the nearest realisable N.
void prepare_constellation(Scenario& scn, std::ostream& err) {
  if (!scn.constellation.is_walker()) return;
  const auto adjusted = scn.constellation.adjusted();
  if (adjusted.n_sats != scn.constellation.n_sats) {
    err << "warning: " << to_string(scn.constellation.kind) << " with " << adjusted.plane_count()
        << " planes realises N = " << adjusted.n_sats << " (requested " << scn.constellation.n_sats << ")\n";
  }
  scn.constellation = adjusted;
}

struct Loaded {
  ConfigValues values;
  RunConfig run;
};

Loaded load(const CommonOptions& common, std::ostream& err) {
  Loaded l;
  l.values = collect(common);
  l.run = resolve(l.values);
  prepare_constellation(l.run.scenario, err);
  l.run.scenario.validate();
  return l;
}

struct AxisInfo {
  SweepAxis axis;
  std::string column;
  double to_internal;  // human value * to_internal = internal value
};

AxisInfo axis_info(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::altitude:
      return {axis, "altitude[km]", 1.0};
    case SweepAxis::beamwidth:
      return {axis, "beamwidth[deg]", deg_to_rad(1.0)};
    case SweepAxis::density:
      return {axis, "density[1/km^2]", 1.0};
  }
  return {axis, "value", 1.0};
}

std::vector<double> scaled(std::span<const double> v, double factor) {
  std::vector<double> out(v.begin(), v.end());
  if (factor != 1.0) {
    for (auto& x : out) x *= factor;
  }
  return out;
}

// Writes `body` to --out (plus manifest) or to `out`.
void emit(const CommonOptions& common, const std::string& body, const Scenario& scn, ManifestInfo info,
          std::ostream& out, const std::vector<std::string>& side_files = {}) {
  if (!common.out) {
    out << body;
    return;
  }
  write_text_file(*common.out, body);
  info.extra["format"] = common.format;
  info.extra["outputs"] = json::array({*common.out});
  for (const auto& f : side_files) info.extra["outputs"].push_back(f);
  write_text_file(manifest_path(*common.out), make_manifest(scn, info).dump(2) + "\n");
}


// --- sweep ---------------------------------------------------------------

struct SweepOptions {
  std::string axis;
  std::string grid;
  bool simulate = false;
  std::optional<std::string> dump;
};

int cmd_sweep(const CommonOptions& common, const SweepOptions& so, const std::vector<std::string>& argv,
              std::ostream& out, std::ostream& err) {
  const AxisInfo ax = axis_info(parse_sweep_axis(so.axis));
  const auto human_grid = parse_grid(so.grid);
  const auto grid = scaled(human_grid, ax.to_internal);
  require_increasing_grid(grid);

  const Loaded cfg = load(common, err);
  const Scenario& scn = cfg.run.scenario;
  const auto analytic = coverage_sweep(scn, ax.axis, grid);

  std::vector<std::optional<CoverageResult>> empirical(grid.size());
  std::ostringstream dump;
  if (so.simulate) {
    CsvTable rows({ax.column, "realization", "varphi_o[rad]", "served", "sinr[dB]", "interferers", "interference[W]"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Scenario at = with_axis_value(scn, ax.axis, grid[i]);
      const auto records = simulate_snapshots(at, cfg.run.realizations, cfg.run.seed, {cfg.run.threads});
      empirical[i] = summarize(records, at.budget.target_sinr_db);
      if (so.dump) {
        for (const auto& r : records) {
          rows.add_row({format_double(human_grid[i]), std::to_string(r.realization), format_double(r.varphi_o),
                        r.served ? "1" : "0", format_double(r.sinr_db), std::to_string(r.interferer_count),
                        format_double(r.interference_w)});
        }
      }
    }
    if (so.dump) {
      rows.write(dump);
      write_text_file(*so.dump, dump.str());
    }
  }

  bool any_error = false;
  std::ostringstream body;
  if (common.format == "json") {
    json j;
    j["axis"] = std::string(to_string(ax.axis));
    j["unit"] = ax.column;
    j["points"] = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      json p;
      p["value"] = human_grid[i];
      if (analytic[i].result) {
        p["p_cov_analytic"] = analytic[i].result->p_cov;
        p["mean_interference_w"] = analytic[i].result->mean_interference;
        p["abs_error"] = analytic[i].result->abs_error;
      } else {
        p["error"] = analytic[i].error;
        any_error = true;
      }
      if (empirical[i]) {
        p["p_cov_empirical"] = empirical[i]->p_cov;
        p["ci_halfwidth"] = empirical[i]->ci_halfwidth;
        p["mean_interference_empirical_w"] = empirical[i]->mean_interference;
      }
      j["points"].push_back(p);
    }
    body << j.dump(2) << "\n";
  } else {
    std::vector<std::string> header = {ax.column, "p_cov_analytic[-]", "mean_interference[W]"};
    if (so.simulate) {
      header.insert(header.end(), {"p_cov_empirical[-]", "ci_halfwidth[-]", "mean_interference_empirical[W]"});
    }
    header.push_back("error");
    CsvTable table(header);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::vector<std::string> row = {format_double(human_grid[i])};
      if (analytic[i].result) {
        row.push_back(format_double(analytic[i].result->p_cov));
        row.push_back(format_double(analytic[i].result->mean_interference));
      } else {
        row.insert(row.end(), {"nan", "nan"});
        any_error = true;
      }
      if (so.simulate) {
        row.push_back(format_double(empirical[i]->p_cov));
        row.push_back(format_double(empirical[i]->ci_halfwidth));
        row.push_back(format_double(empirical[i]->mean_interference));
      }
      std::string msg = analytic[i].error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      row.push_back(msg);
      table.add_row(row);
    }
    table.write(body);
  }

  ManifestInfo info{argv, cfg.values, cfg.run.seed};
  info.extra = {{"command", "sweep"}, {"axis", std::string(to_string(ax.axis))}, {"grid", so.grid},
                {"simulate", so.simulate}, {"realizations", cfg.run.realizations}};
  std::vector<std::string> side;
  if (so.dump) side.push_back(*so.dump);
  emit(common, body.str(), scn, info, out, side);
  return any_error ? kExitNumerical : kExitOk;
}

// --- contour -------------------------------------------------------------

struct ContourOptions {
  std::string h_grid = "200:2000:50";
  std::string psi_grid = "5:180:5";
};

int cmd_contour(const CommonOptions& common, const ContourOptions& co, const std::vector<std::string>& argv,
                std::ostream& out, std::ostream& err) {
  const auto h_grid = parse_grid(co.h_grid);
  const auto psi_deg = parse_grid(co.psi_grid);
  const auto psi_grid = scaled(psi_deg, deg_to_rad(1.0));
  require_increasing_grid(h_grid);
  require_increasing_grid(psi_grid);
  const Loaded cfg = load(common, err);
  const Scenario& scn = cfg.run.scenario;

  CsvTable contour({"altitude[km]", "beamwidth[deg]", "p_cov[-]"});
  CsvTable optimal({"altitude[km]", "psi_star[deg]", "p_cov_star[-]"});
  struct {
    double h = 0.0, psi = 0.0, p = -1.0;
  } best;
  for (const double h : h_grid) {
    const Scenario at_h = scn.with_altitude(h);
    std::vector<double> row(psi_grid.size());
    for (std::size_t j = 0; j < psi_grid.size(); ++j) {
      row[j] = coverage_probability(at_h.with_psi(psi_grid[j])).p_cov;
      contour.add_row({format_double(h), format_double(psi_deg[j]), format_double(row[j])});
    }
    const GridOptimum opt = grid_optimum(psi_grid, row, horizon_beamwidth(altitude_ratio(h, scn.earth)));
    optimal.add_row({format_double(h), format_double(rad_to_deg(opt.psi_rad)), format_double(opt.p_cov)});
    if (opt.p_cov > best.p + 1e-12) best = {h, opt.psi_rad, opt.p_cov};
  }

  std::ostringstream body;
  contour.write(body);
  const json joint = {{"h_star_km", best.h}, {"psi_star_deg", rad_to_deg(best.psi)}, {"p_cov_star", best.p}};

  ManifestInfo info{argv, cfg.values, cfg.run.seed};
  info.extra = {{"command", "contour"}, {"h_grid", co.h_grid}, {"psi_grid", co.psi_grid}, {"joint_optimum", joint}};
  if (common.out) {
    const std::string optimal_path = *common.out + ".optimal.csv";
    const std::string joint_path = *common.out + ".joint.json";
    std::ostringstream opt_body;
    optimal.write(opt_body);
    write_text_file(optimal_path, opt_body.str());
    write_text_file(joint_path, joint.dump(2) + "\n");
    emit(common, body.str(), scn, info, out, {optimal_path, joint_path});
  } else {
    out << body.str() << "\n";
    optimal.write(out);
    out << "\n# joint optimum: " << joint.dump() << "\n";
  }
  return kExitOk;
}

// --- optimize ------------------------------------------------------------

struct OptimizeCliOptions {
  std::string mode = "joint";
  std::optional<std::string> h_grid;
  std::optional<std::string> psi_grid;
  std::size_t resolution = 64;
  bool no_refine = false;
  bool trace = false;
  std::optional<std::string> density_grid;
  double baseline_altitude_km = 500.0;
  double baseline_psi_deg = 180.0;
};

json result_json(const OptimizationResult& r, bool with_trace) {
  json j;
  j["mode"] = std::string(to_string(r.mode));
  j["h_star_km"] = r.h_star_km;
  j["psi_star_deg"] = rad_to_deg(r.psi_star);
  j["p_cov_star"] = r.p_cov_star;
  j["grid_best"] = r.grid_best;
  j["evaluations"] = r.evaluations;
  j["passes"] = r.passes;
  j["flags"] = {{"altitude_at_bound", r.altitude_at_bound},
                {"psi_at_bound", r.psi_at_bound},
                {"psi_saturated", r.psi_saturated},
                {"converged", r.converged}};
  if (with_trace) {
    j["trace"] = json::array();
    for (const auto& t : r.grid_trace) j["trace"].push_back({t.altitude_km, rad_to_deg(t.psi_rad), t.p_cov});
  }
  return j;
}

int cmd_optimize(const CommonOptions& common, const OptimizeCliOptions& oo, const std::vector<std::string>& argv,
                 std::ostream& out, std::ostream& err) {
  OptimizationRequest req;
  req.mode = parse_optimize_mode(oo.mode);
  req.grid_resolution = {oo.resolution, oo.resolution};
  if (oo.h_grid) {
    const auto g = parse_grid(*oo.h_grid);
    req.altitude_km = {g.front(), g.back()};
    req.grid_resolution.altitude = g.size();
  }
  if (oo.psi_grid) {
    const auto g = parse_grid(*oo.psi_grid);
    req.psi_rad = {deg_to_rad(g.front()), deg_to_rad(g.back())};
    req.grid_resolution.psi = g.size();
  }
  req.refine = !oo.no_refine;

  const Loaded cfg = load(common, err);
  req.scenario = cfg.run.scenario;
  req.validate();

  std::vector<double> densities;
  if (oo.density_grid) densities = parse_grid(*oo.density_grid);

  json result;
  std::ostringstream body;
  if (densities.empty()) {
    result = result_json(optimize(req), oo.trace);
    body << result.dump(2) << "\n";
  } else {
    CsvTable table({"density[1/km^2]", "h_star[km]", "psi_star[deg]", "p_cov_star[-]", "p_cov_baseline[-]"});
    result = json::array();
    for (const double d : densities) {
      OptimizationRequest at = req;
      at.scenario = req.scenario.with_density(d);
      const auto r = optimize(at);
      const Scenario baseline =
          at.scenario.with_altitude(oo.baseline_altitude_km).with_psi(deg_to_rad(oo.baseline_psi_deg));
      const double p_base = coverage_probability(baseline).p_cov;
      json j = result_json(r, oo.trace);
      j["density_per_km2"] = d;
      j["p_cov_baseline"] = p_base;
      result.push_back(j);
      table.add_row({format_double(d), format_double(r.h_star_km), format_double(rad_to_deg(r.psi_star)),
                     format_double(r.p_cov_star), format_double(p_base)});
    }
    if (common.format == "csv") {
      table.write(body);
    } else {
      body << result.dump(2) << "\n";
    }
  }

  ManifestInfo info{argv, cfg.values, cfg.run.seed};
  info.extra = {{"command", "optimize"},
                {"mode", oo.mode},
                {"altitude_bounds_km", {req.altitude_km.lo, req.altitude_km.hi}},
                {"psi_bounds_deg", {rad_to_deg(req.psi_rad.lo), rad_to_deg(req.psi_rad.hi)}},
                {"grid_resolution", {req.grid_resolution.altitude, req.grid_resolution.psi}},
                {"refine", req.refine}};
  emit(common, body.str(), req.scenario, info, out);
  return kExitOk;
}

// --- validate ------------------------------------------------------------

struct ValidateOptions {
  std::optional<std::string> axis;
  std::optional<std::string> grid;
  double tolerance = 0.02;
  double ks_threshold = 0.02;
  double interference_band = 0.02;
};

int cmd_validate(const CommonOptions& common, const ValidateOptions& vo, const std::vector<std::string>& argv,
                 std::ostream& out, std::ostream& err) {
  if (vo.axis.has_value() != vo.grid.has_value()) throw ConfigError("--axis and --grid must be given together");
  const Loaded cfg = load(common, err);
  const Scenario& scn = cfg.run.scenario;
  const SimulationOptions sim{cfg.run.threads};

  struct Check {
    std::string name;
    std::string point;
    double analytic = NAN;
    double empirical = NAN;
    double ci = NAN;
    double statistic = NAN;
    std::string threshold;
    bool pass = false;
  };
  std::vector<Check> checks;

  // Coverage agreement along the grid (or at the configured point).
  std::vector<std::pair<std::string, Scenario>> points;
  if (vo.axis) {
    const AxisInfo ax = axis_info(parse_sweep_axis(*vo.axis));
    const auto human_grid = parse_grid(*vo.grid);
    for (const double v : human_grid) {
      points.emplace_back(ax.column + "=" + format_double(v), with_axis_value(scn, ax.axis, v * ax.to_internal));
    }
  } else {
    points.emplace_back("config", scn);
  }
  for (const auto& [label, at] : points) {
    const auto a = coverage_probability(at);
    const auto e = empirical_coverage(at, cfg.run.realizations, cfg.run.seed, sim);
    Check c{"coverage", label, a.p_cov, e.p_cov, e.ci_halfwidth, std::abs(a.p_cov - e.p_cov),
            "<=" + format_double(vo.tolerance)};
    c.pass = c.statistic <= vo.tolerance;
    checks.push_back(c);
  }

  // Contact-angle law and mean interference at the configured point.
  const auto records = simulate_snapshots(scn, cfg.run.realizations, cfg.run.seed, sim);
  if (!scn.constellation.is_walker()) {
    std::vector<double> angles;
    angles.reserve(records.size());
    for (const auto& r : records) angles.push_back(r.varphi_o);
    const std::size_t n = scn.constellation.n_sats;
    const double ks = ks_statistic(angles, [n](double phi) { return contact_angle_cdf(phi, n); });
    Check c{"contact_angle_ks", "config", NAN, NAN, NAN, ks, "<" + format_double(vo.ks_threshold)};
    c.pass = ks < vo.ks_threshold;
    checks.push_back(c);
  }
  const double mean_analytic = average_interference(scn);
  if (mean_analytic > 0.0) {
    const auto s = summarize(records, scn.budget.target_sinr_db);
    const double ratio = s.mean_interference / mean_analytic;
    Check c{"interference_ratio", "config", mean_analytic, s.mean_interference, NAN, ratio,
            "[" + format_double(1.0 - vo.interference_band) + "," + format_double(1.0 + vo.interference_band) + "]"};
    c.pass = std::abs(ratio - 1.0) <= vo.interference_band;
    checks.push_back(c);
  }

  bool all_pass = true;
  std::ostringstream body;
  if (common.format == "json") {
    json j = json::array();
    for (const auto& c : checks) {
      j.push_back({{"check", c.name},
                   {"point", c.point},
                   {"analytic", std::isfinite(c.analytic) ? json(c.analytic) : json(nullptr)},
                   {"empirical", std::isfinite(c.empirical) ? json(c.empirical) : json(nullptr)},
                   {"ci_halfwidth", std::isfinite(c.ci) ? json(c.ci) : json(nullptr)},
                   {"statistic", c.statistic},
                   {"threshold", c.threshold},
                   {"pass", c.pass}});
      all_pass = all_pass && c.pass;
    }
    body << json{{"realizations", cfg.run.realizations}, {"seed", cfg.run.seed}, {"checks", j}}.dump(2) << "\n";
  } else {
    CsvTable table({"check", "point", "analytic", "empirical", "ci_halfwidth", "statistic", "threshold", "pass"});
    for (const auto& c : checks) {
      std::string threshold = c.threshold;
      std::replace(threshold.begin(), threshold.end(), ',', ';');
      std::string point = c.point;
      table.add_row({c.name, point, format_double(c.analytic), format_double(c.empirical), format_double(c.ci),
                     format_double(c.statistic), threshold, c.pass ? "1" : "0"});
      all_pass = all_pass && c.pass;
    }
    table.write(body);
  }

  ManifestInfo info{argv, cfg.values, cfg.run.seed};
  info.extra = {{"command", "validate"}, {"realizations", cfg.run.realizations}, {"all_pass", all_pass}};
  if (vo.axis) {
    info.extra["axis"] = *vo.axis;
    info.extra["grid"] = *vo.grid;
  }
  emit(common, body.str(), scn, info, out);
  if (common.out) {
    for (const auto& c : checks) {
      err << (c.pass ? "PASS " : "FAIL ") << c.name << " " << c.point << " statistic=" << format_double(c.statistic)
          << " threshold " << c.threshold << "\n";
    }
  }
  if (!all_pass) throw ValidationFailure{};
  return kExitOk;
}

// --- walker-compare ------------------------------------------------------

struct WalkerCliOptions {
  std::string h_grid = "400:1300:300";
  std::string psi_grid = "5:180:5";
  double delta_inclination_deg = 86.4;
  double star_inclination_deg = 53.0;
};

int cmd_walker_compare(const CommonOptions& common, const WalkerCliOptions& wo, const std::vector<std::string>& argv,
                       std::ostream& out, std::ostream& err) {
  const auto h_grid = parse_grid(wo.h_grid);
  const auto psi_deg = parse_grid(wo.psi_grid);
  const auto psi_grid = scaled(psi_deg, deg_to_rad(1.0));
  require_increasing_grid(h_grid);
  require_increasing_grid(psi_grid);
  const Loaded cfg = load(common, err);

  WalkerCompareOptions opts;
  opts.delta_inclination_rad = deg_to_rad(wo.delta_inclination_deg);
  opts.star_inclination_rad = deg_to_rad(wo.star_inclination_deg);
  opts.realizations = cfg.run.realizations;
  opts.seed = cfg.run.seed;
  opts.threads = cfg.run.threads;

  Scenario base = cfg.run.scenario;
  ConstellationSpec probe = base.constellation;
  probe.kind = ConstellationKind::walker_delta;
  probe.inclination_rad = opts.delta_inclination_rad;
  if (probe.adjusted().n_sats != base.constellation.n_sats) {
    err << "warning: Walker constellations realise N = " << probe.adjusted().n_sats << " (requested "
        << base.constellation.n_sats << "); all three columns use the realised N\n";
  }

  const auto rows = walker_compare(base, h_grid, psi_grid, opts);
  CsvTable table({"altitude[km]", "psi_star_random_analytic[deg]", "psi_star_walker_delta_empirical[deg]",
                  "psi_star_walker_star_empirical[deg]", "p_star_random_analytic[-]", "p_star_walker_delta_empirical[-]",
                  "p_star_walker_star_empirical[-]"});
  for (const auto& r : rows) {
    table.add_row({format_double(r.altitude_km), format_double(rad_to_deg(r.random_analytic.psi_rad)),
                   format_double(rad_to_deg(r.delta_empirical.psi_rad)),
                   format_double(rad_to_deg(r.star_empirical.psi_rad)), format_double(r.random_analytic.p_cov),
                   format_double(r.delta_empirical.p_cov), format_double(r.star_empirical.p_cov)});
  }
  std::ostringstream body;
  table.write(body);

  ManifestInfo info{argv, cfg.values, cfg.run.seed};
  info.extra = {{"command", "walker-compare"},
                {"h_grid", wo.h_grid},
                {"psi_grid_deg", wo.psi_grid},
                {"empirical_argmax", "grid argmax of common-random-number beamwidth sweep, ties to smaller psi"},
                {"realizations", cfg.run.realizations},
                {"delta_inclination_deg", wo.delta_inclination_deg},
                {"star_inclination_deg", wo.star_inclination_deg}};
  emit(common, body.str(), base, info, out);
  return kExitOk;
}

// --- replay --------------------------------------------------------------

std::vector<std::string> replay_args(const std::string& manifest_file, const std::optional<std::string>& new_out) {
  std::ifstream in(manifest_file);
  if (!in) throw ConfigError("cannot open manifest '" + manifest_file + "'");
  json m;
  try {
    in >> m;
  } catch (const json::exception& e) {
    throw ConfigError("malformed manifest '" + manifest_file + "': " + e.what());
  }
  const auto argv = m.at("argv").get<std::vector<std::string>>();
  std::vector<std::string> args;
  for (std::size_t i = 1; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a == "--config" || (new_out && a == "--out")) {
      ++i;
      continue;
    }
    if (a.rfind("--config=", 0) == 0 || (new_out && a.rfind("--out=", 0) == 0)) continue;
    // Drop flags that the config block below re-supplies.
    if (a.rfind("--", 0) == 0) {
      std::string key = a.substr(2);
      std::replace(key.begin(), key.end(), '-', '_');
      if (const auto eq = key.find('='); eq != std::string::npos) {
        if (is_config_key(key.substr(0, eq))) continue;
      } else if (is_config_key(key)) {
        ++i;
        continue;
      }
    }
    args.push_back(a);
  }
  for (const auto& [k, v] : m.at("config").items()) {
    args.push_back("--" + k);
    args.push_back(v.get<std::string>());
  }
  if (new_out) {
    args.push_back("--out");
    args.push_back(*new_out);
  }
  return args;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"leocov: uplink coverage of dense LEO constellations", "leocov"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonOptions sweep_common;
  SweepOptions so;
  auto* sweep = app.add_subcommand("sweep", "analytic (and optionally simulated) coverage along one axis");
  add_common(*sweep, sweep_common, "csv");
  sweep->add_option("--axis", so.axis, "altitude | beamwidth | density")->required();
  sweep->add_option("--grid", so.grid, "LO:HI:STEP in axis units (km, deg, 1/km^2)")->required();
  sweep->add_flag("--simulate", so.simulate, "add Monte Carlo coverage and 95% CI");
  sweep->add_option("--dump-snapshots", so.dump, "CSV with one row per simulated realisation");

  CommonOptions contour_common;
  ContourOptions co;
  auto* contour = app.add_subcommand("contour", "coverage over an altitude x beamwidth grid");
  add_common(*contour, contour_common, "csv");
  contour->add_option("--h-grid", co.h_grid, "altitude grid LO:HI:STEP [km]")->capture_default_str();
  contour->add_option("--psi-grid", co.psi_grid, "beamwidth grid LO:HI:STEP [deg]")->capture_default_str();

  CommonOptions opt_common;
  OptimizeCliOptions oo;
  auto* optimize_cmd = app.add_subcommand("optimize", "maximise coverage over altitude, beamwidth or both");
  add_common(*optimize_cmd, opt_common, "json");
  optimize_cmd->add_option("--mode", oo.mode, "altitude | beamwidth | joint")->capture_default_str();
  optimize_cmd->add_option("--h-grid", oo.h_grid, "altitude search grid LO:HI:STEP [km]");
  optimize_cmd->add_option("--psi-grid", oo.psi_grid, "beamwidth search grid LO:HI:STEP [deg]");
  optimize_cmd->add_option("--resolution", oo.resolution, "grid points per axis without an explicit grid")
      ->capture_default_str();
  optimize_cmd->add_flag("--no-refine", oo.no_refine, "report the coarse-grid optimum only");
  optimize_cmd->add_flag("--trace", oo.trace, "include the evaluated grid");
  optimize_cmd->add_option("--density-grid", oo.density_grid, "repeat per density [1/km^2], with baseline");
  optimize_cmd->add_option("--baseline-altitude-km", oo.baseline_altitude_km)->capture_default_str();
  optimize_cmd->add_option("--baseline-psi-deg", oo.baseline_psi_deg)->capture_default_str();

  CommonOptions val_common;
  ValidateOptions vo;
  auto* validate = app.add_subcommand("validate", "analytic model against the simulator");
  add_common(*validate, val_common, "csv");
  validate->add_option("--axis", vo.axis, "altitude | beamwidth | density");
  validate->add_option("--grid", vo.grid, "LO:HI:STEP in axis units");
  validate->add_option("--tolerance", vo.tolerance, "max |analytic - empirical|")->capture_default_str();
  validate->add_option("--ks-threshold", vo.ks_threshold)->capture_default_str();
  validate->add_option("--interference-band", vo.interference_band, "allowed |ratio - 1|")->capture_default_str();

  CommonOptions walker_common;
  WalkerCliOptions wo;
  auto* walker = app.add_subcommand("walker-compare", "optimal beamwidth: random analytic vs Walker simulated");
  add_common(*walker, walker_common, "csv");
  walker->add_option("--h-grid", wo.h_grid, "altitude grid [km]")->capture_default_str();
  walker->add_option("--psi-grid", wo.psi_grid, "beamwidth grid [deg]")->capture_default_str();
  walker->add_option("--delta-inclination-deg", wo.delta_inclination_deg)->capture_default_str();
  walker->add_option("--star-inclination-deg", wo.star_inclination_deg)->capture_default_str();

  std::string manifest_file;
  std::optional<std::string> replay_out;
  auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  replay->add_option("manifest", manifest_file, "a .manifest.json")->required();
  replay->add_option("--out", replay_out, "write to a different output path");

  std::vector<const char*> cargv;
  cargv.reserve(args.size());
  for (const auto& a : args) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*sweep) return cmd_sweep(sweep_common, so, args, out, err);
  if (*contour) return cmd_contour(contour_common, co, args, out, err);
  if (*optimize_cmd) return cmd_optimize(opt_common, oo, args, out, err);
  if (*validate) return cmd_validate(val_common, vo, args, out, err);
  if (*walker) return cmd_walker_compare(walker_common, wo, args, out, err);
  if (*replay) {
    std::vector<std::string> again = {args.empty() ? std::string("leocov") : args[0]};
    const auto rest = replay_args(manifest_file, replay_out);
    again.insert(again.end(), rest.begin(), rest.end());
    return dispatch(again, out, err);
  }
  return kExitUsage;
}

}  // namespace

GridOptimum grid_optimum(std::span<const double> psi_grid, std::span<const double> p_cov, double psi_horizon) {
  if (psi_grid.empty() || psi_grid.size() != p_cov.size()) throw DomainError("grid and values differ in size");
  std::size_t best = 0;
  for (std::size_t i = 1; i < p_cov.size(); ++i) {
    if (p_cov[i] > p_cov[best] + 1e-12) best = i;
  }
  return {std::min(psi_grid[best], psi_horizon), p_cov[best]};
}

std::vector<WalkerCompareRow> walker_compare(const Scenario& base, std::span<const double> h_grid_km,
                                             std::span<const double> psi_grid_rad, const WalkerCompareOptions& opts) {
  ConstellationSpec delta = base.constellation;
  delta.kind = ConstellationKind::walker_delta;
  delta.inclination_rad = opts.delta_inclination_rad;
  delta = delta.adjusted();
  ConstellationSpec star = base.constellation;
  star.kind = ConstellationKind::walker_star;
  star.inclination_rad = opts.star_inclination_rad;
  star = star.adjusted();
  ConstellationSpec random = base.constellation;
  random.kind = ConstellationKind::random_bpp;
  random.n_sats = delta.n_sats;

  const SimulationOptions sim{opts.threads};
  std::vector<WalkerCompareRow> rows;
  for (const double h : h_grid_km) {
    WalkerCompareRow row;
    row.altitude_km = h;
    const double psi_o = horizon_beamwidth(altitude_ratio(h, base.earth));

    Scenario scn = base.with_altitude(h);
    scn.constellation = random;
    scn.constellation.altitude_km = h;
    std::vector<double> analytic(psi_grid_rad.size());
    for (std::size_t j = 0; j < psi_grid_rad.size(); ++j) analytic[j] = coverage_probability(scn.with_psi(psi_grid_rad[j])).p_cov;
    row.random_analytic = grid_optimum(psi_grid_rad, analytic, psi_o);

    auto empirical_optimum = [&](const ConstellationSpec& spec) {
      Scenario w = base.with_altitude(h);
      w.constellation = spec;
      w.constellation.altitude_km = h;
      const auto sweep = empirical_beamwidth_sweep(w, psi_grid_rad, opts.realizations, opts.seed, sim);
      std::vector<double> p(sweep.size());
      for (std::size_t j = 0; j < sweep.size(); ++j) p[j] = sweep[j].p_cov;
      return grid_optimum(psi_grid_rad, p, psi_o);
    };
    row.delta_empirical = empirical_optimum(delta);
    row.star_empirical = empirical_optimum(star);
    rows.push_back(row);
  }
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const ValidationFailure&) {
    err << "validation failed: at least one check missed its threshold\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << " (achieved error " << e.achieved_error() << ")\n";
    return kExitNumerical;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace leocov::cli
