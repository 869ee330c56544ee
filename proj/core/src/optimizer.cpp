#include "leocov/optimizer.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "leocov/errors.hpp"
#include "leocov/geometry.hpp"

namespace leocov {
namespace {

constexpr double kTie = 1e-12;
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

// Memoised objective; counts distinct evaluations.
class CachedObjective {
 public:
  explicit CachedObjective(const Objective& f) : f_(f) {}

  double operator()(double h, double psi) {
    const auto key = std::make_pair(h, psi);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const double v = f_(h, psi);
    cache_.emplace(key, v);
    return v;
  }

  std::size_t evaluations() const { return cache_.size(); }

 private:
  const Objective& f_;
  std::map<std::pair<double, double>, double> cache_;
};

struct Best1d {
  double x;
  double value;
};

// Golden-section maximisation of g on [a, b]; ties move left (towards smaller x).
Best1d golden_section(const std::function<double(double)>& g, double a, double b, double tol, Best1d best) {
  auto consider = [&](double x, double v) {
    if (v > best.value + kTie || (std::abs(v - best.value) <= kTie && x < best.x)) best = {x, v};
  };
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = g(c);
  double fd = g(d);
  consider(c, fc);
  consider(d, fd);
  while (b - a > tol) {
    if (fc >= fd - kTie) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = g(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = g(d);
      consider(d, fd);
    }
  }
  const double mid = 0.5 * (a + b);
  consider(mid, g(mid));
  return best;
}

// Grid scan in increasing order; a later point wins only if better by more than kTie.
std::size_t argmax_index(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best] + kTie) best = i;
  }
  return best;
}

// Optimise g over `grid`, refining inside the cells adjacent to the grid argmax.
Best1d maximize_1d(const std::function<double(double)>& g, std::span<const double> grid, bool refine, double tol,
                   std::vector<double>& grid_values) {
  grid_values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) grid_values[i] = g(grid[i]);
  const std::size_t i = argmax_index(grid_values);
  Best1d best{grid[i], grid_values[i]};
  if (!refine || grid.size() < 2) return best;
  const double a = grid[i == 0 ? 0 : i - 1];
  const double b = grid[std::min(i + 1, grid.size() - 1)];
  return golden_section(g, a, b, tol, best);
}

bool near(double x, double bound, double tol) { return std::abs(x - bound) <= tol; }

double horizon_psi(const Scenario& scn, double h) { return horizon_beamwidth(altitude_ratio(h, scn.earth)); }

// psi beyond the horizon beamwidth gives the same footprint; report the smallest maximiser.
void clamp_to_horizon(const OptimizationRequest& req, OptimizationResult& out) {
  const double psi_o = horizon_psi(req.scenario, out.h_star_km);
  if (out.psi_star >= psi_o) {
    out.psi_star = psi_o;
    out.psi_saturated = true;
  }
}

}  // namespace

std::string_view to_string(OptimizeMode mode) {
  switch (mode) {
    case OptimizeMode::altitude:
      return "altitude";
    case OptimizeMode::beamwidth:
      return "beamwidth";
    case OptimizeMode::joint:
      return "joint";
  }
  return "unknown";
}

OptimizeMode parse_optimize_mode(std::string_view name) {
  if (name == "altitude") return OptimizeMode::altitude;
  if (name == "beamwidth") return OptimizeMode::beamwidth;
  if (name == "joint") return OptimizeMode::joint;
  throw ConfigError("unknown optimisation mode '" + std::string(name) + "'");
}

void OptimizationRequest::validate() const {
  const bool uses_h = mode != OptimizeMode::beamwidth;
  const bool uses_psi = mode != OptimizeMode::altitude;
  if (uses_h && !(altitude_km.lo > 0.0 && altitude_km.lo < altitude_km.hi)) {
    throw ConfigError("altitude bounds need 0 < lo < hi");
  }
  if (uses_psi && !(psi_rad.lo > 0.0 && psi_rad.lo < psi_rad.hi && psi_rad.hi <= kPi)) {
    throw ConfigError("beamwidth bounds need 0 < lo < hi <= pi");
  }
  if ((uses_h && grid_resolution.altitude < 3) || (uses_psi && grid_resolution.psi < 3)) {
    throw ConfigError("grid resolution must be at least 3 per active axis");
  }
  if (!(altitude_tol_km > 0.0) || !(psi_tol_rad > 0.0)) throw ConfigError("refinement tolerances must be positive");
}

Objective analytic_objective(const Scenario& scn, const AnalyticOptions& opts) {
  return [scn, opts](double h, double psi) { return coverage_probability(scn.with_altitude(h).with_psi(psi), opts).p_cov; };
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  out.back() = hi;
  return out;
}

OptimizationResult optimize_altitude(const OptimizationRequest& req) {
  return optimize_altitude(req, analytic_objective(req.scenario, req.analytic));
}

OptimizationResult optimize_altitude(const OptimizationRequest& req, const Objective& objective) {
  req.validate();
  CachedObjective f(objective);
  // The beamwidth follows the scenario: fixed, or re-derived from (psi_s, psi_t) at each altitude.
  auto psi_at = [&](double h) { return req.scenario.with_altitude(h).effective_psi(); };
  auto g = [&](double h) { return f(h, psi_at(h)); };

  const auto grid = linspace(req.altitude_km.lo, req.altitude_km.hi, req.grid_resolution.altitude);
  std::vector<double> values;
  const Best1d best = maximize_1d(g, grid, req.refine, req.altitude_tol_km, values);

  OptimizationResult out;
  out.mode = OptimizeMode::altitude;
  for (std::size_t i = 0; i < grid.size(); ++i) out.grid_trace.push_back({grid[i], psi_at(grid[i]), values[i]});
  out.grid_best = values[argmax_index(values)];
  out.h_star_km = best.x;
  out.psi_star = psi_at(best.x);
  out.p_cov_star = best.value;
  out.altitude_at_bound =
      near(best.x, req.altitude_km.lo, req.altitude_tol_km) || near(best.x, req.altitude_km.hi, req.altitude_tol_km);
  out.evaluations = f.evaluations();
  return out;
}

OptimizationResult optimize_beamwidth(const OptimizationRequest& req) {
  return optimize_beamwidth(req, analytic_objective(req.scenario, req.analytic));
}

OptimizationResult optimize_beamwidth(const OptimizationRequest& req, const Objective& objective) {
  req.validate();
  CachedObjective f(objective);
  const double h = req.scenario.constellation.altitude_km;
  auto g = [&](double psi) { return f(h, psi); };

  const auto grid = linspace(req.psi_rad.lo, req.psi_rad.hi, req.grid_resolution.psi);
  std::vector<double> values;
  const Best1d best = maximize_1d(g, grid, req.refine, req.psi_tol_rad, values);

  OptimizationResult out;
  out.mode = OptimizeMode::beamwidth;
  for (std::size_t i = 0; i < grid.size(); ++i) out.grid_trace.push_back({h, grid[i], values[i]});
  out.grid_best = values[argmax_index(values)];
  out.h_star_km = h;
  out.psi_star = best.x;
  out.p_cov_star = best.value;
  clamp_to_horizon(req, out);
  out.psi_at_bound =
      near(out.psi_star, req.psi_rad.lo, req.psi_tol_rad) || near(out.psi_star, req.psi_rad.hi, req.psi_tol_rad);
  out.evaluations = f.evaluations();
  return out;
}

OptimizationResult optimize_joint(const OptimizationRequest& req) {
  return optimize_joint(req, analytic_objective(req.scenario, req.analytic));
}

OptimizationResult optimize_joint(const OptimizationRequest& req, const Objective& objective) {
  req.validate();
  CachedObjective f(objective);
  const auto h_grid = linspace(req.altitude_km.lo, req.altitude_km.hi, req.grid_resolution.altitude);
  const auto psi_grid = linspace(req.psi_rad.lo, req.psi_rad.hi, req.grid_resolution.psi);

  OptimizationResult out;
  out.mode = OptimizeMode::joint;
  out.grid_trace.reserve(h_grid.size() * psi_grid.size());
  TracePoint best{h_grid[0], psi_grid[0], f(h_grid[0], psi_grid[0])};
  for (const double h : h_grid) {
    for (const double psi : psi_grid) {
      const double v = f(h, psi);
      out.grid_trace.push_back({h, psi, v});
      if (v > best.p_cov + kTie) best = {h, psi, v};
    }
  }
  out.grid_best = best.p_cov;

  if (req.refine) {
    const double h_cell = h_grid[1] - h_grid[0];
    const double psi_cell = psi_grid[1] - psi_grid[0];
    out.converged = false;
    for (int pass = 0; pass < req.max_passes; ++pass) {
      out.passes = pass + 1;
      const TracePoint before = best;

      const double psi_fixed = best.psi_rad;
      const Best1d h_move = golden_section([&](double h) { return f(h, psi_fixed); },
                                           std::max(req.altitude_km.lo, best.altitude_km - h_cell),
                                           std::min(req.altitude_km.hi, best.altitude_km + h_cell),
                                           req.altitude_tol_km, {best.altitude_km, best.p_cov});
      best.altitude_km = h_move.x;
      best.p_cov = h_move.value;

      const double h_fixed = best.altitude_km;
      const Best1d psi_move = golden_section([&](double psi) { return f(h_fixed, psi); },
                                             std::max(req.psi_rad.lo, best.psi_rad - psi_cell),
                                             std::min(req.psi_rad.hi, best.psi_rad + psi_cell), req.psi_tol_rad,
                                             {best.psi_rad, best.p_cov});
      best.psi_rad = psi_move.x;
      best.p_cov = psi_move.value;

      if (std::abs(best.altitude_km - before.altitude_km) < req.altitude_tol_km &&
          std::abs(best.psi_rad - before.psi_rad) < req.psi_tol_rad) {
        out.converged = true;
        break;
      }
    }
  }

  out.h_star_km = best.altitude_km;
  out.psi_star = best.psi_rad;
  out.p_cov_star = best.p_cov;
  clamp_to_horizon(req, out);
  out.altitude_at_bound = near(out.h_star_km, req.altitude_km.lo, req.altitude_tol_km) ||
                          near(out.h_star_km, req.altitude_km.hi, req.altitude_tol_km);
  out.psi_at_bound =
      near(out.psi_star, req.psi_rad.lo, req.psi_tol_rad) || near(out.psi_star, req.psi_rad.hi, req.psi_tol_rad);
  out.evaluations = f.evaluations();
  return out;
}

OptimizationResult optimize(const OptimizationRequest& req) {
  switch (req.mode) {
    case OptimizeMode::altitude:
      return optimize_altitude(req);
    case OptimizeMode::beamwidth:
      return optimize_beamwidth(req);
    case OptimizeMode::joint:
      return optimize_joint(req);
  }
  throw ConfigError("unknown optimisation mode");
}

std::vector<CurvePoint> optimal_beamwidth_curve(const OptimizationRequest& req, std::span<const double> h_grid) {
  require_increasing_grid(h_grid);
  std::vector<CurvePoint> out;
  out.reserve(h_grid.size());
  for (const double h : h_grid) {
    OptimizationRequest at_h = req;
    at_h.mode = OptimizeMode::beamwidth;
    at_h.scenario = req.scenario.with_altitude(h);
    out.push_back({h, optimize_beamwidth(at_h)});
  }
  return out;
}

}  // namespace leocov
