#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "leocov/analytic.hpp"
#include "leocov/scenario.hpp"
#include "leocov/units.hpp"

namespace leocov {

enum class OptimizeMode { altitude, beamwidth, joint };

std::string_view to_string(OptimizeMode mode);
OptimizeMode parse_optimize_mode(std::string_view name);

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

struct GridResolution {
  std::size_t altitude = 64;
  std::size_t psi = 64;
};

struct OptimizationRequest {
  Scenario scenario;
  OptimizeMode mode = OptimizeMode::joint;
  Bounds altitude_km{200.0, 2000.0};
  Bounds psi_rad{deg_to_rad(5.0), kPi};
  GridResolution grid_resolution;  // points per active axis
  bool refine = true;
  double altitude_tol_km = 1.0;
  double psi_tol_rad = deg_to_rad(0.1);
  int max_passes = 20;  // joint coordinate refinement
  AnalyticOptions analytic;

  void validate() const;
};

struct TracePoint {
  double altitude_km = 0.0;
  double psi_rad = 0.0;
  double p_cov = 0.0;
};

struct OptimizationResult {
  OptimizeMode mode = OptimizeMode::joint;
  double h_star_km = 0.0;  // the fixed altitude in beamwidth mode
  double psi_star = 0.0;   // the scenario's beamwidth at h_star in altitude mode
  double p_cov_star = 0.0;
  double grid_best = 0.0;  // best coarse-grid value before refinement
  std::size_t evaluations = 0;
  std::vector<TracePoint> grid_trace;

  bool altitude_at_bound = false;
  bool psi_at_bound = false;
  bool psi_saturated = false;  // psi_star equals the horizon beamwidth
  bool converged = true;       // joint coordinate passes met the tolerance
  int passes = 0;
};

// Objective seam: coverage as a function of (altitude km, effective beamwidth rad).
using Objective = std::function<double(double altitude_km, double psi_rad)>;

Objective analytic_objective(const Scenario& scn, const AnalyticOptions& opts = {});

OptimizationResult optimize_altitude(const OptimizationRequest& req);
OptimizationResult optimize_altitude(const OptimizationRequest& req, const Objective& objective);

OptimizationResult optimize_beamwidth(const OptimizationRequest& req);
OptimizationResult optimize_beamwidth(const OptimizationRequest& req, const Objective& objective);

OptimizationResult optimize_joint(const OptimizationRequest& req);
OptimizationResult optimize_joint(const OptimizationRequest& req, const Objective& objective);

// Dispatches on req.mode.
OptimizationResult optimize(const OptimizationRequest& req);

struct CurvePoint {
  double altitude_km = 0.0;
  OptimizationResult result;
};

// Beamwidth optimum at each altitude of an increasing grid.
std::vector<CurvePoint> optimal_beamwidth_curve(const OptimizationRequest& req, std::span<const double> h_grid);

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace leocov
