#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leocov/quadrature.hpp"
#include "leocov/scenario.hpp"

namespace leocov {

enum class CoverageMethod { analytic, empirical };

std::string_view to_string(CoverageMethod method);

struct CoverageResult {
  double p_cov = 0.0;
  CoverageMethod method = CoverageMethod::analytic;
  double ci_halfwidth = 0.0;       // 95% normal-approximation half-width; 0 for analytic
  double mean_interference = 0.0;  // watts
  double abs_error = 0.0;          // quadrature error estimate on p_cov (analytic only)
};

struct AnalyticOptions {
  // Absolute tolerance on the coverage probability.
  double coverage_abs_tol = 1e-9;
  // Relative tolerance on the mean interference integral.
  double interference_rel_tol = 1e-10;
  int max_subdivisions = 4000;

  AnalyticOptions halved() const;
};

// Mean aggregate interference (W) at a satellite, from Campbell's theorem over the footprint.
double average_interference(const Scenario& scn, const AnalyticOptions& opts = {});

// Uplink coverage probability of the typical user, with mean interference treated as constant.
CoverageResult coverage_probability(const Scenario& scn, const AnalyticOptions& opts = {});

// Same, with a precomputed mean interference (W).
CoverageResult coverage_probability(const Scenario& scn, double mean_interference_w,
                                    const AnalyticOptions& opts = {});

enum class SweepAxis { altitude, beamwidth, density };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view name);

// Substitute one axis value: km for altitude, radians for beamwidth, users/km^2 for density.
Scenario with_axis_value(const Scenario& scn, SweepAxis axis, double value);

struct SweepPoint {
  double value = 0.0;
  std::optional<CoverageResult> result;
  std::string error;  // non-empty when the point failed
};

// Element-wise coverage along `axis`. Grid must be nonempty and strictly increasing.
// A failing point records its error and the sweep continues.
std::vector<SweepPoint> coverage_sweep(const Scenario& scn, SweepAxis axis, std::span<const double> grid,
                                       const AnalyticOptions& opts = {});

void require_increasing_grid(std::span<const double> grid);

}  // namespace leocov
