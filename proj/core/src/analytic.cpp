#include "leocov/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>

#include "leocov/channel.hpp"
#include "leocov/errors.hpp"
#include "leocov/geometry.hpp"
#include "leocov/units.hpp"

namespace leocov {
namespace {

// The LoS probability has an essential singularity at cos(phi) = alpha, so the
// last 2% of the footprint is integrated as its own panel.
constexpr double kBoundaryLayerSplit = 0.98;

std::array<double, 3> footprint_breakpoints(double varphi_max) {
  return {0.0, kBoundaryLayerSplit * varphi_max, varphi_max};
}

}  // namespace

std::string_view to_string(CoverageMethod method) {
  return method == CoverageMethod::analytic ? "analytic" : "empirical";
}

AnalyticOptions AnalyticOptions::halved() const {
  AnalyticOptions out = *this;
  out.coverage_abs_tol /= 2.0;
  out.interference_rel_tol /= 2.0;
  return out;
}

double average_interference(const Scenario& scn, const AnalyticOptions& opts) {
  scn.validate();
  const double lambda = scn.active_density_per_m2();
  const double kappa = scn.budget.kappa;
  if (lambda == 0.0 || kappa == 0.0) return 0.0;

  const GeometryContext g = scn.geometry();
  const double h = scn.constellation.altitude_km;
  auto integrand = [&](double phi) {
    return path_gain(phi, h, scn.earth, scn.budget.freq_hz) * excess_gain_mean(phi, scn.channel, g.alpha) *
           std::sin(phi);
  };
  const auto bp = footprint_breakpoints(g.varphi_max);
  const auto q = quadrature::integrate(integrand, std::span<const double>(bp),
                                       {.abs_tol = 0.0,
                                        .rel_tol = opts.interference_rel_tol,
                                        .max_subdivisions = opts.max_subdivisions});
  const double r = km_to_m(scn.earth.radius_km);
  return 2.0 * kPi * lambda * r * r * kappa * scn.budget.transmit_gain_w() * q.value;
}

CoverageResult coverage_probability(const Scenario& scn, const AnalyticOptions& opts) {
  return coverage_probability(scn, average_interference(scn, opts), opts);
}

CoverageResult coverage_probability(const Scenario& scn, double mean_interference_w, const AnalyticOptions& opts) {
  scn.validate();
  const GeometryContext g = scn.geometry();
  const std::size_t n = scn.constellation.n_sats;
  const double h = scn.constellation.altitude_km;
  const double threshold = scn.budget.target_sinr() * (mean_interference_w + scn.budget.noise_w());
  const double tx = scn.budget.transmit_gain_w();

  auto integrand = [&](double phi) {
    const double pdf = contact_angle_pdf(phi, n);
    if (pdf == 0.0) return 0.0;
    const double x = threshold / (tx * path_gain(phi, h, scn.earth, scn.budget.freq_hz));
    if (!(x > 0.0)) return 0.0;
    return excess_gain_cdf(x, phi, scn.channel, g.alpha) * pdf;
  };
  const auto bp = footprint_breakpoints(g.varphi_max);
  const auto q = quadrature::integrate(integrand, std::span<const double>(bp),
                                       {.abs_tol = opts.coverage_abs_tol,
                                        .rel_tol = 0.0,
                                        .max_subdivisions = opts.max_subdivisions});

  const double available = contact_angle_cdf(g.varphi_max, n);
  CoverageResult out;
  out.p_cov = std::clamp(available - q.value, 0.0, available);
  out.method = CoverageMethod::analytic;
  out.mean_interference = mean_interference_w;
  out.abs_error = q.abs_error;
  return out;
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::altitude:
      return "altitude";
    case SweepAxis::beamwidth:
      return "beamwidth";
    case SweepAxis::density:
      return "density";
  }
  return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "altitude") return SweepAxis::altitude;
  if (name == "beamwidth") return SweepAxis::beamwidth;
  if (name == "density") return SweepAxis::density;
  throw ConfigError("unknown sweep axis '" + std::string(name) + "'");
}

Scenario with_axis_value(const Scenario& scn, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::altitude:
      return scn.with_altitude(value);
    case SweepAxis::beamwidth:
      return scn.with_psi(value);
    case SweepAxis::density:
      return scn.with_density(value);
  }
  return scn;
}

void require_increasing_grid(std::span<const double> grid) {
  if (grid.empty()) throw ConfigError("sweep grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("sweep grid must be strictly increasing");
  }
}

std::vector<SweepPoint> coverage_sweep(const Scenario& scn, SweepAxis axis, std::span<const double> grid,
                                       const AnalyticOptions& opts) {
  require_increasing_grid(grid);
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (const double v : grid) {
    SweepPoint pt;
    pt.value = v;
    try {
      pt.result = coverage_probability(with_axis_value(scn, axis, v), opts);
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace leocov
