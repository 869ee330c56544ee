#include <doctest.h>

#include <cmath>
#include <vector>

#include "leocov/analytic.hpp"
#include "leocov/errors.hpp"
#include "leocov/geometry.hpp"
#include "leocov/optimizer.hpp"
#include "leocov/units.hpp"

using namespace leocov;
using doctest::Approx;

namespace {

OptimizationRequest synthetic_request(OptimizeMode mode) {
  OptimizationRequest req;
  req.scenario = reference_scenario(-130.0, 0.1);
  req.mode = mode;
  req.grid_resolution = {19, 19};
  return req;
}

double bowl(double h, double psi) {
  return 1.0 - std::pow((h - 1033.0) / 600.0, 2) - std::pow((psi - 1.12) / 0.8, 2);
}

}  // namespace

TEST_CASE("golden-section refinement finds an interior optimum between grid points") {
  auto req = synthetic_request(OptimizeMode::joint);
  const auto r = optimize_joint(req, bowl);
  CHECK(r.h_star_km == Approx(1033.0).epsilon(1e-3));
  CHECK(r.psi_star == Approx(1.12).epsilon(1e-3));
  CHECK(r.p_cov_star >= r.grid_best);
  CHECK(r.converged);
  CHECK_FALSE(r.altitude_at_bound);
  CHECK_FALSE(r.psi_at_bound);
  CHECK(r.grid_trace.size() == 19 * 19);

  req.refine = false;
  const auto coarse = optimize_joint(req, bowl);
  CHECK(coarse.p_cov_star == coarse.grid_best);
  CHECK(std::abs(coarse.h_star_km - 1033.0) <= 50.0);
}

TEST_CASE("one-dimensional modes") {
  auto req = synthetic_request(OptimizeMode::beamwidth);
  req.scenario = req.scenario.with_altitude(1033.0);
  const auto b = optimize_beamwidth(req, bowl);
  CHECK(b.h_star_km == 1033.0);
  CHECK(b.psi_star == Approx(1.12).epsilon(1e-3));

  req.mode = OptimizeMode::altitude;
  req.scenario = req.scenario.with_psi(1.12);
  const auto a = optimize_altitude(req, bowl);
  CHECK(a.h_star_km == Approx(1033.0).epsilon(1e-3));
  CHECK(a.psi_star == 1.12);
}

TEST_CASE("ties resolve to the smaller parameter") {
  auto req = synthetic_request(OptimizeMode::joint);
  auto plateau = [](double, double) { return 0.5; };
  const auto r = optimize_joint(req, plateau);
  CHECK(r.h_star_km == req.altitude_km.lo);
  CHECK(r.psi_star == req.psi_rad.lo);
  CHECK(r.altitude_at_bound);
  CHECK(r.psi_at_bound);
  req.mode = OptimizeMode::beamwidth;
  CHECK(optimize_beamwidth(req, plateau).psi_star == req.psi_rad.lo);
}

TEST_CASE("beamwidth beyond the horizon is reported as the horizon beamwidth") {
  auto req = synthetic_request(OptimizeMode::beamwidth);
  auto wider_is_better = [](double, double psi) { return psi; };
  const auto r = optimize_beamwidth(req, wider_is_better);
  CHECK(r.psi_saturated);
  CHECK(r.psi_star == Approx(horizon_beamwidth(altitude_ratio(500.0))));
}

TEST_CASE("boundary optima are flagged") {
  auto req = synthetic_request(OptimizeMode::altitude);
  const auto r = optimize_altitude(req, [](double h, double) { return h; });
  CHECK(r.altitude_at_bound);
  CHECK(r.h_star_km == Approx(req.altitude_km.hi));
}

TEST_CASE("objective evaluations are memoised") {
  auto req = synthetic_request(OptimizeMode::joint);
  std::size_t calls = 0;
  const auto r = optimize_joint(req, [&](double h, double psi) {
    ++calls;
    return bowl(h, psi);
  });
  CHECK(r.evaluations == calls);
}

TEST_CASE("request validation and mode parsing") {
  auto req = synthetic_request(OptimizeMode::joint);
  req.altitude_km = {800.0, 400.0};
  CHECK_THROWS_AS(req.validate(), ConfigError);
  req = synthetic_request(OptimizeMode::joint);
  req.psi_rad = {0.1, 4.0};
  CHECK_THROWS_AS(req.validate(), ConfigError);
  req = synthetic_request(OptimizeMode::joint);
  req.grid_resolution = {2, 19};
  CHECK_THROWS_AS(req.validate(), ConfigError);
  CHECK(parse_optimize_mode("joint") == OptimizeMode::joint);
  CHECK_THROWS_AS(parse_optimize_mode("both"), ConfigError);
  const auto g = linspace(0.0, 1.0, 5);
  CHECK(g == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
}

TEST_CASE("analytic optimum of the reference scenario is interior and stable under grid doubling") {
  OptimizationRequest req;
  req.scenario = reference_scenario(-130.0, 0.1);
  req.mode = OptimizeMode::beamwidth;
  req.grid_resolution = {32, 32};
  const auto coarse = optimize_beamwidth(req);
  req.grid_resolution = {64, 64};
  const auto fine = optimize_beamwidth(req);
  const double cell = (req.psi_rad.hi - req.psi_rad.lo) / 31.0;
  CHECK_FALSE(coarse.psi_at_bound);
  CHECK(std::abs(coarse.psi_star - fine.psi_star) < cell);
  // the optimum beats its neighbours
  const double p = coverage_probability(req.scenario.with_psi(fine.psi_star)).p_cov;
  CHECK(p >= coverage_probability(req.scenario.with_psi(fine.psi_star - 0.01)).p_cov);
  CHECK(p >= coverage_probability(req.scenario.with_psi(fine.psi_star + 0.01)).p_cov);
}
