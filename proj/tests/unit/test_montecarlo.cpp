#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "leocov/analytic.hpp"
#include "leocov/channel.hpp"
#include "leocov/errors.hpp"
#include "leocov/geometry.hpp"
#include "leocov/montecarlo.hpp"
#include "leocov/stats.hpp"
#include "leocov/units.hpp"
#include "oracles.hpp"

using namespace leocov;
using doctest::Approx;

namespace {

// Deterministic channel: LoS everywhere with a vanishing spread, so zeta == 1.
Scenario flat_channel_scenario() {
  Scenario s = reference_scenario(-130.0, 0.5);
  s.channel.beta = 0.0;
  s.channel.mu_los_db = 0.0;
  s.channel.sigma_los_db = 1e-12;
  return s;
}

Eigen::Vector3d at_angle(double theta, double radius) {
  return radius * Eigen::Vector3d(std::sin(theta), 0.0, std::cos(theta));
}

}  // namespace

TEST_CASE("derived streams depend only on seed and index") {
  auto a = derive_stream(1, 5);
  auto b = derive_stream(1, 5);
  auto c = derive_stream(1, 6);
  auto d = derive_stream(2, 5);
  const auto va = a();
  CHECK(va == b());
  CHECK(va != c());
  CHECK(va != d());
}

TEST_CASE("single-link SINR matches the link budget") {
  const Scenario s = flat_channel_scenario();
  const double R = s.earth.radius_km, rs = R + 500.0;
  Snapshot snap;
  snap.sat_positions = {at_angle(0.0, rs), at_angle(1.0, rs)};
  snap.user_positions = {at_angle(0.0, R)};
  RngStream rng(1);
  const auto rec = evaluate_snapshot(snap, s, rng);
  CHECK(rec.served);
  CHECK(rec.serving_index == 0);
  CHECK(rec.varphi_o == Approx(0.0).epsilon(1e-12));
  CHECK(rec.interferer_count == 0);
  const double snr = s.budget.transmit_gain_w() * path_gain(0.0, 500.0, s.earth, 2e9) / s.budget.noise_w();
  CHECK(rec.sinr_db == Approx(linear_to_db(snr)).epsilon(1e-9));
}

TEST_CASE("interferers inside the footprint add kappa P l each") {
  const Scenario s = flat_channel_scenario();
  const double R = s.earth.radius_km, rs = R + 500.0;
  const double vm = s.geometry().varphi_max;
  Snapshot snap;
  snap.sat_positions = {at_angle(0.0, rs)};
  snap.user_positions = {at_angle(0.01, R), at_angle(0.5 * vm, R), at_angle(-0.2 * vm, R), at_angle(1.5 * vm, R)};
  RngStream rng(2);
  const auto rec = evaluate_snapshot(snap, s, rng);
  REQUIRE(rec.served);
  CHECK(rec.interferer_count == 2);
  const double P = s.budget.transmit_gain_w();
  const double expect = s.budget.kappa * P *
                        (path_gain(0.5 * vm, 500.0, s.earth, 2e9) + path_gain(0.2 * vm, 500.0, s.earth, 2e9));
  CHECK(rec.interference_w == Approx(expect).epsilon(1e-9));
  const double sinr = P * path_gain(0.01, 500.0, s.earth, 2e9) / (expect + s.budget.noise_w());
  CHECK(rec.sinr_db == Approx(linear_to_db(sinr)).epsilon(1e-9));
}

TEST_CASE("a target outside its nearest footprint is not served") {
  const Scenario s = flat_channel_scenario();
  const double R = s.earth.radius_km, rs = R + 500.0;
  Snapshot snap;
  snap.sat_positions = {at_angle(2.0 * s.geometry().varphi_max, rs)};
  snap.user_positions = {at_angle(0.0, R)};
  RngStream rng(3);
  CHECK_FALSE(evaluate_snapshot(snap, s, rng).served);
}

TEST_CASE("nearest satellite ties go to the lowest index") {
  const std::vector<Eigen::Vector3d> sats = {at_angle(0.1, 7000.0), at_angle(-0.1, 7000.0), at_angle(0.05, 7000.0)};
  CHECK(nearest_satellite(sats, at_angle(0.0, 6371.0)) == 2);
  const std::vector<Eigen::Vector3d> tie = {at_angle(0.1, 7000.0), at_angle(-0.1, 7000.0)};
  CHECK(nearest_satellite(tie, at_angle(0.0, 6371.0)) == 0);
  CHECK_THROWS_AS(nearest_satellite(std::vector<Eigen::Vector3d>{}, at_angle(0.0, 1.0)), DomainError);
}

TEST_CASE("user count on a cap is Poisson with the cap mean") {
  const SphericalCap cap{Eigen::Vector3d::UnitZ(), 0.1};
  const double density = 4e-4;
  const double mean = density * cap.area(6371.0);
  CHECK(cap.area(6371.0) == Approx(2.0 * kPi * 6371.0 * 6371.0 * (1.0 - std::cos(0.1))));
  RngStream rng(9);
  constexpr int n = 2000;
  std::vector<double> k(n);
  for (auto& v : k) {
    const auto users = realize_users(density, cap, Eigen::Vector3d::UnitZ() * 6371.0, rng);
    v = static_cast<double>(users.size() - 1);
    for (std::size_t i = 1; i < users.size(); ++i) {
      REQUIRE(users[i].norm() == Approx(6371.0).epsilon(1e-12));
      REQUIRE(central_angle(users[i], cap.axis) <= 0.1 + 1e-12);
    }
  }
  const double m = std::accumulate(k.begin(), k.end(), 0.0) / n;
  double var = 0.0;
  for (double v : k) var += (v - m) * (v - m);
  var /= n - 1;
  CHECK(std::abs(m - mean) < 4.0 * std::sqrt(mean / n));
  CHECK(var / mean == Approx(1.0).epsilon(0.15));
}

TEST_CASE("simulated contact angles follow the BPP law") {
  Scenario s = reference_scenario(-130.0, 0.1).with_density(0.0);
  s.constellation.n_sats = 100;
  const auto recs = simulate_snapshots(s, 3000, 17, {1});
  std::vector<double> angles;
  for (const auto& r : recs) angles.push_back(r.varphi_o);
  const double ks = ks_statistic(angles, [](double p) { return contact_angle_cdf(p, 100); });
  CHECK(ks < 1.95 / std::sqrt(3000.0));
}

TEST_CASE("records do not depend on the thread count") {
  const Scenario s = reference_scenario(-130.0, 0.1);
  const auto a = simulate_snapshots(s, 64, 5, {1});
  const auto b = simulate_snapshots(s, 64, 5, {3});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].realization == i);
    CHECK(a[i].sinr_db == b[i].sinr_db);
    CHECK(a[i].interference_w == b[i].interference_w);
    CHECK(a[i].served == b[i].served);
  }
  const auto sa = summarize(a, s.budget.target_sinr_db);
  const auto sb = summarize(b, s.budget.target_sinr_db);
  CHECK(sa.p_cov == sb.p_cov);
  CHECK(sa.mean_interference == sb.mean_interference);
  CHECK(sa.method == CoverageMethod::empirical);
  CHECK(sa.ci_halfwidth == Approx(proportion_ci_halfwidth(sa.p_cov, 64)));
}

TEST_CASE("small-run coverage and interference sit near the analytic model") {
  const Scenario s = reference_scenario(-130.0, 0.1);
  const auto recs = simulate_snapshots(s, 3000, 23, {});
  const auto e = summarize(recs, s.budget.target_sinr_db);
  const auto a = coverage_probability(s);
  CHECK(std::abs(e.p_cov - a.p_cov) < 4.0 * std::sqrt(a.p_cov * (1 - a.p_cov) / 3000.0) + 0.01);
  CHECK(e.mean_interference / a.mean_interference == Approx(1.0).epsilon(0.03));
}

TEST_CASE("common-random-number beamwidth sweep") {
  const Scenario s = reference_scenario(-130.0, 0.1);
  const std::vector<double> psi = {deg_to_rad(30.0), deg_to_rad(90.0), deg_to_rad(150.0)};
  const auto a = empirical_beamwidth_sweep(s, psi, 1500, 4, {1});
  const auto b = empirical_beamwidth_sweep(s, psi, 1500, 4, {2});
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a[i].p_cov == b[i].p_cov);
    const double p = coverage_probability(s.with_psi(psi[i])).p_cov;
    CHECK(std::abs(a[i].p_cov - p) < 4.0 * std::sqrt(p * (1 - p) / 1500.0) + 0.01);
  }
}

TEST_CASE("Walker snapshots keep targets inside the latitude band") {
  Scenario s = reference_scenario(-130.0, 0.1).with_density(0.0);
  s.constellation.kind = ConstellationKind::walker_star;
  s.constellation.n_sats = 100;
  s.constellation.inclination_rad = deg_to_rad(53.0);
  const double vm = s.geometry().varphi_max;
  for (int k = 0; k < 200; ++k) {
    auto rng = derive_stream(3, k);
    const auto snap = realize_snapshot(s, rng);
    CHECK(latitude_filter(snap.user_positions[snap.target_index], s.constellation, vm));
  }
}

TEST_CASE("simulation argument errors") {
  const Scenario s = reference_scenario(-130.0, 0.1);
  CHECK_THROWS_AS(simulate_snapshots(s, 0, 1), DomainError);
  const SphericalCap cap{Eigen::Vector3d::UnitZ(), 0.1};
  RngStream rng(1);
  CHECK_THROWS_AS(realize_users(-1.0, cap, Eigen::Vector3d::UnitZ(), rng), DomainError);
}
