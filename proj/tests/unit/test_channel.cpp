#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "leocov/channel.hpp"
#include "leocov/errors.hpp"
#include "leocov/geometry.hpp"
#include "leocov/stats.hpp"
#include "leocov/units.hpp"
#include "oracles.hpp"

using namespace leocov;
using doctest::Approx;

namespace {
const double kAlpha500 = altitude_ratio(500.0);
}

TEST_CASE("path gain at nadir and at the horizon") {
  const EarthModel earth;
  CHECK(path_gain(0.0, 500.0, earth, 2e9) == Approx(5.69143365714345e-16).epsilon(1e-12));
  CHECK(linear_to_db(path_gain(0.0, 500.0, earth, 2e9)) == Approx(-152.4478).epsilon(1e-6));
  const double horizon = std::acos(kAlpha500);
  CHECK(path_gain(horizon, 500.0, earth, 2e9) == Approx(2.14900832847887e-17).epsilon(1e-12));
  oracle::Model m;
  CHECK(m.slant_m(horizon) / 1e3 == Approx(2573.130).epsilon(1e-6));
}

TEST_CASE("path gain decreases with angle and matches the law of cosines") {
  oracle::Model m;
  double prev = path_gain(0.0, 500.0, {}, 2e9);
  for (int i = 1; i <= 100; ++i) {
    const double phi = std::acos(kAlpha500) * i / 100.0;
    const double g = path_gain(phi, 500.0, {}, 2e9);
    CHECK(g < prev);
    CHECK(g == Approx(m.gain(phi)).epsilon(1e-10));
    prev = g;
  }
}

TEST_CASE("LoS probability") {
  CHECK(los_probability(0.0, kAlpha500, 2.3) == 1.0);
  CHECK(los_probability(0.2, kAlpha500, 2.3) == Approx(1.75437283582084e-4).epsilon(1e-11));
  CHECK(los_probability(std::acos(kAlpha500), kAlpha500, 2.3) == 0.0);
  CHECK(los_probability(1.0, kAlpha500, 2.3) == 0.0);
  CHECK(los_probability(0.2, kAlpha500, 0.0) == 1.0);
  double prev = 1.0;
  for (int i = 1; i < 50; ++i) {
    const double p = los_probability(0.38 * i / 50.0, kAlpha500, 2.3);
    CHECK(p <= prev);
    CHECK(p >= 0.0);
    prev = p;
  }
}

TEST_CASE("excess gain mean and CDF match the oracle") {
  const ChannelParams ch;
  CHECK(excess_gain_mean(0.0, ch, kAlpha500) == Approx(1.23100930482987).epsilon(1e-13));
  CHECK(excess_gain_mean(0.2, ch, kAlpha500) == Approx(0.540311720763595).epsilon(1e-12));
  oracle::Model m;
  for (double phi : {0.0, 0.05, 0.2, 0.35}) {
    for (double x : {1e-3, 0.1, 0.5, 1.0, 3.0, 30.0}) {
      CHECK(excess_gain_cdf(x, phi, ch, kAlpha500) == Approx(m.zeta_cdf(x, phi)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(excess_gain_cdf(0.0, 0.1, ch, kAlpha500), DomainError);
}

TEST_CASE("excess gain CDF is a distribution function") {
  const ChannelParams ch;
  double prev = 0.0;
  for (int i = -300; i <= 300; ++i) {
    const double x = std::pow(10.0, i / 60.0);
    const double f = excess_gain_cdf(x, 0.1, ch, kAlpha500);
    CHECK(f >= prev);
    CHECK(f <= 1.0);
    prev = f;
  }
  CHECK(excess_gain_cdf(1e-30, 0.1, ch, kAlpha500) < 1e-12);
  CHECK(excess_gain_cdf(1e30, 0.1, ch, kAlpha500) > 1.0 - 1e-12);
}

TEST_CASE("excess gain samples follow the mixture") {
  const ChannelParams ch;
  for (double phi : {0.0, 0.2}) {
    RngStream rng(42);
    constexpr int n = 100000;
    std::vector<double> draws(n);
    for (auto& d : draws) d = excess_gain_sample(rng, phi, ch, kAlpha500);
    CHECK(*std::min_element(draws.begin(), draws.end()) > 0.0);
    const double ks = ks_statistic(draws, [&](double x) { return excess_gain_cdf(x, phi, ch, kAlpha500); });
    CHECK(ks < 0.01);
  }
}

TEST_CASE("channel and link validation") {
  ChannelParams ch;
  ch.sigma_los_db = 0.0;
  CHECK_THROWS_AS(ch.validate(), ConfigError);
  ch = {};
  ch.beta = -1.0;
  CHECK_THROWS_AS(ch.validate(), ConfigError);
  LinkBudget lb;
  CHECK_THROWS_AS(lb.validate(), ConfigError);
  lb.noise_dbw = -130.0;
  CHECK_THROWS_AS(lb.validate(), ConfigError);
  lb.kappa = 1.5;
  CHECK_THROWS_AS(lb.validate(), ConfigError);
  lb.kappa = 0.1;
  CHECK_NOTHROW(lb.validate());
  CHECK(lb.transmit_gain_w() == Approx(std::pow(10.0, 2.3)));
  CHECK(lb.noise_w() == Approx(1e-13));
  CHECK(lb.target_sinr() == Approx(0.01));
}

TEST_CASE("unit conversions round-trip") {
  for (double v : {-200.0, -130.0, 0.0, 23.0}) CHECK(linear_to_db(db_to_linear(v)) == Approx(v).epsilon(1e-14));
  CHECK(rad_to_deg(deg_to_rad(86.4)) == Approx(86.4).epsilon(1e-15));
  CHECK(km_to_m(1.5) == 1500.0);
  CHECK(per_km2_to_per_m2(4.0) == Approx(4e-6));
}
