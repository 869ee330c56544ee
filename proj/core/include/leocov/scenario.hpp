#pragma once

#include <variant>

#include "leocov/channel.hpp"
#include "leocov/constellation.hpp"
#include "leocov/geometry.hpp"
#include "leocov/units.hpp"

namespace leocov {

// Effective beamwidth tuned directly, bypassing the (psi_s, psi_t) combination.
struct DirectBeamwidth {
  double psi_rad = kPi / 2.0;
};

using BeamSpec = std::variant<DirectBeamwidth, BeamConfig>;

struct Scenario {
  EarthModel earth;
  ConstellationSpec constellation;
  BeamSpec beam = DirectBeamwidth{};
  ChannelParams channel;
  LinkBudget budget;
  double user_density_per_km2 = 0.04;  // all devices, lambda_o
  double duty_cycle = 0.01;            // D

  void validate() const;

  // lambda = D lambda_o in users per m^2.
  double active_density_per_m2() const;
  double effective_psi() const;
  GeometryContext geometry() const;

  Scenario with_altitude(double altitude_km) const;
  Scenario with_psi(double psi_rad) const;
  Scenario with_density(double density_per_km2) const;
};

// Reference scenario: N = 1000, h = 500 km, psi = 90 deg, 4 users per 100 km^2,
// channel and link terms at their defaults, with the given noise and kappa.
Scenario reference_scenario(double noise_dbw, double kappa);

}  // namespace leocov
