#include "leocov/scenario.hpp"

#include <cmath>

#include "leocov/errors.hpp"
#include "leocov/units.hpp"

namespace leocov {

void Scenario::validate() const {
  earth.validate();
  constellation.validate();
  channel.validate();
  budget.validate();
  if (const auto* beams = std::get_if<BeamConfig>(&beam)) {
    beams->validate();
  } else {
    const double psi = std::get<DirectBeamwidth>(beam).psi_rad;
    if (!(psi > 0.0 && psi <= 2.0 * kPi)) throw ConfigError("effective beamwidth must lie in (0, 2pi]");
  }
  if (!(user_density_per_km2 >= 0.0) || !std::isfinite(user_density_per_km2)) {
    throw ConfigError("user density must be finite and nonnegative");
  }
  if (!(duty_cycle >= 0.0 && duty_cycle <= 1.0)) throw ConfigError("duty cycle must lie in [0, 1]");
}

double Scenario::active_density_per_m2() const { return per_km2_to_per_m2(duty_cycle * user_density_per_km2); }

double Scenario::effective_psi() const {
  if (const auto* beams = std::get_if<BeamConfig>(&beam)) {
    return effective_beamwidth(*beams, altitude_ratio(constellation.altitude_km, earth));
  }
  return std::get<DirectBeamwidth>(beam).psi_rad;
}

GeometryContext Scenario::geometry() const {
  return make_geometry(constellation.altitude_km, effective_psi(), earth);
}

Scenario Scenario::with_altitude(double altitude_km) const {
  Scenario out = *this;
  out.constellation.altitude_km = altitude_km;
  return out;
}

Scenario Scenario::with_psi(double psi_rad) const {
  Scenario out = *this;
  out.beam = DirectBeamwidth{psi_rad};
  return out;
}

Scenario Scenario::with_density(double density_per_km2) const {
  Scenario out = *this;
  out.user_density_per_km2 = density_per_km2;
  return out;
}

Scenario reference_scenario(double noise_dbw, double kappa) {
  Scenario scn;
  scn.constellation.n_sats = 1000;
  scn.constellation.altitude_km = 500.0;
  scn.beam = DirectBeamwidth{kPi / 2.0};
  scn.user_density_per_km2 = 0.04;
  scn.duty_cycle = 0.01;
  scn.budget.noise_dbw = noise_dbw;
  scn.budget.kappa = kappa;
  return scn;
}

}  // namespace leocov
