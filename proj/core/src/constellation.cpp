#include "leocov/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "leocov/errors.hpp"
#include "leocov/units.hpp"

namespace leocov {

std::string_view to_string(ConstellationKind kind) {
  switch (kind) {
    case ConstellationKind::random_bpp:
      return "random_bpp";
    case ConstellationKind::walker_delta:
      return "walker_delta";
    case ConstellationKind::walker_star:
      return "walker_star";
  }
  return "unknown";
}

ConstellationKind parse_constellation_kind(std::string_view name) {
  if (name == "random_bpp" || name == "random") return ConstellationKind::random_bpp;
  if (name == "walker_delta" || name == "delta") return ConstellationKind::walker_delta;
  if (name == "walker_star" || name == "star") return ConstellationKind::walker_star;
  throw ConfigError("unknown constellation kind '" + std::string(name) + "'");
}

std::size_t ConstellationSpec::plane_count() const {
  if (planes > 0) return planes;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n_sats)))));
}

std::size_t ConstellationSpec::sats_per_plane() const {
  const auto p = plane_count();
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(static_cast<double>(n_sats) / p)));
}

void ConstellationSpec::validate() const {
  if (n_sats < 1) throw ConfigError("constellation needs at least one satellite");
  if (!(altitude_km > 0.0)) throw ConfigError("altitude must be positive");
  if (!is_walker()) return;
  if (!(inclination_rad > 0.0 && inclination_rad <= kPi / 2.0 + 1e-12)) {
    throw ConfigError("Walker inclination must lie in (0, 90] degrees");
  }
  const auto realised = plane_count() * sats_per_plane();
  if (realised != n_sats) {
    throw ConfigError("Walker constellation with " + std::to_string(plane_count()) + " planes of " +
                      std::to_string(sats_per_plane()) + " satellites realises N = " + std::to_string(realised) +
                      ", not the requested " + std::to_string(n_sats));
  }
}

ConstellationSpec ConstellationSpec::adjusted() const {
  ConstellationSpec out = *this;
  if (is_walker()) {
    out.planes = plane_count();
    out.n_sats = out.planes * sats_per_plane();
  }
  return out;
}

std::vector<Eigen::Vector3d> realize_constellation(const ConstellationSpec& spec, RngStream& rng,
                                                   const EarthModel& earth) {
  spec.validate();
  const double radius = earth.radius_km + spec.altitude_km;
  std::vector<Eigen::Vector3d> sats;
  sats.reserve(spec.n_sats);

  if (!spec.is_walker()) {
    const CapSampler sphere(Eigen::Vector3d::UnitZ(), kPi);
    for (std::size_t k = 0; k < spec.n_sats; ++k) sats.push_back(radius * sphere(rng));
    return sats;
  }

  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  const double raan0 = angle(rng);
  const double phase0 = angle(rng);
  const std::size_t n_planes = spec.plane_count();
  const std::size_t per_plane = spec.sats_per_plane();
  const double raan_span = spec.kind == ConstellationKind::walker_star ? kPi : 2.0 * kPi;
  const double raan_step = raan_span / static_cast<double>(n_planes);
  const double slot_step = 2.0 * kPi / static_cast<double>(per_plane);
  const double phase_step = 2.0 * kPi * static_cast<double>(spec.phasing) / static_cast<double>(spec.n_sats);
  const double ci = std::cos(spec.inclination_rad);
  const double si = std::sin(spec.inclination_rad);

  for (std::size_t p = 0; p < n_planes; ++p) {
    const double raan = raan0 + raan_step * static_cast<double>(p);
    const double co = std::cos(raan);
    const double so = std::sin(raan);
    for (std::size_t s = 0; s < per_plane; ++s) {
      const double u = phase0 + slot_step * static_cast<double>(s) + phase_step * static_cast<double>(p);
      const double cu = std::cos(u);
      const double su = std::sin(u);
      // R_z(raan) R_x(i) [cos u, sin u, 0]
      sats.emplace_back(radius * (co * cu - so * su * ci), radius * (so * cu + co * su * ci), radius * (su * si));
    }
  }
  return sats;
}

bool latitude_filter(const Eigen::Vector3d& user, const ConstellationSpec& spec, double varphi_max) {
  const double latitude = std::asin(std::clamp(user.z() / user.norm(), -1.0, 1.0));
  // Closed band; the slack absorbs asin round-off for users placed exactly on the edge.
  return std::abs(latitude) <= spec.inclination_rad + varphi_max + 1e-12;
}

}  // namespace leocov
