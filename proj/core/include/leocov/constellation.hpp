#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "leocov/geometry.hpp"
#include "leocov/rng.hpp"

namespace leocov {

enum class ConstellationKind { random_bpp, walker_delta, walker_star };

std::string_view to_string(ConstellationKind kind);
ConstellationKind parse_constellation_kind(std::string_view name);

struct ConstellationSpec {
  std::size_t n_sats = 1000;
  double altitude_km = 500.0;
  ConstellationKind kind = ConstellationKind::random_bpp;
  double inclination_rad = 0.0;  // Walker kinds only
  std::size_t planes = 0;        // 0 selects round(sqrt(n_sats))
  std::size_t phasing = 0;       // Walker phasing factor F

  bool is_walker() const { return kind != ConstellationKind::random_bpp; }
  std::size_t plane_count() const;
  std::size_t sats_per_plane() const;

  // Throws ConfigError; for Walker kinds the message names the realisable N.
  void validate() const;

  // Copy with n_sats = planes * sats_per_plane.
  ConstellationSpec adjusted() const;
};

// Satellite positions (km, Earth-centred) for one snapshot.
// Walker kinds get a fresh uniform RAAN offset and along-track phase per call.
std::vector<Eigen::Vector3d> realize_constellation(const ConstellationSpec& spec, RngStream& rng,
                                                   const EarthModel& earth = {});

// Latitude band |lat| <= i + varphi_max served by an inclined constellation (closed boundary).
bool latitude_filter(const Eigen::Vector3d& user, const ConstellationSpec& spec, double varphi_max);

}  // namespace leocov
