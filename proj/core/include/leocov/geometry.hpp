#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "leocov/rng.hpp"

namespace leocov {

struct EarthModel {
  double radius_km = 6371.0;

  void validate() const;
};

// Satellite and user antenna beamwidths (full cone angles, radians).
struct BeamConfig {
  double psi_s = 0.0;
  double psi_t = 0.0;

  void validate() const;
};

// Derived footprint geometry for one (altitude, effective beamwidth) pair.
struct GeometryContext {
  double altitude_km = 0.0;
  double alpha = 0.0;        // R / (R + h)
  double psi_eff = 0.0;      // effective beamwidth
  double psi_horizon = 0.0;  // beamwidth that just covers the horizon, 2 asin(alpha)
  double varphi_max = 0.0;   // Earth-centred half-apex angle of the footprint
};

double altitude_ratio(double altitude_km, const EarthModel& earth = {});

// min(psi_s, 2 asin(alpha sin(psi_t / 2))). User beams wider than pi are treated as pi.
double effective_beamwidth(const BeamConfig& beams, double alpha);

// Occlusion-limited beamwidth 2 asin(alpha).
double horizon_beamwidth(double alpha);

// Maximum Earth-centred zenith angle of the footprint cut out by a beam of
// width psi from altitude ratio alpha. Saturates at acos(alpha) for psi >= 2 asin(alpha).
double max_zenith_angle(double psi, double alpha);

GeometryContext make_geometry(double altitude_km, double psi_eff, const EarthModel& earth = {});

// Contact-angle law of a BPP of n_sats satellites: P(nearest angle < varphi).
double contact_angle_cdf(double varphi, std::size_t n_sats);
double contact_angle_pdf(double varphi, std::size_t n_sats);

// Uniform points on one spherical cap; the rotation to `axis` is built once.
class CapSampler {
 public:
  CapSampler(const Eigen::Vector3d& axis, double varphi_max);

  Eigen::Vector3d operator()(RngStream& rng) const;

  double half_angle() const { return varphi_max_; }

 private:
  Eigen::Matrix3d to_axis_;
  double varphi_max_;
};

// Uniform point on the spherical cap of half-angle varphi_max about `axis` (unit vector).
Eigen::Vector3d sample_cap_point(RngStream& rng, double varphi_max,
                                 const Eigen::Vector3d& axis = Eigen::Vector3d::UnitZ());

// Polar angle of a uniform cap point. Uses the half-angle form so small caps keep precision.
double sample_cap_angle(RngStream& rng, double varphi_max);

// Earth-centred angle between two directions (need not be normalised).
double central_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

}  // namespace leocov
