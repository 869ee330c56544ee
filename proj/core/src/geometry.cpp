#include "leocov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Geometry>

#include "leocov/errors.hpp"
#include "leocov/units.hpp"

namespace leocov {
namespace {

constexpr double kClampSlack = 1e-12;

// asin/acos arguments a hair outside [-1, 1] at the psi = psi_o branch point.
double clamp_unit(double x) {
  if (x > 1.0 && x <= 1.0 + kClampSlack) return 1.0;
  if (x < -1.0 && x >= -1.0 - kClampSlack) return -1.0;
  return x;
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("altitude ratio alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

}  // namespace

void EarthModel::validate() const {
  if (!(radius_km > 0.0)) throw ConfigError("earth radius must be positive");
}

void BeamConfig::validate() const {
  if (!(psi_s > 0.0 && psi_s <= 2.0 * kPi)) throw ConfigError("satellite beamwidth must lie in (0, 2pi]");
  if (!(psi_t > 0.0 && psi_t <= 2.0 * kPi)) throw ConfigError("user beamwidth must lie in (0, 2pi]");
}

double altitude_ratio(double altitude_km, const EarthModel& earth) {
  if (!(altitude_km > 0.0)) throw DomainError("altitude must be positive");
  return earth.radius_km / (earth.radius_km + altitude_km);
}

double effective_beamwidth(const BeamConfig& beams, double alpha) {
  require_alpha(alpha);
  const double half_t = std::clamp(beams.psi_t / 2.0, 0.0, kPi / 2.0);
  const double device_limited = 2.0 * std::asin(clamp_unit(alpha * std::sin(half_t)));
  return std::min(beams.psi_s, device_limited);
}

double horizon_beamwidth(double alpha) {
  require_alpha(alpha);
  return 2.0 * std::asin(alpha);
}

double max_zenith_angle(double psi, double alpha) {
  require_alpha(alpha);
  if (!(psi >= 0.0)) throw DomainError("beamwidth must be nonnegative");
  if (psi < horizon_beamwidth(alpha)) {
    const double half = psi / 2.0;
    return std::asin(clamp_unit(std::sin(half) / alpha)) - half;
  }
  return std::acos(alpha);
}

GeometryContext make_geometry(double altitude_km, double psi_eff, const EarthModel& earth) {
  earth.validate();
  GeometryContext g;
  g.altitude_km = altitude_km;
  g.alpha = altitude_ratio(altitude_km, earth);
  g.psi_eff = psi_eff;
  g.psi_horizon = horizon_beamwidth(g.alpha);
  g.varphi_max = max_zenith_angle(psi_eff, g.alpha);
  return g;
}

double contact_angle_cdf(double varphi, std::size_t n_sats) {
  const double half_n = 0.5 * static_cast<double>(n_sats);
  // 1 - cos(phi) = 2 sin^2(phi/2), and expm1 keeps the small-angle tail.
  const double s = std::sin(varphi / 2.0);
  return -std::expm1(-half_n * 2.0 * s * s);
}

double contact_angle_pdf(double varphi, std::size_t n_sats) {
  const double half_n = 0.5 * static_cast<double>(n_sats);
  const double s = std::sin(varphi / 2.0);
  return half_n * std::sin(varphi) * std::exp(-half_n * 2.0 * s * s);
}

double sample_cap_angle(RngStream& rng, double varphi_max) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  return 2.0 * std::asin(clamp_unit(std::sqrt(u) * std::sin(varphi_max / 2.0)));
}

CapSampler::CapSampler(const Eigen::Vector3d& axis, double varphi_max)
    : to_axis_(Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(), axis.normalized()).toRotationMatrix()),
      varphi_max_(varphi_max) {}

Eigen::Vector3d CapSampler::operator()(RngStream& rng) const {
  const double theta = sample_cap_angle(rng, varphi_max_);
  std::uniform_real_distribution<double> azimuth_dist(0.0, 2.0 * kPi);
  const double azimuth = azimuth_dist(rng);
  const double st = std::sin(theta);
  return to_axis_ * Eigen::Vector3d(st * std::cos(azimuth), st * std::sin(azimuth), std::cos(theta));
}

Eigen::Vector3d sample_cap_point(RngStream& rng, double varphi_max, const Eigen::Vector3d& axis) {
  return CapSampler(axis, varphi_max)(rng);
}

double central_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace leocov
