#include "leocov/channel.hpp"

#include <cmath>
#include <numbers>

#include "leocov/errors.hpp"
#include "leocov/units.hpp"

namespace leocov {
namespace {

constexpr double kRho = std::numbers::ln10 / 10.0;

// Lognormal mean of 10^(X/10) with X ~ N(-mu, sigma^2).
double component_mean(double mu_db, double sigma_db) {
  return std::exp(kRho * kRho * sigma_db * sigma_db / 2.0 - kRho * mu_db);
}

double component_cdf(double x_db, double mu_db, double sigma_db) {
  return std::erf((x_db + mu_db) / (std::numbers::sqrt2 * sigma_db));
}

}  // namespace

void ChannelParams::validate() const {
  if (!(beta >= 0.0)) throw ConfigError("LoS parameter beta must be nonnegative");
  if (!(sigma_los_db > 0.0) || !(sigma_nlos_db > 0.0)) {
    throw ConfigError("excess path-loss deviations must be positive");
  }
  if (!std::isfinite(mu_los_db) || !std::isfinite(mu_nlos_db)) {
    throw ConfigError("excess path-loss means must be finite");
  }
}

void LinkBudget::validate() const {
  if (std::isnan(noise_dbw)) throw ConfigError("noise power (noise_dbw) must be set explicitly");
  if (std::isnan(kappa)) throw ConfigError("interference mitigation factor (kappa) must be set explicitly");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw ConfigError("kappa must lie in [0, 1]");
  if (!(freq_hz > 0.0)) throw ConfigError("carrier frequency must be positive");
  if (!std::isfinite(eirp_dbw) || !std::isfinite(gain_s_dbi) || !std::isfinite(target_sinr_db)) {
    throw ConfigError("link budget terms must be finite");
  }
}

double LinkBudget::transmit_gain_w() const { return db_to_linear(eirp_dbw + gain_s_dbi); }
double LinkBudget::noise_w() const { return db_to_linear(noise_dbw); }
double LinkBudget::target_sinr() const { return db_to_linear(target_sinr_db); }

double path_gain(double varphi, double altitude_km, const EarthModel& earth, double freq_hz) {
  const double r = km_to_m(earth.radius_km);
  const double rs = km_to_m(earth.radius_km + altitude_km);
  // |r_s - r|^2 written as (rs - r)^2 + 4 r rs sin^2(phi/2) to avoid cancellation near nadir.
  const double s = std::sin(varphi / 2.0);
  const double slant2 = (rs - r) * (rs - r) + 4.0 * r * rs * s * s;
  if (!(slant2 > 0.0)) throw DomainError("nonpositive slant range");
  const double wavelength_term = kSpeedOfLight / (4.0 * kPi * freq_hz);
  return wavelength_term * wavelength_term / slant2;
}

double los_probability(double varphi, double alpha, double beta) {
  const double denom = std::cos(varphi) - alpha;
  if (!(denom > 0.0)) return 0.0;
  return std::exp(-beta * std::sin(varphi) / denom);
}

double excess_gain_sample_at(RngStream& rng, double p_los, const ChannelParams& params) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool los = unit(rng) < p_los;
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double z = gauss(rng);
  const double db = los ? -params.mu_los_db + params.sigma_los_db * z : -params.mu_nlos_db + params.sigma_nlos_db * z;
  return db_to_linear(db);
}

double excess_gain_sample(RngStream& rng, double varphi, const ChannelParams& params, double alpha) {
  return excess_gain_sample_at(rng, los_probability(varphi, alpha, params.beta), params);
}

double excess_gain_mean(double varphi, const ChannelParams& params, double alpha) {
  const double p_los = los_probability(varphi, alpha, params.beta);
  return p_los * component_mean(params.mu_los_db, params.sigma_los_db) +
         (1.0 - p_los) * component_mean(params.mu_nlos_db, params.sigma_nlos_db);
}

double excess_gain_cdf(double x, double varphi, const ChannelParams& params, double alpha) {
  if (!(x > 0.0)) throw DomainError("excess-gain CDF needs x > 0");
  const double p_los = los_probability(varphi, alpha, params.beta);
  const double x_db = linear_to_db(x);
  return 0.5 + 0.5 * p_los * component_cdf(x_db, params.mu_los_db, params.sigma_los_db) +
         0.5 * (1.0 - p_los) * component_cdf(x_db, params.mu_nlos_db, params.sigma_nlos_db);
}

}  // namespace leocov
