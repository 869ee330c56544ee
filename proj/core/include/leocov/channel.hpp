#pragma once

#include <limits>

#include "leocov/geometry.hpp"
#include "leocov/rng.hpp"

namespace leocov {

// LoS probability parameter and Gaussian-mixture excess path loss.
// Means are stored as positive excess losses (dB); the mixture components are N(-mu, sigma^2).
struct ChannelParams {
  double beta = 2.3;
  double mu_los_db = 0.0;
  double mu_nlos_db = 12.0;
  double sigma_los_db = 2.8;
  double sigma_nlos_db = 9.0;

  void validate() const;
};

// Uplink budget. Noise and the interference-mitigation factor have no sensible
// default and must be set; validate() rejects the NaN placeholders.
struct LinkBudget {
  double eirp_dbw = 23.0;  // P_t G_t
  double gain_s_dbi = 0.0;
  double freq_hz = 2e9;
  double noise_dbw = std::numeric_limits<double>::quiet_NaN();
  double kappa = std::numeric_limits<double>::quiet_NaN();
  double target_sinr_db = -20.0;

  void validate() const;

  // P_t G_t G_s in watts.
  double transmit_gain_w() const;
  double noise_w() const;
  double target_sinr() const;
};

// Free-space path gain (linear) at Earth-centred zenith angle varphi.
double path_gain(double varphi, double altitude_km, const EarthModel& earth, double freq_hz);

// exp(-beta sin(phi) / (cos(phi) - alpha)); 0 at and beyond the horizon.
double los_probability(double varphi, double alpha, double beta);

// One draw of the linear excess gain.
double excess_gain_sample(RngStream& rng, double varphi, const ChannelParams& params, double alpha);

// Same mixture draw with the LoS probability already evaluated.
double excess_gain_sample_at(RngStream& rng, double p_los, const ChannelParams& params);

double excess_gain_mean(double varphi, const ChannelParams& params, double alpha);

double excess_gain_cdf(double x, double varphi, const ChannelParams& params, double alpha);

}  // namespace leocov
