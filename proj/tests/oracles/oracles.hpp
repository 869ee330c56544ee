#pragma once

// Independent reference implementations used only by tests. They share no code
// with the library: formulas are written out from scratch and integrals use a
// fixed composite Simpson rule.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;
inline constexpr double c0 = 299792458.0;

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double phi_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Footprint half-angle by intersecting the beam edge ray with the sphere.
// Satellite at (0, R+h); the ray leaves at angle psi/2 from nadir.
inline double footprint_by_ray(double psi, double R, double h) {
  const double rs = R + h;
  const double t = psi / 2.0;
  const double dx = std::sin(t), dy = -std::cos(t);
  // |(0, rs) + s d|^2 = R^2  ->  s^2 + 2 rs dy s + rs^2 - R^2 = 0
  const double b = rs * dy;
  const double disc = b * b - (rs * rs - R * R);
  if (disc < 0.0) return std::acos(R / rs);  // ray misses: horizon-limited
  const double s = -b - std::sqrt(disc);
  const double x = s * dx, y = rs + s * dy;
  return std::atan2(x, y);
}

struct Model {
  double R_km = 6371.0;
  double h_km = 500.0;
  double psi = pi / 2.0;
  std::size_t N = 1000;
  double lambda_per_km2 = 0.04 * 0.01;
  double eirp_dbw = 23.0;
  double gs_dbi = 0.0;
  double f_hz = 2e9;
  double noise_dbw = -130.0;
  double kappa = 0.1;
  double gamma_db = -20.0;
  double beta = 2.3, mu_l = 0.0, mu_n = 12.0, s_l = 2.8, s_n = 9.0;

  double alpha() const { return R_km / (R_km + h_km); }
  double varphi_max() const { return footprint_by_ray(psi, R_km, h_km); }
  double P() const { return std::pow(10.0, (eirp_dbw + gs_dbi) / 10.0); }
  double W() const { return std::pow(10.0, noise_dbw / 10.0); }

  // Law of cosines slant range, metres.
  double slant_m(double phi) const {
    const double r = R_km * 1e3, rs = (R_km + h_km) * 1e3;
    return std::sqrt(r * r + rs * rs - 2.0 * r * rs * std::cos(phi));
  }
  double gain(double phi) const {
    const double lam = c0 / f_hz;
    const double k = lam / (4.0 * pi * slant_m(phi));
    return k * k;
  }
  double p_los(double phi) const {
    const double d = std::cos(phi) - alpha();
    if (d <= 0.0) return 0.0;
    return std::exp(-beta * std::sin(phi) / d);
  }
  double zeta_mean(double phi) const {
    const double r = std::log(10.0) / 10.0;
    auto comp = [r](double mu, double s) { return std::exp(-r * mu + 0.5 * r * r * s * s); };
    const double p = p_los(phi);
    return p * comp(mu_l, s_l) + (1.0 - p) * comp(mu_n, s_n);
  }
  double zeta_cdf(double x, double phi) const {
    const double xd = 10.0 * std::log10(x);
    const double p = p_los(phi);
    return p * phi_cdf((xd + mu_l) / s_l) + (1.0 - p) * phi_cdf((xd + mu_n) / s_n);
  }
  double contact_cdf(double phi) const { return 1.0 - std::exp(-0.5 * N * (1.0 - std::cos(phi))); }
  double contact_pdf(double phi) const {
    return 0.5 * N * std::sin(phi) * std::exp(-0.5 * N * (1.0 - std::cos(phi)));
  }
  double mean_interference() const {
    const double lam_m2 = lambda_per_km2 * 1e-6;
    const double Rm = R_km * 1e3;
    const double vm = varphi_max();
    const double integral = simpson([&](double p) { return gain(p) * zeta_mean(p) * std::sin(p); }, 0.0, vm);
    return 2.0 * pi * lam_m2 * Rm * Rm * kappa * P() * integral;
  }
  double coverage() const {
    const double vm = varphi_max();
    const double I = mean_interference();
    const double g = std::pow(10.0, gamma_db / 10.0);
    const double miss =
        simpson([&](double p) { return zeta_cdf(g * (I + W()) / (P() * gain(p)), p) * contact_pdf(p); }, 0.0, vm);
    return contact_cdf(vm) - miss;
  }
};

// Pearson chi-square statistic of `counts` against equal expected frequencies.
template <typename Container>
double chi_square_uniform(const Container& counts) {
  double total = 0.0;
  for (const auto c : counts) total += static_cast<double>(c);
  const double e = total / static_cast<double>(counts.size());
  double x2 = 0.0;
  for (const auto c : counts) x2 += (c - e) * (c - e) / e;
  return x2;
}

}  // namespace oracle
