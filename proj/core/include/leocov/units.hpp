#pragma once

#include <cmath>
#include <numbers>

namespace leocov {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

constexpr double km_to_m(double km) { return km * 1e3; }
constexpr double per_km2_to_per_m2(double density) { return density * 1e-6; }

}  // namespace leocov
