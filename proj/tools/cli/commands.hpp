#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leocov/scenario.hpp"

namespace leocov::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNumerical = 2,
  kExitValidation = 3,
};

// Full command line (args[0] is the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Grid argmax of a coverage curve over psi: ties go to the smaller psi, and psi
// past the horizon beamwidth is reported as the horizon beamwidth.
struct GridOptimum {
  double psi_rad = 0.0;
  double p_cov = 0.0;
};
GridOptimum grid_optimum(std::span<const double> psi_grid, std::span<const double> p_cov, double psi_horizon);

struct WalkerCompareRow {
  double altitude_km = 0.0;
  GridOptimum random_analytic;
  GridOptimum delta_empirical;
  GridOptimum star_empirical;
};

struct WalkerCompareOptions {
  double delta_inclination_rad = 0.0;
  double star_inclination_rad = 0.0;
  std::size_t realizations = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

// Beamwidth optimum of the random constellation (analytic) against empirical
// Walker-delta and Walker-star optima on the same psi grid, per altitude.
std::vector<WalkerCompareRow> walker_compare(const Scenario& base, std::span<const double> h_grid_km,
                                             std::span<const double> psi_grid_rad, const WalkerCompareOptions& opts);

}  // namespace leocov::cli
