#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "leocov/analytic.hpp"
#include "leocov/constellation.hpp"
#include "leocov/rng.hpp"
#include "leocov/scenario.hpp"

namespace leocov {

struct SphericalCap {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  double half_angle = 0.0;

  // Area on the sphere of the given radius (same length unit squared).
  double area(double radius) const;
};

// One frozen realisation: satellites at radius R+h, users at radius R (km).
struct Snapshot {
  std::vector<Eigen::Vector3d> sat_positions;
  std::vector<Eigen::Vector3d> user_positions;
  std::size_t target_index = 0;
};

struct SnapshotRecord {
  std::uint64_t realization = 0;
  bool served = false;
  double sinr_db = 0.0;
  double varphi_o = 0.0;       // contact angle of the target user
  double interference_w = 0.0; // aggregate interference at the serving satellite
  std::size_t interferer_count = 0;
  std::size_t serving_index = 0;
};

// Target user first, then K ~ Poisson(density * area) users uniform on `region`.
std::vector<Eigen::Vector3d> realize_users(double density_active_per_km2, const SphericalCap& region,
                                           const Eigen::Vector3d& target, RngStream& rng,
                                           const EarthModel& earth = {});

// Satellite with the smallest Earth-centred angle to `user`; ties go to the lowest index.
std::size_t nearest_satellite(std::span<const Eigen::Vector3d> sats, const Eigen::Vector3d& user);

// Associates the target with its nearest satellite and evaluates its SINR against
// every other user inside that satellite's footprint.
SnapshotRecord evaluate_snapshot(const Snapshot& snap, const Scenario& scn, RngStream& rng);

// Draws constellation, target user (latitude-filtered for Walker kinds) and the
// interferers on the nearest satellite's footprint.
Snapshot realize_snapshot(const Scenario& scn, RngStream& rng);

struct SimulationOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Realisation k uses derive_stream(seed, k). Records come back in realisation order.
std::vector<SnapshotRecord> simulate_snapshots(const Scenario& scn, std::size_t n_realizations, std::uint64_t seed,
                                               const SimulationOptions& opts = {});

CoverageResult summarize(std::span<const SnapshotRecord> records, double target_sinr_db);

CoverageResult empirical_coverage(const Scenario& scn, std::size_t n_realizations, std::uint64_t seed,
                                  const SimulationOptions& opts = {});

// Empirical coverage for every psi in `psi_grid` from shared realisations: users are
// drawn once on the widest footprint and each psi counts the subset inside its own.
// For Walker kinds the latitude filter conditions each psi's statistic.
std::vector<CoverageResult> empirical_beamwidth_sweep(const Scenario& scn, std::span<const double> psi_grid,
                                                      std::size_t n_realizations, std::uint64_t seed,
                                                      const SimulationOptions& opts = {});

// Runs body(k) for k in [0, n) over `threads` workers in contiguous blocks.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace leocov
