#include "leocov/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "leocov/channel.hpp"
#include "leocov/errors.hpp"
#include "leocov/geometry.hpp"
#include "leocov/stats.hpp"
#include "leocov/units.hpp"

namespace leocov {
namespace {

std::size_t poisson_count(RngStream& rng, double mean) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<std::int64_t> count(mean);
  return static_cast<std::size_t>(count(rng));
}

Eigen::Vector3d uniform_sphere_point(RngStream& rng) {
  static const CapSampler sphere(Eigen::Vector3d::UnitZ(), kPi);
  return sphere(rng);
}

struct LinkTerms {
  double alpha;
  double varphi_max;
  double tx_w;
  double noise_w;
  double kappa;
};

LinkTerms link_terms(const Scenario& scn) {
  const GeometryContext g = scn.geometry();
  return {g.alpha, g.varphi_max, scn.budget.transmit_gain_w(), scn.budget.noise_w(), scn.budget.kappa};
}

double received_power(const Scenario& scn, const LinkTerms& t, double varphi, double zeta) {
  return t.tx_w * path_gain(varphi, scn.constellation.altitude_km, scn.earth, scn.budget.freq_hz) * zeta;
}

}  // namespace

double SphericalCap::area(double radius) const {
  const double s = std::sin(half_angle / 2.0);
  return 2.0 * kPi * radius * radius * 2.0 * s * s;
}

std::vector<Eigen::Vector3d> realize_users(double density_active_per_km2, const SphericalCap& region,
                                           const Eigen::Vector3d& target, RngStream& rng, const EarthModel& earth) {
  if (!(density_active_per_km2 >= 0.0)) throw DomainError("user density must be nonnegative");
  const double radius = earth.radius_km;
  const std::size_t k = poisson_count(rng, density_active_per_km2 * region.area(radius));
  std::vector<Eigen::Vector3d> users;
  users.reserve(k + 1);
  users.push_back(radius * target.normalized());
  const CapSampler cap(region.axis, region.half_angle);
  for (std::size_t i = 0; i < k; ++i) users.push_back(radius * cap(rng));
  return users;
}

std::size_t nearest_satellite(std::span<const Eigen::Vector3d> sats, const Eigen::Vector3d& user) {
  if (sats.empty()) throw DomainError("no satellites to associate with");
  const Eigen::Vector3d u = user.normalized();
  std::size_t best = 0;
  double best_cos = -2.0;
  for (std::size_t i = 0; i < sats.size(); ++i) {
    // Equal radii, so the largest cosine is the smallest central angle.
    const double c = u.dot(sats[i]) / sats[i].norm();
    if (c > best_cos) {
      best_cos = c;
      best = i;
    }
  }
  return best;
}

SnapshotRecord evaluate_snapshot(const Snapshot& snap, const Scenario& scn, RngStream& rng) {
  if (snap.target_index >= snap.user_positions.size()) throw DomainError("snapshot has no target user");
  const LinkTerms t = link_terms(scn);
  const Eigen::Vector3d& target = snap.user_positions[snap.target_index];

  SnapshotRecord rec;
  rec.serving_index = nearest_satellite(snap.sat_positions, target);
  const Eigen::Vector3d& sat = snap.sat_positions[rec.serving_index];
  rec.varphi_o = central_angle(target, sat);
  rec.served = rec.varphi_o <= t.varphi_max;

  double interference = 0.0;
  for (std::size_t j = 0; j < snap.user_positions.size(); ++j) {
    if (j == snap.target_index) continue;
    const double phi = central_angle(snap.user_positions[j], sat);
    if (phi > t.varphi_max) continue;
    const double zeta = excess_gain_sample(rng, phi, scn.channel, t.alpha);
    interference += t.kappa * received_power(scn, t, phi, zeta);
    ++rec.interferer_count;
  }
  rec.interference_w = interference;

  const double zeta0 = excess_gain_sample(rng, rec.varphi_o, scn.channel, t.alpha);
  const double signal = received_power(scn, t, rec.varphi_o, zeta0);
  rec.sinr_db = linear_to_db(signal / (interference + t.noise_w));
  return rec;
}

Snapshot realize_snapshot(const Scenario& scn, RngStream& rng) {
  const LinkTerms t = link_terms(scn);
  Snapshot snap;
  snap.sat_positions = realize_constellation(scn.constellation, rng, scn.earth);

  Eigen::Vector3d target = uniform_sphere_point(rng);
  if (scn.constellation.is_walker()) {
    while (!latitude_filter(target, scn.constellation, t.varphi_max)) target = uniform_sphere_point(rng);
  }
  const std::size_t serving = nearest_satellite(snap.sat_positions, target);
  const SphericalCap footprint{snap.sat_positions[serving].normalized(), t.varphi_max};
  snap.user_positions = realize_users(scn.duty_cycle * scn.user_density_per_km2, footprint, target, rng, scn.earth);
  snap.target_index = 0;
  return snap;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) body(k);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t k = begin; k < end; ++k) body(k);
      } catch (...) {
        std::scoped_lock lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::vector<SnapshotRecord> simulate_snapshots(const Scenario& scn, std::size_t n_realizations, std::uint64_t seed,
                                               const SimulationOptions& opts) {
  if (n_realizations < 1) throw DomainError("need at least one realisation");
  scn.validate();
  std::vector<SnapshotRecord> records(n_realizations);
  parallel_for(n_realizations, opts.threads, [&](std::size_t k) {
    RngStream rng = derive_stream(seed, k);
    const Snapshot snap = realize_snapshot(scn, rng);
    SnapshotRecord rec = evaluate_snapshot(snap, scn, rng);
    rec.realization = k;
    records[k] = rec;
  });
  return records;
}

CoverageResult summarize(std::span<const SnapshotRecord> records, double target_sinr_db) {
  CoverageResult out;
  out.method = CoverageMethod::empirical;
  if (records.empty()) return out;
  std::size_t covered = 0;
  double interference = 0.0;
  for (const auto& r : records) {
    if (r.served && r.sinr_db > target_sinr_db) ++covered;
    interference += r.interference_w;
  }
  const double n = static_cast<double>(records.size());
  out.p_cov = static_cast<double>(covered) / n;
  out.ci_halfwidth = proportion_ci_halfwidth(out.p_cov, records.size());
  out.mean_interference = interference / n;
  return out;
}

CoverageResult empirical_coverage(const Scenario& scn, std::size_t n_realizations, std::uint64_t seed,
                                  const SimulationOptions& opts) {
  const auto records = simulate_snapshots(scn, n_realizations, seed, opts);
  return summarize(records, scn.budget.target_sinr_db);
}

std::vector<CoverageResult> empirical_beamwidth_sweep(const Scenario& scn, std::span<const double> psi_grid,
                                                      std::size_t n_realizations, std::uint64_t seed,
                                                      const SimulationOptions& opts) {
  if (n_realizations < 1) throw DomainError("need at least one realisation");
  require_increasing_grid(psi_grid);
  scn.validate();

  const LinkTerms t = link_terms(scn);
  const std::size_t m = psi_grid.size();
  std::vector<double> footprint(m);
  for (std::size_t i = 0; i < m; ++i) footprint[i] = max_zenith_angle(psi_grid[i], t.alpha);
  const double widest = *std::max_element(footprint.begin(), footprint.end());
  const double density = scn.duty_cycle * scn.user_density_per_km2;
  const double widest_area = SphericalCap{Eigen::Vector3d::UnitZ(), widest}.area(scn.earth.radius_km);
  const double target_sinr = scn.budget.target_sinr();

  // Per-realisation rows so the floating-point reduction runs in a fixed order.
  std::vector<unsigned char> covered(n_realizations * m, 0);
  std::vector<unsigned char> eligible(n_realizations * m, 0);
  std::vector<double> interference(n_realizations * m, 0.0);

  parallel_for(n_realizations, opts.threads, [&](std::size_t k) {
    RngStream rng = derive_stream(seed, k);
    const auto sats = realize_constellation(scn.constellation, rng, scn.earth);
    const Eigen::Vector3d target = uniform_sphere_point(rng);
    const std::size_t serving = nearest_satellite(sats, target);
    const double varphi_o = central_angle(target, sats[serving]);

    const std::size_t n_users = poisson_count(rng, density * widest_area);
    std::vector<std::pair<double, double>> users(n_users);
    for (auto& [phi, power] : users) {
      phi = sample_cap_angle(rng, widest);
      const double zeta = excess_gain_sample(rng, phi, scn.channel, t.alpha);
      power = t.kappa * received_power(scn, t, phi, zeta);
    }
    std::sort(users.begin(), users.end());
    std::vector<double> prefix(n_users + 1, 0.0);
    for (std::size_t j = 0; j < n_users; ++j) prefix[j + 1] = prefix[j] + users[j].second;

    const double zeta0 = excess_gain_sample(rng, varphi_o, scn.channel, t.alpha);
    const double signal = received_power(scn, t, varphi_o, zeta0);

    for (std::size_t i = 0; i < m; ++i) {
      const auto inside = std::upper_bound(users.begin(), users.end(), std::pair{footprint[i], HUGE_VAL});
      const double agg = prefix[static_cast<std::size_t>(inside - users.begin())];
      const bool ok = !scn.constellation.is_walker() || latitude_filter(target, scn.constellation, footprint[i]);
      const std::size_t cell = k * m + i;
      interference[cell] = agg;
      eligible[cell] = ok;
      covered[cell] = ok && varphi_o <= footprint[i] && signal / (agg + t.noise_w) > target_sinr;
    }
  });

  std::vector<CoverageResult> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t hits = 0;
    std::size_t trials = 0;
    double sum_i = 0.0;
    for (std::size_t k = 0; k < n_realizations; ++k) {
      const std::size_t cell = k * m + i;
      hits += covered[cell];
      trials += eligible[cell];
      sum_i += interference[cell];
    }
    auto& r = out[i];
    r.method = CoverageMethod::empirical;
    r.p_cov = trials > 0 ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
    r.ci_halfwidth = proportion_ci_halfwidth(r.p_cov, trials);
    r.mean_interference = sum_i / static_cast<double>(n_realizations);
  }
  return out;
}

}  // namespace leocov
