#include "eroas/sonar.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace eroas {

PivotSweep PivotSweep::default_sweep() {
  PivotSweep sweep;
  for (int deg = -45; deg <= 45; ++deg)
    sweep.angles.push_back(deg * M_PI / 180.0);
  return sweep;
}

SonarScan scan(const World& world, const VehicleState& pose,
               double pivot_angle, const SonarConfig& cfg,
               std::mt19937* noise_rng) {
  if (cfg.n_beams < 2 || !(cfg.r_min < cfg.r_max) ||
      !(cfg.fov_h > 0.0 && cfg.fov_h <= M_PI))
    throw std::invalid_argument("bad sonar config");
  if (!(cfg.intensity_miss < cfg.intensity_threshold &&
        cfg.intensity_threshold <= cfg.intensity_hit))
    throw std::invalid_argument("bad intensity thresholds");
  if (std::abs(pivot_angle) > M_PI / 2.0 + 1e-12)
    throw std::invalid_argument("pivot angle out of range");
  if (cfg.noise_amplitude > 0.0) {
    // Noise may perturb intensities but never flip hit/miss classification.
    if (cfg.noise_amplitude >= cfg.intensity_threshold - cfg.intensity_miss ||
        cfg.noise_amplitude > cfg.intensity_hit - cfg.intensity_threshold)
      throw std::invalid_argument("noise amplitude crosses threshold");
  }

  SonarScan out;
  out.pivot_angle = pivot_angle;
  out.pose_at_scan = pose;
  out.config = cfg;
  out.ranges.assign(cfg.n_beams, std::numeric_limits<double>::quiet_NaN());
  out.intensities.assign(cfg.n_beams, cfg.intensity_miss);

  const int m = std::max(1, cfg.elevation_subrays);
  std::uniform_real_distribution<double> noise(-cfg.noise_amplitude,
                                               cfg.noise_amplitude);
  for (int i = 1; i <= cfg.n_beams; ++i) {
    const double theta_h = cfg.beam_azimuth(i, pose.heading);
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      const double elev =
          m == 1 ? pivot_angle
                 : pivot_angle +
                       cfg.vertical_beamwidth * (double(j) / (m - 1) - 0.5);
      const Vec3 dir(std::cos(theta_h) * std::cos(elev),
                     std::sin(theta_h) * std::cos(elev), std::sin(elev));
      if (auto t = ray_cast(world, pose.position, dir, cfg.r_min, cfg.r_max))
        best = std::min(best, *t);
    }
    if (std::isfinite(best)) {
      out.ranges[i - 1] = best;
      out.intensities[i - 1] = cfg.intensity_hit;
    }
    if (noise_rng && cfg.noise_amplitude > 0.0)
      out.intensities[i - 1] += noise(*noise_rng);
  }
  return out;
}

std::vector<Vec3> project_points(const SonarScan& s) {
  std::vector<Vec3> points;
  const double cp = std::cos(s.pivot_angle), sp = std::sin(s.pivot_angle);
  for (int i = 1; i <= s.config.n_beams; ++i) {
    if (!s.hit(i)) continue;
    const double r = s.range(i);
    const double theta_h =
        s.config.beam_azimuth(i, s.pose_at_scan.heading);
    points.emplace_back(
        s.pose_at_scan.position.x() + r * std::cos(theta_h) * cp,
        s.pose_at_scan.position.y() + r * std::sin(theta_h) * cp,
        s.pose_at_scan.position.z() + r * sp);
  }
  return points;
}

std::vector<SonarScan> pivot_sweep(const World& world,
                                   const VehicleState& pose,
                                   const PivotSweep& sweep,
                                   const SonarConfig& cfg,
                                   std::mt19937* noise_rng) {
  std::vector<SonarScan> scans;
  scans.reserve(sweep.angles.size());
  for (double angle : sweep.angles)
    scans.push_back(scan(world, pose, angle, cfg, noise_rng));
  return scans;
}

}  // namespace eroas
