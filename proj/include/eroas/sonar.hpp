#pragma once

#include <random>
#include <vector>

#include "eroas/geometry.hpp"
#include "eroas/vehicle.hpp"

namespace eroas {

// BlueView-P900-class forward looking sonar: a fan of n_beams rays across
// fov_h, mechanically pivoted in elevation. Intensities are binary
// hit/miss; the policy only ever thresholds them.
struct SonarConfig {
  int n_beams = 512;
  double fov_h = M_PI / 2.0;
  double r_min = 2.0;
  double r_max = 60.0;
  double vertical_beamwidth = 20.0 * M_PI / 180.0;
  double intensity_hit = 100.0;
  double intensity_miss = 0.0;
  double intensity_threshold = 15.0;  // I_thr
  int elevation_subrays = 1;
  double noise_amplitude = 0.0;  // uniform +-amp added to intensities

  double beam_spacing() const { return fov_h / n_beams; }
  // World-frame azimuth of beam i (1-indexed). Beam 1 is the leftmost beam
  // of the fan (heading + fov_h/2); indices increase to the right.
  double beam_azimuth(int i, double heading) const {
    return heading + 0.5 * fov_h - (i - 0.5) * beam_spacing();
  }
};

struct SonarScan {
  double pivot_angle = 0.0;  // elevation of the fan, rad from horizontal
  std::vector<double> ranges;       // NaN for misses, 1-indexed via range()
  std::vector<double> intensities;
  VehicleState pose_at_scan;
  SonarConfig config;

  bool hit(int beam) const { return std::isfinite(ranges[beam - 1]); }
  double range(int beam) const { return ranges[beam - 1]; }
  double intensity(int beam) const { return intensities[beam - 1]; }
};

// Ordered pivot angles for a vertical sweep; must be strictly increasing
// and contain 0.
struct PivotSweep {
  std::vector<double> angles;
  // Integer degrees -45..+45 (91 angles).
  static PivotSweep default_sweep();
};

// Casts one ray per beam (or a sub-ray fan across the vertical beamwidth
// when elevation_subrays > 1, reporting the minimum hit range).
// Deterministic unless noise_amplitude > 0 and an rng is supplied; noise
// must stay below the threshold margins so it never flips a classification.
SonarScan scan(const World& world, const VehicleState& pose,
               double pivot_angle, const SonarConfig& cfg,
               std::mt19937* noise_rng = nullptr);

// World-frame 3D points of the hit beams, from the scan's pose snapshot:
//   x = x_v + R cos(theta_h) cos(pivot), y = y_v + R sin(theta_h) cos(pivot),
//   z = z_v + R sin(pivot).
std::vector<Vec3> project_points(const SonarScan& scan);

// One scan per sweep angle with the pose held fixed.
std::vector<SonarScan> pivot_sweep(const World& world,
                                   const VehicleState& pose,
                                   const PivotSweep& sweep,
                                   const SonarConfig& cfg,
                                   std::mt19937* noise_rng = nullptr);

}  // namespace eroas
