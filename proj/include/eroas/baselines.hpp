#pragma once

#include "eroas/geometry.hpp"
#include "eroas/sonar.hpp"
#include "eroas/spd2c.hpp"

namespace eroas {

// Memoryless planar baselines. APF is given the true obstacle map; DWA
// plans on the instantaneous scan only.

struct ApfConfig {
  double k_att = 0.2;        // 1/s
  double k_rep = 300.0;      // m^2/s
  double influence = 15.0;   // d_0, m
  double speed_cap = 1.0;    // m/s
  double yaw_gain = 16.0;     // 1/s, heading-error to yaw-rate
  double att_saturation = 5.0;   // m, attractive gradient saturates beyond
  double stall_force = 0.05;     // resultant below this scales speed down
  // Forward creep kept even when the force points backward; without it the
  // vehicle freezes at the first force balance and never exposes the
  // oscillatory failure mode.
  double min_speed_fraction = 0.6;
};

struct DwaConfig {
  int v_samples = 5;
  int r_samples = 15;
  double horizon = 4.0;      // s
  double sim_dt = 0.4;       // s, rollout step
  double heading_weight = 1.0;
  double clearance_weight = 0.2;
  double speed_weight = 0.7;
  double safety_radius = 3.4;   // m, rollout collision radius
  double clearance_cap = 8.0;   // m
  // Preference for staying near the current yaw rate. Without it the best
  // left and right arcs alternate every cycle in front of a blockage.
  double smoothness_weight = 0.4;
};

// Gradient of a quadratic attractive potential plus an inverse repulsion
// along the true distance field, mapped to forward speed and yaw rate. A
// near-zero resultant stalls the vehicle (the classic local-minimum
// failure).
ReferenceCommands apf_step(const World& world, const VehicleState& pose,
                           const Vec3& goal, const ApfConfig& cfg);

// Samples (v_x, r) pairs within the limits, forward-simulates each over the
// horizon, discards colliding rollouts and maximizes the weighted
// heading/clearance/speed score. All-colliding falls back to a
// rotate-in-place turn.
ReferenceCommands dwa_step(const SonarScan& scan, const VehicleState& pose,
                           const Vec3& goal, const DwaConfig& cfg,
                           const VehicleLimits& limits);

}  // namespace eroas
