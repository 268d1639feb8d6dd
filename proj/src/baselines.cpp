#include "eroas/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eroas {
namespace {

std::vector<Vec2> scan_points_xy(const SonarScan& scan) {
  std::vector<Vec2> pts;
  for (const Vec3& p : project_points(scan)) pts.push_back(p.head<2>());
  return pts;
}

double min_distance(const Vec2& p, const std::vector<Vec2>& obstacles,
                    double cap) {
  double best = cap;
  for (const Vec2& o : obstacles) best = std::min(best, (p - o).norm());
  return best;
}

}  // namespace

ReferenceCommands apf_step(const World& world, const VehicleState& pose,
                           const Vec3& goal, const ApfConfig& cfg) {
  const Vec2 p = pose.position.head<2>();
  Vec2 to_goal = goal.head<2>() - p;
  const double goal_dist = to_goal.norm();
  Vec2 force = Vec2::Zero();
  if (goal_dist > 1e-9) {
    const double mag = cfg.k_att * std::min(goal_dist, cfg.att_saturation);
    force += mag * (to_goal / goal_dist);
  }
  const double d = distance_to_surface(world, pose.position);
  if (d > 1e-9 && d < cfg.influence) {
    // Repulsion along the numerical gradient of the true distance field.
    const double eps = 1e-4;
    Vec2 grad;
    for (int axis = 0; axis < 2; ++axis) {
      Vec3 hi = pose.position, lo = pose.position;
      hi[axis] += eps;
      lo[axis] -= eps;
      grad[axis] = (distance_to_surface(world, hi) -
                    distance_to_surface(world, lo)) /
                   (2.0 * eps);
    }
    const double gn = grad.norm();
    if (gn > 1e-9) {
      const double mag =
          cfg.k_rep * (1.0 / d - 1.0 / cfg.influence) / (d * d);
      force += mag * (grad / gn);
    }
  }

  ReferenceCommands cmd;
  const double norm = force.norm();
  if (norm < 1e-9) return cmd;  // fully stalled
  const double err =
      wrap_angle(std::atan2(force.y(), force.x()) - pose.heading);
  cmd.r = cfg.yaw_gain * err;
  cmd.v.x() = cfg.speed_cap *
              std::max(cfg.min_speed_fraction,
                       std::cos(err) * std::min(1.0, norm / cfg.stall_force));
  return cmd;
}

ReferenceCommands dwa_step(const SonarScan& scan, const VehicleState& pose,
                           const Vec3& goal, const DwaConfig& cfg,
                           const VehicleLimits& limits) {
  const std::vector<Vec2> obstacles = scan_points_xy(scan);
  const int steps = std::max(1, static_cast<int>(
                                    std::round(cfg.horizon / cfg.sim_dt)));
  // Slow down on final approach; at full speed the minimum turn circle is
  // wider than the goal tolerance and the vehicle orbits the goal forever.
  const double goal_dist = (goal.head<2>() - pose.position.head<2>()).norm();
  const double v_cap = std::min(limits.v_x_max, 0.5 * goal_dist);
  double best_score = -std::numeric_limits<double>::infinity();
  ReferenceCommands best;
  bool feasible = false;

  for (int iv = 0; iv < cfg.v_samples; ++iv) {
    const double v = v_cap * iv / (cfg.v_samples - 1);
    for (int ir = 0; ir < cfg.r_samples; ++ir) {
      const double r =
          -limits.r_max + 2.0 * limits.r_max * ir / (cfg.r_samples - 1);
      VehicleState sim = pose;
      double clearance = cfg.clearance_cap;
      bool collides = false;
      for (int k = 0; k < steps && !collides; ++k) {
        sim = integrate(sim, Vec3(v, 0.0, 0.0), r, cfg.sim_dt);
        const double d = min_distance(sim.position.head<2>(), obstacles,
                                      cfg.clearance_cap);
        clearance = std::min(clearance, d);
        collides = d <= cfg.safety_radius;
      }
      if (collides) continue;
      // Progress toward the goal rather than final alignment; alignment
      // alone makes standing still the top-scoring rollout whenever the
      // direct line is blocked.
      const double progress =
          (goal_dist - (goal.head<2>() - sim.position.head<2>()).norm()) /
          std::max(1e-9, limits.v_x_max * cfg.horizon);
      const double score =
          cfg.heading_weight * progress +
          cfg.clearance_weight * clearance / cfg.clearance_cap +
          cfg.speed_weight * v / limits.v_x_max +
          cfg.smoothness_weight *
              (1.0 - std::abs(r - pose.yaw_rate) / (2.0 * limits.r_max));
      if (score > best_score) {  // first best wins: deterministic
        best_score = score;
        best.v = Vec3(v, 0.0, 0.0);
        best.r = r;
        feasible = true;
      }
    }
  }
  if (!feasible) {  // everything collides: rotate in place
    best.v = Vec3::Zero();
    best.r = limits.r_max;
  }
  return best;
}

}  // namespace eroas
