#include "eroas/spd2c.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eroas {
namespace {

Decision horizontal_decision(int b_cl, const SonarConfig& sonar,
                             const Spd2cConfig& cfg) {
  const double psi_r = heading_from_beam(b_cl, sonar);
  const ReferenceCommands refs = reference_commands(psi_r, 0.0, cfg);
  Decision d;
  d.mode = ManeuverMode::Horizontal;
  d.v_ref = refs.v;
  d.r_ref = refs.r;
  d.selected_beam = b_cl;
  return d;
}

Decision vertical_decision(double theta_cl, const Spd2cConfig& cfg) {
  const ReferenceCommands refs = reference_commands(0.0, theta_cl, cfg);
  Decision d;
  d.mode = ManeuverMode::Vertical;
  d.v_ref = refs.v;
  d.r_ref = refs.r;
  d.selected_pivot = theta_cl;
  return d;
}

Decision fallback_decision(const Spd2cConfig& cfg, bool request_pivot) {
  Decision d;
  d.mode = ManeuverMode::FallbackTurn;
  d.r_ref = request_pivot ? 0.0 : cfg.fallback_turn_rate;
  d.pivot_requested = request_pivot;
  return d;
}

bool central_sector_clear(const SonarScan& scan, const Spd2cConfig& cfg) {
  for (int i = cfg.central_min; i <= cfg.central_max; ++i)
    if (scan.intensity(i) >= cfg.intensity_threshold) return false;
  return true;
}

int goal_side_edge(int b_target, int n_beams) {
  return b_target <= n_beams / 2 ? 1 : n_beams;
}

}  // namespace

std::vector<int> free_beams(const SonarScan& scan, double I_thr) {
  std::vector<int> free;
  for (int i = 1; i <= scan.config.n_beams; ++i)
    if (scan.intensity(i) < I_thr) free.push_back(i);
  return free;
}

std::vector<GapCandidate> find_gaps(const std::vector<int>& free_set,
                                    int gap_length, int n_beams) {
  std::vector<bool> is_free(n_beams + 1, false);
  for (int i : free_set)
    if (i >= 1 && i <= n_beams) is_free[i] = true;
  std::vector<GapCandidate> gaps;
  int run = 0;
  for (int i = 1; i <= n_beams; ++i) {
    run = is_free[i] ? run + 1 : 0;
    if (run >= gap_length) {
      const int start = i - gap_length + 1;
      gaps.push_back({start, start + gap_length / 2});
    }
  }
  return gaps;
}

int target_beam(const Vec3& goal, const VehicleState& pose,
                const SonarConfig& sonar) {
  const Vec2 delta = goal.head<2>() - pose.position.head<2>();
  if (delta.norm() < 1e-12) return sonar.n_beams / 2;  // directly overhead
  const double rel =
      wrap_angle(std::atan2(delta.y(), delta.x()) - pose.heading);
  if (rel > 0.5 * sonar.fov_h) return 1;               // left of the FOV
  if (rel < -0.5 * sonar.fov_h) return sonar.n_beams;  // right of the FOV
  const int idx = static_cast<int>(
      std::floor((0.5 * sonar.fov_h - rel) / sonar.beam_spacing()));
  return std::clamp(idx, 1, sonar.n_beams);
}

int select_gap(const std::vector<int>& mid_beams, int b_target) {
  if (mid_beams.empty()) throw std::invalid_argument("empty mid-beam set");
  int best = mid_beams.front();
  for (int m : mid_beams)
    if (std::abs(m - b_target) < std::abs(best - b_target) ||
        (std::abs(m - b_target) == std::abs(best - b_target) && m < best))
      best = m;
  return best;
}

ObstacleExtent classify_extent(const std::vector<int>& obstacle_set,
                               int n_beams) {
  if (obstacle_set.empty())
    throw std::invalid_argument("empty obstacle set");
  const auto [lo, hi] =
      std::minmax_element(obstacle_set.begin(), obstacle_set.end());
  const bool left = *lo == 1;
  const bool right = *hi == n_beams;
  if (left && right) return ObstacleExtent::UBO;
  if (left) return ObstacleExtent::LUBO;
  if (right) return ObstacleExtent::RUBO;
  return ObstacleExtent::BO;
}

ConvexityResult convexity(const std::vector<Vec2>& points, double c_th) {
  ConvexityResult res;
  if (points.size() < 3) {
    res.degenerate = true;
    return res;
  }
  Eigen::MatrixXd design(points.size(), 3);
  Eigen::VectorXd rhs(points.size());
  for (Eigen::Index i = 0; i < design.rows(); ++i) {
    const double x = points[i].x();
    design(i, 0) = x * x;
    design(i, 1) = x;
    design(i, 2) = 1.0;
    rhs(i) = points[i].y();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) {
    res.degenerate = true;
    return res;
  }
  const Eigen::Vector3d coeff = qr.solve(rhs);
  res.a = coeff(0);
  res.b = coeff(1);
  res.c = coeff(2);
  // Inclusive threshold with an allowance for least-squares rounding: a
  // surface generated with a = C_th exactly must classify as convex.
  res.convex = res.a >= c_th - 1e-9;
  return res;
}

std::vector<Vec2> to_heading_frame(const std::vector<Vec3>& points,
                                   const VehicleState& pose) {
  const double c = std::cos(pose.heading), s = std::sin(pose.heading);
  std::vector<Vec2> out;
  out.reserve(points.size());
  for (const Vec3& p : points) {
    const Vec2 d = p.head<2>() - pose.position.head<2>();
    // lateral (left positive), forward
    out.emplace_back(-s * d.x() + c * d.y(), c * d.x() + s * d.y());
  }
  return out;
}

double goal_elevation(const Vec3& goal, const VehicleState& pose,
                      const PivotSweep& sweep) {
  if (sweep.angles.empty()) throw std::invalid_argument("empty sweep");
  const double lo = sweep.angles.front(), hi = sweep.angles.back();
  const double dz = goal.z() - pose.position.z();
  const double horiz = (goal.head<2>() - pose.position.head<2>()).norm();
  if (horiz < 1e-12) return dz >= 0.0 ? hi : -hi;
  return std::clamp(std::atan2(dz, horiz), lo, hi);
}

std::optional<double> evaluate_pivot_sweep(
    const std::vector<SonarScan>& scans, const Spd2cConfig& cfg,
    double theta_target) {
  const int n = static_cast<int>(scans.size());
  const int L = cfg.pivot_group_length;
  std::vector<bool> accepted(n);
  for (int i = 0; i < n; ++i)
    accepted[i] = central_sector_clear(scans[i], cfg);

  std::optional<double> best;
  int run = 0;
  for (int i = 0; i < n; ++i) {
    run = accepted[i] ? run + 1 : 0;
    if (run < L) continue;
    const double mid =
        0.5 * (scans[i - L + 1].pivot_angle + scans[i].pivot_angle);
    if (!best || std::abs(mid - theta_target) <
                     std::abs(*best - theta_target))
      best = mid;  // ascending order makes ties keep the lower angle
  }
  return best;
}

double heading_from_beam(int beam, const SonarConfig& sonar) {
  return 0.5 * sonar.fov_h - beam * sonar.beam_spacing();
}

ReferenceCommands reference_commands(double psi_r, double theta_cl,
                                     const Spd2cConfig& cfg) {
  ReferenceCommands refs;
  const double v_x = cfg.k_v * (cfg.psi_max - std::abs(psi_r));
  refs.v = Vec3(v_x, 0.0, v_x * std::tan(theta_cl));
  refs.r = cfg.k_t * psi_r;
  return refs;
}

Decision decide(const SonarScan& scan,
                const std::vector<SonarScan>* pivot_scans,
                const VehicleState& pose, const Vec3& goal,
                const Spd2cConfig& cfg, const PivotSweep& sweep,
                PolicyState& state, std::optional<double> xy_clearance) {
  const int n_beams = scan.config.n_beams;
  const double theta_target = goal_elevation(goal, pose, sweep);
  const bool central_clear = central_sector_clear(scan, cfg);

  if (state.vertical_active) {
    const bool depth_ok =
        std::abs(goal.z() - pose.position.z()) <= cfg.goal_depth_band;
    const bool xy_ok =
        !xy_clearance || *xy_clearance > cfg.vertical_exit_xy_clearance;
    if (central_clear && depth_ok && xy_ok) {
      state.vertical_active = false;  // resume the horizontal policy below
    } else if (central_clear) {
      // Passing over the blockage: track the goal elevation while the
      // XZ-plane safety filter holds the clearance to the crest. Until
      // the planar clearance opens up the pitch keeps a floor in the
      // direction the sweep chose, otherwise the goal pulls the vehicle
      // back under the crest.
      double theta = theta_target;
      if (xy_clearance && *xy_clearance <= cfg.vertical_exit_xy_clearance) {
        theta = state.theta_cl >= 0.0
                    ? std::max(theta, cfg.crossing_climb_angle)
                    : std::min(theta, -cfg.crossing_climb_angle);
      }
      state.theta_cl = theta;
      return vertical_decision(state.theta_cl, cfg);
    } else {
      ++state.cycles_since_sweep;
      if (pivot_scans) {
        if (auto theta = evaluate_pivot_sweep(*pivot_scans, cfg,
                                              theta_target)) {
          state.theta_cl = *theta;
          state.cycles_since_sweep = 0;
          return vertical_decision(state.theta_cl, cfg);
        }
        state.vertical_active = false;
        return fallback_decision(cfg, false);
      }
      Decision d = vertical_decision(state.theta_cl, cfg);
      if (state.cycles_since_sweep >= cfg.resweep_period_cycles) {
        d.pivot_requested = true;
        state.cycles_since_sweep = 0;
      }
      return d;
    }
  }

  // 1. Gap finding.
  const std::vector<int> free = free_beams(scan, cfg.intensity_threshold);
  const auto gaps = find_gaps(free, cfg.gap_length, n_beams);
  const int b_target = target_beam(goal, pose, scan.config);
  if (!gaps.empty()) {
    std::vector<int> mids;
    mids.reserve(gaps.size());
    for (const auto& g : gaps) mids.push_back(g.mid);
    int choice = select_gap(mids, b_target);
    if (state.last_beam) {
      const int sticky = select_gap(mids, *state.last_beam);
      if (std::abs(sticky - b_target) <=
          std::abs(choice - b_target) + cfg.gap_switch_hysteresis)
        choice = sticky;
    }
    state.last_beam = choice;
    return horizontal_decision(choice, scan.config, cfg);
  }

  // 2. Boundedness of the obstacle set.
  std::vector<int> obstacle_set;
  for (int i = 1; i <= n_beams; ++i)
    if (scan.intensity(i) >= cfg.intensity_threshold)
      obstacle_set.push_back(i);
  if (obstacle_set.empty())  // unreachable when gap_length <= n_beams
    return horizontal_decision(b_target, scan.config, cfg);

  const auto steer_to = [&](int beam) {
    state.last_beam = beam;
    return horizontal_decision(beam, scan.config, cfg);
  };
  // Once committed to passing on one side, stay there; the goal side flips
  // every cycle when the goal sits near the FOV center.
  const auto sticky_edge = [&] {
    if (state.last_beam &&
        (*state.last_beam == 1 || *state.last_beam == n_beams))
      return *state.last_beam;
    return goal_side_edge(b_target, n_beams);
  };
  switch (classify_extent(obstacle_set, n_beams)) {
    case ObstacleExtent::BO:
      return steer_to(sticky_edge());
    case ObstacleExtent::LUBO:  // obstacle unbounded to the left: turn right
      return steer_to(n_beams);
    case ObstacleExtent::RUBO:  // turn left
      return steer_to(1);
    case ObstacleExtent::UBO:
      break;
  }

  // 3. Convexity of the fully-blocking profile.
  const auto fit =
      convexity(to_heading_frame(project_points(scan), pose),
                cfg.convexity_threshold);
  if (fit.convex && !fit.degenerate) return steer_to(sticky_edge());

  // 4. Concave wall: go vertical.
  state.last_beam.reset();
  if (!pivot_scans) return fallback_decision(cfg, /*request_pivot=*/true);
  if (auto theta = evaluate_pivot_sweep(*pivot_scans, cfg, theta_target)) {
    state.vertical_active = true;
    state.theta_cl = *theta;
    state.cycles_since_sweep = 0;
    return vertical_decision(state.theta_cl, cfg);
  }
  return fallback_decision(cfg, false);
}

}  // namespace eroas
