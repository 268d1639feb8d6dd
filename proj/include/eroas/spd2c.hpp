#pragma once

#include <optional>
#include <vector>

#include "eroas/sonar.hpp"

namespace eroas {

// Sonar-profile-guided decision policy: gap finding, boundedness,
// convexity, vertical pivot search, in that order. All angles follow the
// scan convention: beam 1 is leftmost, positive yaw rate turns left.
struct Spd2cConfig {
  double intensity_threshold = 15.0;  // I_thr
  int gap_length = 150;               // L_h, consecutive free beams
  int pivot_group_length = 30;        // L_v, consecutive accepted pivots
  int central_min = 100;              // central sector [min, max], inclusive
  int central_max = 400;
  double convexity_threshold = 0.02;  // C_th, 1/m
  double k_v = 0.35;                  // m/(s*rad)
  double k_t = 0.12;                  // 1/s
  double psi_max = M_PI / 2.0;        // = theta_FLS
  // Leftward (positive-yaw) turn used when no vertical gap exists either.
  double fallback_turn_rate = 0.12 * M_PI / 4.0;
  // Hysteresis of the vertical maneuver: re-sweep cadence while climbing
  // blind, and the exits back to horizontal mode.
  int resweep_period_cycles = 8;
  double vertical_exit_xy_clearance = 4.0;  // m, planar distance to memory
  double goal_depth_band = 1.0;             // m
  // Minimum pitch magnitude held while still planar-engaged with the
  // blockage; without it the goal elevation pulls the vehicle back under
  // the crest and it hovers there.
  double crossing_climb_angle = M_PI / 9.0;
  // Stay with the previously chosen gap unless a new one is closer to the
  // target by more than this many beams; two gaps straddling the target
  // otherwise alternate every cycle and the yaw command chatters.
  int gap_switch_hysteresis = 60;
};

enum class ObstacleExtent { BO, LUBO, RUBO, UBO };

enum class ManeuverMode { Horizontal, Vertical, FallbackTurn };

struct Decision {
  ManeuverMode mode = ManeuverMode::Horizontal;
  Vec3 v_ref{0.0, 0.0, 0.0};  // body frame; v_y is always 0
  double r_ref = 0.0;
  std::optional<int> selected_beam;     // b_cl, Horizontal mode
  std::optional<double> selected_pivot;  // Theta_cl, Vertical mode
  bool pivot_requested = false;
};

// Carried across control cycles by the episode loop; decide() is a pure
// function of (inputs, state) and returns the successor state through it.
struct PolicyState {
  bool vertical_active = false;
  double theta_cl = 0.0;
  int cycles_since_sweep = 0;
  std::optional<int> last_beam;  // previous horizontal selection
};

struct GapCandidate {
  int start;  // first beam index of the window
  int mid;    // b_M = start + floor(L/2)
};

// Beams with intensity strictly below I_thr, ascending 1-based indices.
std::vector<int> free_beams(const SonarScan& scan, double I_thr);

// All windows of gap_length consecutive beam indices fully contained in the
// free set. free_set must be sorted ascending.
std::vector<GapCandidate> find_gaps(const std::vector<int>& free_set,
                                    int gap_length, int n_beams);

// Beam index of the goal direction, clamped into [1, n_beams] for goals
// outside the FOV.
int target_beam(const Vec3& goal, const VehicleState& pose,
                const SonarConfig& sonar);

// Mid-beam minimizing |b_M - b_T|; ties break toward the smaller index.
int select_gap(const std::vector<int>& mid_beams, int b_target);

// Extent of a nonempty obstacle beam set within the FOV.
ObstacleExtent classify_extent(const std::vector<int>& obstacle_set,
                               int n_beams);

struct ConvexityResult {
  bool convex = false;
  double a = 0.0, b = 0.0, c = 0.0;  // f(x) = a x^2 + b x + c
  bool degenerate = false;           // < 3 points or rank-deficient fit
};

// Least-squares quadratic over points given as (lateral, forward)
// coordinates in the vehicle heading frame. Convex iff a >= C_th (the
// comparison absorbs fit rounding, so the boundary is inclusive);
// degenerate fits classify as concave (conservative: triggers the pivot).
ConvexityResult convexity(const std::vector<Vec2>& points, double c_th);

// (lateral, forward) heading-frame coordinates of world XY points.
std::vector<Vec2> to_heading_frame(const std::vector<Vec3>& points,
                                   const VehicleState& pose);

// Goal elevation clamped to the sweep's angle range. Zero horizontal
// distance degenerates to the sign of the vertical offset times the
// extreme sweep angle.
double goal_elevation(const Vec3& goal, const VehicleState& pose,
                      const PivotSweep& sweep);

// Accepted pivots are those whose entire central sector is free. Windows of
// pivot_group_length consecutive accepted angles yield midpoint candidates;
// the one closest to theta_target wins (ties toward the lower angle).
std::optional<double> evaluate_pivot_sweep(
    const std::vector<SonarScan>& scans, const Spd2cConfig& cfg,
    double theta_target);

// psi_R = pi/2 - (K_r * b + pi/4) with K_r = fov_h/n_beams; positive means
// turn left (toward beam 1).
double heading_from_beam(int beam, const SonarConfig& sonar);

struct ReferenceCommands {
  Vec3 v{0.0, 0.0, 0.0};
  double r = 0.0;
};

// v_x = K_v (psi_max - |psi_R|), v_z = v_x tan(theta_cl), r = K_t psi_R.
ReferenceCommands reference_commands(double psi_r, double theta_cl,
                                     const Spd2cConfig& cfg);

// Full sequential policy. pivot_scans carries the sweep performed after a
// pivot request on the previous cycle (null otherwise); xy_clearance is the
// planar distance to the nearest remembered obstacle point, used only by
// the vertical-mode exit hysteresis.
Decision decide(const SonarScan& scan,
                const std::vector<SonarScan>* pivot_scans,
                const VehicleState& pose, const Vec3& goal,
                const Spd2cConfig& cfg, const PivotSweep& sweep,
                PolicyState& state,
                std::optional<double> xy_clearance = std::nullopt);

}  // namespace eroas
