#pragma once

#include <optional>

#include "eroas/scg.hpp"
#include "eroas/vehicle.hpp"

namespace eroas {

struct CbfConfig {
  double obstacle_radius = 3.0;  // R_o, conservative obstacle radius
  double gain = 0.5;             // k of the linear class-K alpha(h) = k h
};

enum class ActivePlane { XY, XZ, None };

struct SafeReference {
  Vec3 v{0.0, 0.0, 0.0};  // body frame
  ActivePlane plane = ActivePlane::None;
  bool constraint_active = false;
  double h = 0.0;          // barrier value, m^2 (+inf with no context)
  double deviation = 0.0;  // planar ||u - u_R||
};

// h = ||p_v - p_o||^2 - R_o^2 in the active plane's 2D projection.
double barrier(const Vec2& p_v, const Vec2& p_o, double obstacle_radius);

// Minimal perturbation of the planar reference velocity subject to
// g . u >= -k h with g = 2(q_v - q_o), solved in closed form:
//   u = u_R                                    if g . u_R >= -k h
//   u = u_R + ((-k h - g . u_R)/||g||^2) g     otherwise.
// The QP lives on world-frame planar velocities; body references are
// rotated by the heading into the plane and back. The out-of-plane
// component passes through untouched. A zero gradient (vehicle at the
// obstacle point) commands zero planar velocity.
SafeReference filter(const Vec3& v_ref_body, const VehicleState& state,
                     const std::optional<ContextOutput>& ctx,
                     const CbfConfig& cfg);

double clip_yaw(double r_ref, double r_max);

}  // namespace eroas
