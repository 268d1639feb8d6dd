#include "eroas/stcbf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace eroas {
namespace {

struct PlanarSolution {
  Vec2 u;
  bool active;
  double deviation;
};

PlanarSolution solve_halfspace_qp(const Vec2& u_ref, const Vec2& g,
                                  double kh) {
  const double g2 = g.squaredNorm();
  if (g2 < 1e-18) return {Vec2::Zero(), true, u_ref.norm()};
  const double slack = g.dot(u_ref) + kh;
  if (slack >= 0.0) return {u_ref, false, 0.0};
  const Vec2 u = u_ref + (-slack / g2) * g;
  return {u, true, -slack / std::sqrt(g2)};
}

}  // namespace

double barrier(const Vec2& p_v, const Vec2& p_o, double obstacle_radius) {
  return (p_v - p_o).squaredNorm() - obstacle_radius * obstacle_radius;
}

SafeReference filter(const Vec3& v_ref_body, const VehicleState& state,
                     const std::optional<ContextOutput>& ctx,
                     const CbfConfig& cfg) {
  if (!(cfg.obstacle_radius > 0.0) || !(cfg.gain > 0.0))
    throw std::invalid_argument("bad CBF config");
  SafeReference out;
  out.v = v_ref_body;
  if (!ctx) {
    out.h = std::numeric_limits<double>::infinity();
    return out;
  }

  const double c = std::cos(state.heading), s = std::sin(state.heading);
  if (ctx->mode == ManeuverMode::Vertical) {
    out.plane = ActivePlane::XZ;
    const Vec2 q_v(state.position.x(), state.position.z());
    out.h = barrier(q_v, ctx->projection, cfg.obstacle_radius);
    // World-x component of the body reference, and the vertical component.
    const double wx = c * v_ref_body.x() - s * v_ref_body.y();
    const Vec2 u_ref(wx, v_ref_body.z());
    const auto sol = solve_halfspace_qp(u_ref, 2.0 * (q_v - ctx->projection),
                                        cfg.gain * out.h);
    out.constraint_active = sol.active;
    out.deviation = sol.deviation;
    out.v.z() = sol.u.y();
    // Recover the forward reference keeping v_y fixed; near cos(psi) = 0
    // the world-x component is insensitive to v_x and is left alone.
    if (std::abs(c) > 1e-3)
      out.v.x() = (sol.u.x() + s * v_ref_body.y()) / c;
  } else {
    out.plane = ActivePlane::XY;
    const Vec2 q_v = state.position.head<2>();
    out.h = barrier(q_v, ctx->projection, cfg.obstacle_radius);
    const Vec2 u_ref(c * v_ref_body.x() - s * v_ref_body.y(),
                     s * v_ref_body.x() + c * v_ref_body.y());
    const auto sol = solve_halfspace_qp(u_ref, 2.0 * (q_v - ctx->projection),
                                        cfg.gain * out.h);
    out.constraint_active = sol.active;
    out.deviation = sol.deviation;
    out.v.x() = c * sol.u.x() + s * sol.u.y();
    out.v.y() = -s * sol.u.x() + c * sol.u.y();
  }
  return out;
}

double clip_yaw(double r_ref, double r_max) {
  if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be > 0");
  return std::clamp(r_ref, -r_max, r_max);
}

}  // namespace eroas
