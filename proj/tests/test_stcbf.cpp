#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eroas/stcbf.hpp"

using namespace eroas;

namespace {

ContextOutput horizontal_ctx(const Vec3& closest) {
  ContextOutput c;
  c.mode = ManeuverMode::Horizontal;
  c.closest = closest;
  c.projection = closest.head<2>();
  c.planar_distance = 0.0;  // unused by the filter
  return c;
}

ContextOutput vertical_ctx(const Vec3& closest) {
  ContextOutput c;
  c.mode = ManeuverMode::Vertical;
  c.closest = closest;
  c.projection = Vec2(closest.x(), closest.z());
  c.planar_distance = 0.0;
  return c;
}

}  // namespace

TEST_CASE("barrier values") {
  CHECK(barrier(Vec2(5.0, 0.0), Vec2(0.0, 0.0), 2.0) ==
        doctest::Approx(21.0));
  CHECK(barrier(Vec2(2.0, 0.0), Vec2(0.0, 0.0), 2.0) ==
        doctest::Approx(0.0));
  CHECK(barrier(Vec2(1.0, 1.0), Vec2(1.0, 1.0), 2.0) ==
        doctest::Approx(-4.0));
}

TEST_CASE("no context passes through with infinite barrier") {
  VehicleState s;
  CbfConfig cfg;
  const Vec3 v(0.7, 0.1, -0.2);
  const SafeReference out = filter(v, s, std::nullopt, cfg);
  CHECK((out.v - v).norm() == 0.0);
  CHECK(out.plane == ActivePlane::None);
  CHECK_FALSE(out.constraint_active);
  CHECK(std::isinf(out.h));
  CHECK(out.deviation == 0.0);
}

TEST_CASE("receding references are bit-exact pass-through") {
  VehicleState s;  // at origin, heading 0
  CbfConfig cfg;   // R_o 3, gain 0.5
  // Obstacle ahead at x = 10: h = 91, constraint g.u >= -45.5 with
  // g = (-20, 0), so any forward speed up to 2.275 passes untouched.
  const auto ctx = horizontal_ctx(Vec3(10.0, 0.0, 0.0));
  const Vec3 v(1.0, 0.25, -0.3);
  const SafeReference out = filter(v, s, ctx, cfg);
  CHECK(out.v.x() == 1.0);
  CHECK(out.v.y() == 0.25);
  CHECK(out.v.z() == -0.3);
  CHECK_FALSE(out.constraint_active);
  CHECK(out.h == doctest::Approx(91.0));
  CHECK(out.deviation == 0.0);
}

TEST_CASE("closed-form projection onto the halfspace boundary") {
  VehicleState s;  // origin, heading 0
  CbfConfig cfg;   // R_o 3, gain 0.5
  // Obstacle at x = 5: h = 16, g = (-10, 0), constraint u_x <= 0.8.
  const auto ctx = horizontal_ctx(Vec3(5.0, 0.0, 0.0));
  const SafeReference out = filter(Vec3(3.0, 0.0, 0.1), s, ctx, cfg);
  CHECK(out.constraint_active);
  CHECK(out.plane == ActivePlane::XY);
  CHECK(out.v.x() == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(out.v.y() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(out.v.z() == doctest::Approx(0.1));  // out of plane
  CHECK(out.deviation == doctest::Approx(2.2).epsilon(1e-12));
  // The projected velocity sits exactly on the constraint boundary.
  const Vec2 g(-10.0, 0.0);
  CHECK(g.dot(Vec2(out.v.x(), out.v.y())) ==
        doctest::Approx(-cfg.gain * 16.0).epsilon(1e-12));
}

TEST_CASE("projection is minimal and boundary-tight for random instances") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_real_distribution<double> pos(-8.0, 8.0);
  VehicleState s;
  CbfConfig cfg;
  int active = 0;
  for (int i = 0; i < 1000; ++i) {
    s.position = Vec3(pos(rng), pos(rng), 0.0);
    s.heading = u(rng);
    const Vec3 obstacle(pos(rng), pos(rng), 0.0);
    if ((s.position - obstacle).head<2>().norm() < 0.2) continue;
    const Vec3 v_ref(u(rng), u(rng), u(rng));
    const auto out = filter(v_ref, s, horizontal_ctx(obstacle), cfg);
    // Reconstruct world-planar velocities for the oracle.
    const double c = std::cos(s.heading), sn = std::sin(s.heading);
    const Vec2 u_ref(c * v_ref.x() - sn * v_ref.y(),
                     sn * v_ref.x() + c * v_ref.y());
    const Vec2 u_out(c * out.v.x() - sn * out.v.y(),
                     sn * out.v.x() + c * out.v.y());
    const Vec2 g = 2.0 * (s.position.head<2>() - obstacle.head<2>());
    const double h = barrier(s.position.head<2>(), obstacle.head<2>(),
                             cfg.obstacle_radius);
    CHECK(out.h == doctest::Approx(h).epsilon(1e-12));
    if (g.dot(u_ref) >= -cfg.gain * h) {
      CHECK_FALSE(out.constraint_active);
      CHECK((u_out - u_ref).norm() < 1e-12);
    } else {
      ++active;
      CHECK(out.constraint_active);
      // Tight on the boundary, deviation parallel to the gradient, and
      // matching the closed form |g.u_R + k h| / ||g||.
      CHECK(std::abs(g.dot(u_out) + cfg.gain * h) < 1e-9);
      const Vec2 d = u_out - u_ref;
      CHECK(std::abs(d.x() * g.y() - d.y() * g.x()) < 1e-9);
      CHECK(out.deviation ==
            doctest::Approx(std::abs(g.dot(u_ref) + cfg.gain * h) /
                            g.norm())
                .epsilon(1e-9));
      CHECK(d.norm() == doctest::Approx(out.deviation).epsilon(1e-9));
    }
    CHECK(out.v.z() == v_ref.z());  // out of plane always untouched
  }
  CHECK(active > 100);
}

TEST_CASE("heading rotation is applied and undone") {
  VehicleState s;
  s.heading = M_PI / 2.0;  // body forward = world +y
  CbfConfig cfg;
  // Obstacle straight ahead in world +y.
  const auto ctx = horizontal_ctx(Vec3(0.0, 5.0, 0.0));
  const SafeReference out = filter(Vec3(3.0, 0.0, 0.0), s, ctx, cfg);
  CHECK(out.constraint_active);
  // Same geometry as the axis-aligned case: forward speed capped at 0.8.
  CHECK(out.v.x() == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(out.v.y() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("vertical mode constrains the XZ plane and spares v_y") {
  VehicleState s;  // origin, heading 0
  CbfConfig cfg;
  // Crest point dead ahead in the XZ plane; closing too fast.
  const auto ctx = vertical_ctx(Vec3(4.0, 0.0, 0.0));
  const SafeReference out = filter(Vec3(3.0, 0.4, 0.0), s, ctx, cfg);
  CHECK(out.plane == ActivePlane::XZ);
  CHECK(out.constraint_active);
  // h = 7, g = (-8, 0): u_x <= 0.4375.
  CHECK(out.v.x() == doctest::Approx(0.4375).epsilon(1e-9));
  CHECK(out.v.y() == doctest::Approx(0.4));
}

TEST_CASE("vehicle at the obstacle point commands zero planar velocity") {
  VehicleState s;
  CbfConfig cfg;
  const auto ctx = horizontal_ctx(Vec3(0.0, 0.0, 0.0));
  const SafeReference out = filter(Vec3(1.0, 0.5, -0.2), s, ctx, cfg);
  CHECK(out.constraint_active);
  CHECK(out.v.x() == doctest::Approx(0.0));
  CHECK(out.v.y() == doctest::Approx(0.0));
  CHECK(out.v.z() == doctest::Approx(-0.2));
}

TEST_CASE("yaw clipping") {
  const double r_max = 15.0 * M_PI / 180.0;
  CHECK(clip_yaw(0.5, r_max) == doctest::Approx(0.2617993877991494));
  CHECK(clip_yaw(-0.5, r_max) == doctest::Approx(-0.2617993877991494));
  CHECK(clip_yaw(0.1, r_max) == 0.1);
  CHECK_THROWS_AS(clip_yaw(0.1, 0.0), std::invalid_argument);
}

TEST_CASE("invalid configuration is rejected") {
  VehicleState s;
  CbfConfig bad;
  bad.obstacle_radius = 0.0;
  CHECK_THROWS_AS(filter(Vec3::Zero(), s, std::nullopt, bad),
                  std::invalid_argument);
}
