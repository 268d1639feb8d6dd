#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eroas/vehicle.hpp"

using namespace eroas;

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
  CHECK(wrap_angle(2.0 * M_PI) == doctest::Approx(0.0));
  CHECK(wrap_angle(M_PI + 0.1) == doctest::Approx(-M_PI + 0.1));
  CHECK(wrap_angle(-M_PI - 0.1) == doctest::Approx(M_PI - 0.1));
  CHECK(wrap_angle(M_PI) == doctest::Approx(M_PI));
}

TEST_CASE("straight-line integration") {
  VehicleState s;
  const VehicleState n = integrate(s, Vec3(1.0, 0.0, 0.0), 0.0, 2.0);
  CHECK(n.position.x() == doctest::Approx(2.0));
  CHECK(n.position.y() == doctest::Approx(0.0));
  CHECK(n.heading == doctest::Approx(0.0));
  CHECK(n.time == doctest::Approx(2.0));
}

TEST_CASE("body frame rotates with heading") {
  VehicleState s;
  s.heading = M_PI / 2.0;
  const VehicleState n = integrate(s, Vec3(1.0, 0.0, 0.0), 0.0, 1.0);
  CHECK(n.position.x() == doctest::Approx(0.0));
  CHECK(n.position.y() == doctest::Approx(1.0));
  // Body +y is the vehicle's left: at heading pi/2 that is world -x.
  const VehicleState m = integrate(s, Vec3(0.0, 1.0, 0.0), 0.0, 1.0);
  CHECK(m.position.x() == doctest::Approx(-1.0));
  CHECK(m.position.y() == doctest::Approx(0.0));
}

TEST_CASE("midpoint heading translation") {
  VehicleState s;
  const double r = 0.1, dt = 1.0;
  const VehicleState n = integrate(s, Vec3(1.0, 0.0, 0.0), r, dt);
  CHECK(n.heading == doctest::Approx(0.1));
  CHECK(n.position.x() == doctest::Approx(std::cos(0.05)));
  CHECK(n.position.y() == doctest::Approx(std::sin(0.05)));
  const VehicleState e = integrate(s, Vec3(1.0, 0.0, 0.0), r, dt, true);
  CHECK(e.heading == doctest::Approx(0.1));
  CHECK(e.position.x() == doctest::Approx(1.0));  // explicit Euler
  CHECK(e.position.y() == doctest::Approx(0.0));
}

TEST_CASE("midpoint integration is exactly reversible") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    VehicleState s;
    s.position = Vec3(u(rng) * 10.0, u(rng) * 10.0, u(rng) * 5.0);
    s.heading = u(rng) * M_PI;
    const Vec3 v(u(rng), u(rng), u(rng));
    const double r = 0.3 * u(rng), dt = 0.125;
    VehicleState f = integrate(s, v, r, dt);
    const VehicleState b = integrate(f, -v, -r, dt);
    CHECK((b.position - s.position).norm() < 1e-12);
    CHECK(std::abs(wrap_angle(b.heading - s.heading)) < 1e-12);
  }
}

TEST_CASE("velocity clipping") {
  VehicleLimits lim;
  const Vec3 c = clip_velocity(Vec3(2.0, -3.0, 0.5), lim);
  CHECK(c.x() == doctest::Approx(1.0));
  CHECK(c.y() == doctest::Approx(-1.0));
  CHECK(c.z() == doctest::Approx(0.5));
  // Forward speed is one-sided: never negative.
  CHECK(clip_velocity(Vec3(-0.5, 0.0, 0.0), lim).x() ==
        doctest::Approx(0.0));
  // Idempotent.
  const Vec3 cc = clip_velocity(c, lim);
  CHECK((cc - c).norm() == doctest::Approx(0.0));
}

TEST_CASE("ideal tracking step equals clipped integration") {
  VehicleState s;
  s.heading = 0.4;
  VehicleLimits lim;
  TrackingConfig tr;  // tau = 0
  tr.dt = 0.125;
  const Vec3 ref(2.0, 0.0, 0.3);
  const VehicleState a = step(s, ref, 0.1, lim, tr);
  const VehicleState b =
      integrate(s, clip_velocity(ref, lim), 0.1, tr.dt);
  CHECK((a.position - b.position).norm() == doctest::Approx(0.0));
  CHECK(a.heading == doctest::Approx(b.heading));
  CHECK((a.velocity - Vec3(1.0, 0.0, 0.3)).norm() < 1e-15);
  CHECK(a.yaw_rate == doctest::Approx(0.1));
}

TEST_CASE("first-order lag relaxes toward the reference") {
  VehicleState s;
  VehicleLimits lim;
  TrackingConfig tr;
  tr.tau = 0.5;
  tr.dt = 0.125;
  VehicleState n = step(s, Vec3(1.0, 0.0, 0.0), 0.0, lim, tr);
  CHECK(n.velocity.x() > 0.0);
  CHECK(n.velocity.x() < 1.0);
  // Converges: after many steps the velocity approaches the reference.
  for (int i = 0; i < 200; ++i) n = step(n, Vec3(1.0, 0.0, 0.0), 0.0, lim, tr);
  CHECK(n.velocity.x() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("goal test uses 3D distance with inclusive boundary") {
  VehicleState s;
  s.position = Vec3(1.0, 0.0, 0.0);
  CHECK(goal_reached(s, Vec3::Zero(), 1.0));
  CHECK_FALSE(goal_reached(s, Vec3::Zero(), 0.999));
  s.position = Vec3(0.0, 0.6, 0.8);
  CHECK(goal_reached(s, Vec3::Zero(), 1.0));
}
