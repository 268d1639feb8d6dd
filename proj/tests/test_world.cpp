#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eroas/geometry.hpp"

using namespace eroas;

namespace {

World one_sphere() {
  World w;
  w.obstacles.push_back(Sphere{Vec3(10.0, 0.0, 0.0), 2.0});
  return w;
}

// Independent oracle: march the true signed distance field along the ray
// and bisect the first sign change. Valid for any primitive mix.
std::optional<double> march_first_hit(const World& w, const Vec3& o,
                                      const Vec3& d, double r_min,
                                      double r_max) {
  const double coarse = 0.01;
  double prev = distance_to_surface(w, o + r_min * d);
  for (double t = r_min + coarse; t <= r_max + 1e-12; t += coarse) {
    const double cur = distance_to_surface(w, o + t * d);
    if ((prev > 0.0) != (cur > 0.0) || cur == 0.0) {
      double lo = t - coarse, hi = t;
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((distance_to_surface(w, o + mid * d) > 0.0) == (prev > 0.0))
          lo = mid;
        else
          hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev = cur;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("sphere hit from outside at exact entry range") {
  const World w = one_sphere();
  auto t = ray_cast(w, Vec3::Zero(), Vec3(1.0, 0.0, 0.0), 0.5, 60.0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(8.0));
}

TEST_CASE("blind zone skips near crossings but keeps the exit") {
  const World w = one_sphere();
  // Entry at 8 masked, exit at 12 visible.
  auto t = ray_cast(w, Vec3::Zero(), Vec3(1.0, 0.0, 0.0), 9.0, 60.0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(12.0));
  CHECK_FALSE(ray_cast(w, Vec3::Zero(), Vec3(1.0, 0.0, 0.0), 13.0, 60.0));
}

TEST_CASE("origin inside a sphere sees the far surface") {
  const World w = one_sphere();
  auto t = ray_cast(w, Vec3(10.0, 0.0, 0.0), Vec3(1.0, 0.0, 0.0), 0.5, 60.0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(2.0));
}

TEST_CASE("box, cylinder and wall entry ranges") {
  World w;
  w.obstacles.push_back(AxisAlignedBox{Vec3(1.0, -1.0, -1.0),
                                       Vec3(3.0, 1.0, 1.0)});
  auto t = ray_cast(w, Vec3::Zero(), Vec3(1.0, 0.0, 0.0), 0.5, 60.0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(1.0));

  World wc;
  wc.obstacles.push_back(VerticalCylinder{Vec3(5.0, 0.0, -1.0), 1.0, 2.0});
  t = ray_cast(wc, Vec3::Zero(), Vec3(1.0, 0.0, 0.0), 0.5, 60.0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(4.0));
  // Above the cylinder cap: no hit.
  CHECK_FALSE(ray_cast(wc, Vec3(0.0, 0.0, 1.5), Vec3(1.0, 0.0, 0.0), 0.5,
                       60.0));

  World ww;
  ww.obstacles.push_back(WallSegment{Vec2(5.0, -5.0), Vec2(5.0, 5.0), 1.0,
                                     -1.0, 2.0});
  t = ray_cast(ww, Vec3::Zero(), Vec3(1.0, 0.0, 0.0), 0.5, 60.0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(4.5));
  // Above the wall top: no hit.
  CHECK_FALSE(ray_cast(ww, Vec3(0.0, 0.0, 1.5), Vec3(1.0, 0.0, 0.0), 0.5,
                       60.0));
}

TEST_CASE("signed distances") {
  const World w = one_sphere();
  CHECK(distance_to_surface(w, Vec3(10.0, 0.0, 0.0)) ==
        doctest::Approx(-2.0));
  CHECK(distance_to_surface(w, Vec3(14.0, 0.0, 0.0)) ==
        doctest::Approx(2.0));
  CHECK(distance_to_surface(w, Vec3(12.0, 0.0, 0.0)) ==
        doctest::Approx(0.0));

  const AxisAlignedBox box{Vec3(0.0, 0.0, 0.0), Vec3(2.0, 2.0, 2.0)};
  CHECK(distance_to_surface(box, Vec3(1.0, 1.0, 1.0)) ==
        doctest::Approx(-1.0));
  CHECK(distance_to_surface(box, Vec3(3.0, 3.0, 1.0)) ==
        doctest::Approx(std::sqrt(2.0)));

  World empty;
  CHECK(std::isinf(distance_to_surface(empty, Vec3::Zero())));
}

TEST_CASE("tie between primitives resolves to the earlier one") {
  World w;
  w.obstacles.push_back(Sphere{Vec3(10.0, 0.0, 0.0), 2.0});
  w.obstacles.push_back(Sphere{Vec3(12.0, 0.0, 0.0), 4.0});
  auto t = ray_cast(w, Vec3::Zero(), Vec3(1.0, 0.0, 0.0), 0.5, 60.0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(8.0));
}

TEST_CASE("direction policy") {
  const World w = one_sphere();
  CHECK_THROWS_AS(ray_cast(w, Vec3::Zero(), Vec3(2.0, 0.0, 0.0), 0.5, 60.0,
                           RayDirectionPolicy::Reject),
                  std::invalid_argument);
  auto t = ray_cast(w, Vec3::Zero(), Vec3(2.0, 0.0, 0.0), 0.5, 60.0,
                    RayDirectionPolicy::Normalize);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(8.0));
  CHECK_THROWS_AS(ray_cast(w, Vec3::Zero(), Vec3(1.0, 0.0, 0.0), -1.0, 60.0),
                  std::invalid_argument);
}

TEST_CASE("validation rejects degenerate primitives") {
  CHECK_THROWS_AS(validate(ObstaclePrimitive{Sphere{Vec3::Zero(), 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(ObstaclePrimitive{AxisAlignedBox{
                      Vec3(1.0, 0.0, 0.0), Vec3(0.0, 1.0, 1.0)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(ObstaclePrimitive{VerticalCylinder{
                      Vec3::Zero(), 1.0, -1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(ObstaclePrimitive{WallSegment{
                      Vec2(0.0, 0.0), Vec2(1.0, 0.0), 0.0, 0.0, 1.0}}),
                  std::invalid_argument);
  CHECK_NOTHROW(validate(ObstaclePrimitive{Sphere{Vec3::Zero(), 1.0}}));
}

TEST_CASE("ray cast agrees with a distance-field marching oracle") {
  World w;
  w.obstacles.push_back(Sphere{Vec3(12.0, 3.0, -1.0), 2.5});
  w.obstacles.push_back(AxisAlignedBox{Vec3(5.0, -8.0, -4.0),
                                       Vec3(9.0, -3.0, 4.0)});
  w.obstacles.push_back(VerticalCylinder{Vec3(18.0, -2.0, -6.0), 1.8, 12.0});
  w.obstacles.push_back(WallSegment{Vec2(3.0, 6.0), Vec2(20.0, 10.0), 1.2,
                                    -5.0, 9.0});
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  std::uniform_real_distribution<double> elev(-0.4, 0.4);
  int hits = 0;
  for (int i = 0; i < 300; ++i) {
    const double a = ang(rng), e = elev(rng);
    const Vec3 d(std::cos(a) * std::cos(e), std::sin(a) * std::cos(e),
                 std::sin(e));
    const Vec3 o(0.0, 0.0, -0.5);
    auto fast = ray_cast(w, o, d, 2.0, 40.0);
    auto slow = march_first_hit(w, o, d, 2.0, 40.0);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) {
      ++hits;
      CHECK(std::abs(*fast - *slow) < 2e-3);
    }
  }
  CHECK(hits > 50);  // the case exercises both branches
}

TEST_CASE("increasing r_max never changes an existing hit") {
  const World w = one_sphere();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ang(-0.5, 0.5);
  for (int i = 0; i < 200; ++i) {
    const double a = ang(rng);
    const Vec3 d(std::cos(a), std::sin(a), 0.0);
    auto near = ray_cast(w, Vec3::Zero(), d, 0.5, 20.0);
    auto far = ray_cast(w, Vec3::Zero(), d, 0.5, 60.0);
    if (near) {
      REQUIRE(far.has_value());
      CHECK(*near == *far);
    }
  }
}

TEST_CASE("surface crossings are sorted and symmetric for a sphere") {
  const Sphere s{Vec3(10.0, 0.0, 0.0), 2.0};
  auto ts = surface_crossings(ObstaclePrimitive{s}, Vec3::Zero(),
                              Vec3(1.0, 0.0, 0.0));
  REQUIRE(ts.size() == 2);
  CHECK(ts[0] == doctest::Approx(8.0));
  CHECK(ts[1] == doctest::Approx(12.0));
}
