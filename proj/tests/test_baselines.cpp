#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "eroas/baselines.hpp"
#include "eroas/vehicle.hpp"

using namespace eroas;

namespace {

// Synthetic scan with the given 1-based beams hit at `range` meters.
SonarScan make_scan(const std::vector<int>& hits, double range,
                    const VehicleState& pose) {
  SonarScan sc;
  sc.config = SonarConfig{};
  sc.pose_at_scan = pose;
  sc.ranges.assign(sc.config.n_beams,
                   std::numeric_limits<double>::quiet_NaN());
  sc.intensities.assign(sc.config.n_beams, sc.config.intensity_miss);
  for (int b : hits) {
    sc.ranges[b - 1] = range;
    sc.intensities[b - 1] = sc.config.intensity_hit;
  }
  return sc;
}

std::vector<int> all_beams() {
  std::vector<int> v;
  for (int b = 1; b <= 512; ++b) v.push_back(b);
  return v;
}

}  // namespace

TEST_CASE("potential field drives straight at the goal in open water") {
  World w;
  VehicleState pose;
  ApfConfig cfg;
  const ReferenceCommands cmd =
      apf_step(w, pose, Vec3(50.0, 0.0, 0.0), cfg);
  CHECK(cmd.v.x() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cmd.v.y() == 0.0);
  CHECK(cmd.v.z() == 0.0);
  CHECK(cmd.r == doctest::Approx(0.0));
}

TEST_CASE("potential field at the goal with no obstacles stalls") {
  World w;
  VehicleState pose;
  ApfConfig cfg;
  const ReferenceCommands cmd = apf_step(w, pose, Vec3::Zero(), cfg);
  CHECK(cmd.v.norm() == 0.0);
  CHECK(cmd.r == 0.0);
}

TEST_CASE("head-on repulsion overpowers attraction and spins the vehicle") {
  World w;
  w.obstacles.push_back(Sphere{Vec3(5.0, 0.0, 0.0), 1.0});
  VehicleState pose;
  ApfConfig cfg;
  const ReferenceCommands cmd =
      apf_step(w, pose, Vec3(50.0, 0.0, 0.0), cfg);
  // Net force (-2.4375, 0): heading error pi, full-gain yaw command and
  // the forward creep floor.
  CHECK(cmd.r == doctest::Approx(16.0 * M_PI).epsilon(1e-9));
  CHECK(cmd.v.x() == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("repulsion steers away from an offset obstacle") {
  World w;
  w.obstacles.push_back(Sphere{Vec3(5.0, 1.0, 0.0), 1.0});  // ahead left
  VehicleState pose;
  ApfConfig cfg;
  const ReferenceCommands cmd =
      apf_step(w, pose, Vec3(50.0, 0.0, 0.0), cfg);
  CHECK(cmd.r < 0.0);  // turn right, away from it
}

TEST_CASE("obstacles beyond the influence radius are invisible") {
  World w;
  w.obstacles.push_back(Sphere{Vec3(30.0, 0.0, 0.0), 2.0});  // 28 m away
  VehicleState pose;
  ApfConfig cfg;
  const ReferenceCommands with =
      apf_step(w, pose, Vec3(0.0, 50.0, 0.0), cfg);
  const ReferenceCommands without =
      apf_step(World{}, pose, Vec3(0.0, 50.0, 0.0), cfg);
  CHECK(with.r == without.r);
  CHECK((with.v - without.v).norm() == 0.0);
}

TEST_CASE("dwa runs at full speed straight to a distant clear goal") {
  VehicleState pose;
  DwaConfig cfg;
  VehicleLimits lim;
  const SonarScan sc = make_scan({}, 0.0, pose);
  const ReferenceCommands cmd =
      dwa_step(sc, pose, Vec3(100.0, 0.0, 0.0), cfg, lim);
  CHECK(cmd.v.x() == doctest::Approx(1.0));
  CHECK(cmd.r == doctest::Approx(0.0));
}

TEST_CASE("dwa slows on final approach") {
  VehicleState pose;
  DwaConfig cfg;
  VehicleLimits lim;
  const SonarScan sc = make_scan({}, 0.0, pose);
  const ReferenceCommands cmd =
      dwa_step(sc, pose, Vec3(1.2, 0.0, 0.0), cfg, lim);
  CHECK(cmd.v.x() <= 0.6 + 1e-12);
}

TEST_CASE("dwa picks a swerving arc around a frontal blockage") {
  VehicleState pose;
  DwaConfig cfg;
  VehicleLimits lim;
  // Left half and center blocked at 6 m; the opening is on the right.
  std::vector<int> hits;
  for (int b = 1; b <= 300; ++b) hits.push_back(b);
  const SonarScan sc = make_scan(hits, 6.0, pose);
  const ReferenceCommands cmd =
      dwa_step(sc, pose, Vec3(100.0, 0.0, 0.0), cfg, lim);
  CHECK(std::abs(cmd.r) > 1e-9);
  // Replaying the chosen command keeps the rollout outside the safety
  // radius of every scan point.
  const std::vector<Vec3> pts = project_points(sc);
  VehicleState sim = pose;
  for (int k = 0; k < 10; ++k) {
    sim = integrate(sim, cmd.v, cmd.r, cfg.sim_dt);
    for (const Vec3& p : pts)
      CHECK((sim.position.head<2>() - p.head<2>()).norm() >
            cfg.safety_radius);
  }
}

TEST_CASE("dwa rotates in place when every rollout collides") {
  VehicleState pose;
  DwaConfig cfg;
  VehicleLimits lim;
  const SonarScan sc = make_scan(all_beams(), 2.5, pose);
  const ReferenceCommands cmd =
      dwa_step(sc, pose, Vec3(100.0, 0.0, 0.0), cfg, lim);
  CHECK(cmd.v.norm() == 0.0);
  CHECK(cmd.r == doctest::Approx(lim.r_max));
}

TEST_CASE("baseline steps are deterministic") {
  World w;
  w.obstacles.push_back(Sphere{Vec3(8.0, -2.0, 0.0), 1.5});
  VehicleState pose;
  pose.heading = 0.2;
  ApfConfig acfg;
  const ReferenceCommands a1 = apf_step(w, pose, Vec3(40.0, 3.0, 0.0), acfg);
  const ReferenceCommands a2 = apf_step(w, pose, Vec3(40.0, 3.0, 0.0), acfg);
  CHECK(a1.r == a2.r);
  CHECK((a1.v - a2.v).norm() == 0.0);

  DwaConfig dcfg;
  VehicleLimits lim;
  std::vector<int> hits;
  for (int b = 200; b <= 300; ++b) hits.push_back(b);
  const SonarScan sc = make_scan(hits, 6.0, pose);
  const ReferenceCommands d1 = dwa_step(sc, pose, Vec3(40.0, 3.0, 0.0),
                                        dcfg, lim);
  const ReferenceCommands d2 = dwa_step(sc, pose, Vec3(40.0, 3.0, 0.0),
                                        dcfg, lim);
  CHECK(d1.r == d2.r);
  CHECK((d1.v - d2.v).norm() == 0.0);
}
