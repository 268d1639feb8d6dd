#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "eroas/baselines.hpp"
#include "eroas/sonar.hpp"
#include "eroas/spd2c.hpp"
#include "eroas/stcbf.hpp"
#include "eroas/vehicle.hpp"

namespace eroas {

enum class Algorithm { Eroas, Apf, Dwa };

Algorithm algorithm_from_string(const std::string& name);
std::string to_string(Algorithm algo);

struct MemoryConfig {
  double radius = 15.0;  // r_o
  double cell = 0.05;
};

// Seeded procedural clutter appended to the declared obstacle list.
struct RandomObstacleSpec {
  int count = 0;
  Vec3 region_min{0.0, 0.0, 0.0};
  Vec3 region_max{0.0, 0.0, 0.0};
  double radius_min = 2.0;
  double radius_max = 4.0;
  double min_separation = 7.0;   // surface-to-surface between obstacles
  double start_clearance = 6.0;  // surface distance from the start pose
  double goal_clearance = 6.0;
  bool cylinders = true;         // alternate spheres and cylinders
};

struct Scenario {
  std::string name;
  World world;
  VehicleState start;
  Vec3 goal{0.0, 0.0, 0.0};
  double goal_tolerance = 1.0;  // epsilon
  double d_min = 3.0;           // soft clearance, violations counted
  double time_budget = 300.0;
  double control_period = 0.125;  // 8 Hz
  std::uint64_t seed = 0;
  SonarConfig sonar;
  Spd2cConfig spd2c;
  CbfConfig cbf;
  MemoryConfig memory;
  VehicleLimits limits;
  TrackingConfig tracking;
  ApfConfig apf;
  DwaConfig dwa;
  PivotSweep sweep = PivotSweep::default_sweep();
  std::optional<RandomObstacleSpec> random_obstacles;
};

// Parses the JSON scenario document; unknown keys are rejected, missing
// ones take the defaults above. Throws std::runtime_error with a message
// naming the offending key.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text);

// Appends the procedurally generated obstacles (when declared) using the
// given seed, then validates the result. Deterministic per seed.
void instantiate_random_obstacles(Scenario& scenario, std::uint64_t seed);

// Start strictly outside all obstacles, tolerances positive, and so on.
void validate(const Scenario& scenario);

}  // namespace eroas
