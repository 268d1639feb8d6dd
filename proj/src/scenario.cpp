#include "eroas/scenario.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace eroas {
namespace {

using nlohmann::json;

Vec3 to_vec3(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 3)
    throw std::runtime_error(std::string("expected [x,y,z] for ") + key);
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Vec2 to_vec2(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2)
    throw std::runtime_error(std::string("expected [x,y] for ") + key);
  return Vec2(j[0].get<double>(), j[1].get<double>());
}

// Pulls known keys out of an object, then complains about leftovers so a
// typo in a scenario file fails loudly instead of silently defaulting.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string name)
      : obj_(j), name_(std::move(name)) {
    if (!j.is_object())
      throw std::runtime_error(name_ + " must be an object");
  }
  ~ObjectReader() = default;

  const json* get(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }
  template <typename T>
  void read(const char* key, T& out) {
    if (const json* v = get(key)) out = v->get<T>();
  }
  void read_vec3(const char* key, Vec3& out) {
    if (const json* v = get(key)) out = to_vec3(*v, key);
  }
  void finish() {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key()))
        throw std::runtime_error("unknown key '" + it.key() + "' in " +
                                 name_);
  }

 private:
  const json& obj_;
  std::string name_;
  std::set<std::string> seen_;
};

ObstaclePrimitive parse_obstacle(const json& j) {
  ObjectReader r(j, "obstacle");
  std::string type;
  r.read("type", type);
  ObstaclePrimitive prim;
  if (type == "sphere") {
    Sphere s{Vec3::Zero(), 1.0};
    r.read_vec3("center", s.center);
    r.read("radius", s.radius);
    prim = s;
  } else if (type == "box") {
    AxisAlignedBox b{Vec3::Zero(), Vec3::Zero()};
    r.read_vec3("min", b.min);
    r.read_vec3("max", b.max);
    prim = b;
  } else if (type == "cylinder") {
    VerticalCylinder c{Vec3::Zero(), 1.0, 1.0};
    r.read_vec3("base_center", c.base_center);
    r.read("radius", c.radius);
    r.read("height", c.height);
    prim = c;
  } else if (type == "wall") {
    WallSegment w{Vec2::Zero(), Vec2::Zero(), 1.0, 0.0, 1.0};
    if (const json* v = r.get("a")) w.a = to_vec2(*v, "a");
    if (const json* v = r.get("b")) w.b = to_vec2(*v, "b");
    r.read("thickness", w.thickness);
    r.read("base_z", w.base_z);
    r.read("height", w.height);
    prim = w;
  } else {
    throw std::runtime_error("unknown obstacle type '" + type + "'");
  }
  r.finish();
  validate(prim);
  return prim;
}

void parse_world(const json& j, World& world) {
  ObjectReader r(j, "world");
  if (const json* obs = r.get("obstacles"))
    for (const json& o : *obs) world.obstacles.push_back(parse_obstacle(o));
  if (const json* b = r.get("bounds")) {
    ObjectReader br(*b, "bounds");
    AxisAlignedBox box{Vec3::Zero(), Vec3::Zero()};
    br.read_vec3("min", box.min);
    br.read_vec3("max", box.max);
    br.finish();
    world.bounds = box;
  }
  r.finish();
}

void parse_sonar(const json& j, SonarConfig& cfg) {
  ObjectReader r(j, "sonar");
  r.read("n_beams", cfg.n_beams);
  r.read("fov_h", cfg.fov_h);
  r.read("r_min", cfg.r_min);
  r.read("r_max", cfg.r_max);
  r.read("vertical_beamwidth", cfg.vertical_beamwidth);
  r.read("intensity_hit", cfg.intensity_hit);
  r.read("intensity_miss", cfg.intensity_miss);
  r.read("intensity_threshold", cfg.intensity_threshold);
  r.read("elevation_subrays", cfg.elevation_subrays);
  r.read("noise_amplitude", cfg.noise_amplitude);
  r.finish();
}

void parse_spd2c(const json& j, Spd2cConfig& cfg) {
  ObjectReader r(j, "spd2c");
  r.read("intensity_threshold", cfg.intensity_threshold);
  r.read("gap_length", cfg.gap_length);
  r.read("pivot_group_length", cfg.pivot_group_length);
  r.read("central_min", cfg.central_min);
  r.read("central_max", cfg.central_max);
  r.read("convexity_threshold", cfg.convexity_threshold);
  r.read("k_v", cfg.k_v);
  r.read("k_t", cfg.k_t);
  r.read("psi_max", cfg.psi_max);
  r.read("fallback_turn_rate", cfg.fallback_turn_rate);
  r.read("resweep_period_cycles", cfg.resweep_period_cycles);
  r.read("vertical_exit_xy_clearance", cfg.vertical_exit_xy_clearance);
  r.read("goal_depth_band", cfg.goal_depth_band);
  r.read("crossing_climb_angle", cfg.crossing_climb_angle);
  r.read("gap_switch_hysteresis", cfg.gap_switch_hysteresis);
  r.finish();
}

void parse_apf(const json& j, ApfConfig& cfg) {
  ObjectReader r(j, "apf");
  r.read("k_att", cfg.k_att);
  r.read("k_rep", cfg.k_rep);
  r.read("influence", cfg.influence);
  r.read("speed_cap", cfg.speed_cap);
  r.read("yaw_gain", cfg.yaw_gain);
  r.read("att_saturation", cfg.att_saturation);
  r.read("stall_force", cfg.stall_force);
  r.finish();
}

void parse_dwa(const json& j, DwaConfig& cfg) {
  ObjectReader r(j, "dwa");
  r.read("v_samples", cfg.v_samples);
  r.read("r_samples", cfg.r_samples);
  r.read("horizon", cfg.horizon);
  r.read("sim_dt", cfg.sim_dt);
  r.read("heading_weight", cfg.heading_weight);
  r.read("clearance_weight", cfg.clearance_weight);
  r.read("speed_weight", cfg.speed_weight);
  r.read("safety_radius", cfg.safety_radius);
  r.read("clearance_cap", cfg.clearance_cap);
  r.finish();
}

void parse_random(const json& j, RandomObstacleSpec& spec) {
  ObjectReader r(j, "random_obstacles");
  r.read("count", spec.count);
  r.read_vec3("region_min", spec.region_min);
  r.read_vec3("region_max", spec.region_max);
  r.read("radius_min", spec.radius_min);
  r.read("radius_max", spec.radius_max);
  r.read("min_separation", spec.min_separation);
  r.read("start_clearance", spec.start_clearance);
  r.read("goal_clearance", spec.goal_clearance);
  r.read("cylinders", spec.cylinders);
  r.finish();
}

}  // namespace

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "eroas") return Algorithm::Eroas;
  if (name == "apf") return Algorithm::Apf;
  if (name == "dwa") return Algorithm::Dwa;
  throw std::runtime_error("unknown algorithm '" + name + "'");
}

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::Eroas: return "eroas";
    case Algorithm::Apf: return "apf";
    case Algorithm::Dwa: return "dwa";
  }
  return "?";
}

Scenario parse_scenario(const std::string& json_text) {
  const json j = json::parse(json_text);
  Scenario sc;
  ObjectReader r(j, "scenario");
  r.read("name", sc.name);
  if (const json* w = r.get("world")) parse_world(*w, sc.world);
  if (const json* s = r.get("start")) {
    ObjectReader sr(*s, "start");
    sr.read_vec3("position", sc.start.position);
    sr.read("heading", sc.start.heading);
    sr.finish();
  }
  if (const json* g = r.get("goal")) sc.goal = to_vec3(*g, "goal");
  r.read("goal_tolerance", sc.goal_tolerance);
  r.read("d_min", sc.d_min);
  r.read("time_budget", sc.time_budget);
  r.read("control_period", sc.control_period);
  r.read("seed", sc.seed);
  if (const json* s = r.get("sonar")) parse_sonar(*s, sc.sonar);
  if (const json* s = r.get("spd2c")) parse_spd2c(*s, sc.spd2c);
  if (const json* s = r.get("cbf")) {
    ObjectReader cr(*s, "cbf");
    cr.read("obstacle_radius", sc.cbf.obstacle_radius);
    cr.read("gain", sc.cbf.gain);
    cr.finish();
  }
  if (const json* s = r.get("memory")) {
    ObjectReader mr(*s, "memory");
    mr.read("radius", sc.memory.radius);
    mr.read("cell", sc.memory.cell);
    mr.finish();
  }
  if (const json* s = r.get("limits")) {
    ObjectReader lr(*s, "limits");
    lr.read("v_x_max", sc.limits.v_x_max);
    lr.read("v_y_max", sc.limits.v_y_max);
    lr.read("v_z_max", sc.limits.v_z_max);
    lr.read("r_max", sc.limits.r_max);
    lr.finish();
  }
  if (const json* s = r.get("tracking")) {
    ObjectReader tr(*s, "tracking");
    tr.read("tau", sc.tracking.tau);
    tr.read("dt", sc.tracking.dt);
    tr.read("euler", sc.tracking.euler);
    tr.finish();
  }
  if (const json* s = r.get("apf")) parse_apf(*s, sc.apf);
  if (const json* s = r.get("dwa")) parse_dwa(*s, sc.dwa);
  if (const json* s = r.get("sweep")) {
    ObjectReader wr(*s, "sweep");
    double min_deg = -45.0, max_deg = 45.0, step_deg = 1.0;
    wr.read("min_deg", min_deg);
    wr.read("max_deg", max_deg);
    wr.read("step_deg", step_deg);
    wr.finish();
    sc.sweep.angles.clear();
    for (double d = min_deg; d <= max_deg + 1e-9; d += step_deg)
      sc.sweep.angles.push_back(d * M_PI / 180.0);
  }
  if (const json* s = r.get("random_obstacles")) {
    RandomObstacleSpec spec;
    parse_random(*s, spec);
    sc.random_obstacles = spec;
  }
  r.finish();
  if (!sc.random_obstacles) validate(sc);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scenario(ss.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void instantiate_random_obstacles(Scenario& sc, std::uint64_t seed) {
  sc.seed = seed;
  if (!sc.random_obstacles) {
    validate(sc);
    return;
  }
  const RandomObstacleSpec& spec = *sc.random_obstacles;
  std::mt19937 rng(static_cast<std::uint32_t>(seed * 0x9E3779B9ull + 1));
  std::uniform_real_distribution<double> ux(spec.region_min.x(),
                                            spec.region_max.x());
  std::uniform_real_distribution<double> uy(spec.region_min.y(),
                                            spec.region_max.y());
  std::uniform_real_distribution<double> ur(spec.radius_min,
                                            spec.radius_max);

  struct Placed {
    Vec2 center;
    double radius;
  };
  std::vector<Placed> placed;
  const std::size_t base_count = sc.world.obstacles.size();
  int attempts = 0, since_progress = 0;
  while (static_cast<int>(placed.size()) < spec.count && attempts < 20000) {
    ++attempts;
    // A greedy layout can wedge itself; start over rather than give up.
    if (since_progress > 400) {
      placed.clear();
      sc.world.obstacles.resize(base_count);
      since_progress = 0;
    }
    ++since_progress;
    const Vec2 c(ux(rng), uy(rng));
    const double radius = ur(rng);
    const double to_start =
        (c - sc.start.position.head<2>()).norm() - radius;
    const double to_goal = (c - sc.goal.head<2>()).norm() - radius;
    if (to_start < spec.start_clearance || to_goal < spec.goal_clearance)
      continue;
    bool ok = true;
    for (const Placed& p : placed)
      if ((c - p.center).norm() - radius - p.radius < spec.min_separation) {
        ok = false;
        break;
      }
    if (!ok) continue;
    since_progress = 0;
    const double z0 = sc.start.position.z();
    if (spec.cylinders && placed.size() % 2 == 1) {
      sc.world.obstacles.push_back(
          VerticalCylinder{Vec3(c.x(), c.y(), z0 - 12.0), radius, 24.0});
    } else {
      sc.world.obstacles.push_back(Sphere{Vec3(c.x(), c.y(), z0), radius});
    }
    placed.push_back({c, radius});
  }
  if (static_cast<int>(placed.size()) < spec.count)
    throw std::runtime_error(
        "could not place the requested random obstacles");
  validate(sc);
}

void validate(const Scenario& sc) {
  validate(sc.world);
  if (!(sc.goal_tolerance > 0.0))
    throw std::runtime_error("goal_tolerance must be > 0");
  if (!(sc.time_budget > 0.0))
    throw std::runtime_error("time_budget must be > 0");
  if (!(sc.control_period > 0.0))
    throw std::runtime_error("control_period must be > 0");
  if (distance_to_surface(sc.world, sc.start.position) <= 0.0)
    throw std::runtime_error("start position is inside an obstacle");
  if (sc.sweep.angles.size() < 2)
    throw std::runtime_error("pivot sweep needs at least two angles");
  for (std::size_t i = 1; i < sc.sweep.angles.size(); ++i)
    if (!(sc.sweep.angles[i] > sc.sweep.angles[i - 1]))
      throw std::runtime_error("pivot sweep must be strictly increasing");
}

}  // namespace eroas
