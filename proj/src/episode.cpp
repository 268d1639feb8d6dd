#include "eroas/episode.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "eroas/episode.hpp"
#include "eroas/scg.hpp"

namespace eroas {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

char mode_char(ManeuverMode m) {
  switch (m) {
    case ManeuverMode::Horizontal: return 'H';
    case ManeuverMode::Vertical: return 'V';
    case ManeuverMode::FallbackTurn: return 'F';
  }
  return '?';
}

ManeuverMode mode_from_char(char c) {
  switch (c) {
    case 'H': return ManeuverMode::Horizontal;
    case 'V': return ManeuverMode::Vertical;
    case 'F': return ManeuverMode::FallbackTurn;
  }
  throw std::runtime_error("bad mode char in log");
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void dump_scan(std::ofstream& out, int cycle, const SonarScan& s) {
  for (int i = 1; i <= s.config.n_beams; ++i) {
    out << cycle << ',' << i << ','
        << fmt(s.config.beam_azimuth(i, s.pose_at_scan.heading)) << ','
        << fmt(s.pivot_angle) << ','
        << (s.hit(i) ? fmt(s.range(i)) : std::string("-1")) << ','
        << fmt(s.intensity(i)) << '\n';
  }
}

}  // namespace

std::string to_string(EpisodeOutcome outcome) {
  switch (outcome) {
    case EpisodeOutcome::Success: return "success";
    case EpisodeOutcome::Collision: return "collision";
    case EpisodeOutcome::Timeout: return "timeout";
  }
  return "?";
}

EpisodeResult run_episode(const Scenario& scenario, Algorithm algo,
                          const EpisodeOptions& options) {
  validate(scenario);
  const World& world = scenario.world;
  VehicleState state = scenario.start;
  state.heading = wrap_angle(state.heading);

  LocalMemory memory(scenario.memory.radius, scenario.memory.cell);
  PolicyState policy;
  bool pivot_pending = false;
  std::mt19937 noise_rng(static_cast<std::uint32_t>(scenario.seed));
  std::mt19937* rng =
      scenario.sonar.noise_amplitude > 0.0 ? &noise_rng : nullptr;

  // Substeps per control cycle, integrator dt never above the configured dt.
  const int substeps = std::max(
      1, static_cast<int>(
             std::ceil(scenario.control_period / scenario.tracking.dt - 1e-9)));
  TrackingConfig tracking = scenario.tracking;
  tracking.dt = scenario.control_period / substeps;

  std::ofstream scan_dump;
  if (!options.dump_scans_path.empty()) {
    scan_dump.open(options.dump_scans_path);
    scan_dump << "# eroas-scan-dump v1\n"
              << "cycle,beam,azimuth,pivot,range,intensity\n";
  }

  TrajectoryLog log;
  log.scenario_name = scenario.name;
  log.algorithm = to_string(algo);
  log.seed = scenario.seed;
  log.control_period = scenario.control_period;

  std::vector<double> compute_times;
  ManeuverMode last_mode = ManeuverMode::Horizontal;
  int cycle = 0;

  while (true) {
    const double clearance = distance_to_surface(world, state.position);
    std::optional<EpisodeOutcome> done;
    if (clearance <= 0.0)
      done = EpisodeOutcome::Collision;
    else if (goal_reached(state, scenario.goal, scenario.goal_tolerance))
      done = EpisodeOutcome::Success;
    else if (state.time >= scenario.time_budget - 1e-9)
      done = EpisodeOutcome::Timeout;
    if (done) {
      CycleRecord rec;
      rec.t = state.time;
      rec.state = state;
      rec.mode = last_mode;
      rec.clearance = clearance;
      rec.memory_size = memory.size();
      log.records.push_back(rec);
      log.outcome = *done;
      break;
    }

    SonarScan s = scan(world, state, 0.0, scenario.sonar, rng);
    if (scan_dump.is_open()) dump_scan(scan_dump, cycle, s);

    std::vector<SonarScan> sweep_scans;
    const bool pivot_event = pivot_pending && algo == Algorithm::Eroas;
    if (pivot_event)
      sweep_scans =
          pivot_sweep(world, state, scenario.sweep, scenario.sonar, rng);

    CycleRecord rec;
    rec.t = state.time;
    rec.state = state;
    rec.clearance = clearance;
    rec.pivot_event = pivot_event;

    Vec3 v_cmd;
    double r_cmd;
    const auto t0 = std::chrono::steady_clock::now();
    if (algo == Algorithm::Eroas) {
      std::optional<double> xy_clear;
      if (auto ctx =
              context(memory, state.position, ManeuverMode::Horizontal))
        xy_clear = ctx->planar_distance;
      Decision decision =
          decide(s, pivot_event ? &sweep_scans : nullptr, state,
                 scenario.goal, scenario.spd2c, scenario.sweep, policy,
                 xy_clear);
      pivot_pending = decision.pivot_requested;

      std::vector<Vec3> points = project_points(s);
      for (const SonarScan& ps : sweep_scans)
        for (const Vec3& p : project_points(ps)) points.push_back(p);
      memory.update(points, state.position);

      const auto ctx = context(memory, state.position,
                               decision.mode == ManeuverMode::Vertical
                                   ? ManeuverMode::Vertical
                                   : ManeuverMode::Horizontal);
      const SafeReference safe =
          filter(decision.v_ref, state, ctx, scenario.cbf);
      v_cmd = safe.v;
      r_cmd = clip_yaw(decision.r_ref, scenario.limits.r_max);
      rec.mode = decision.mode;
      rec.v_ref = decision.v_ref;
      rec.v_safe = safe.v;
      rec.h = safe.h;
      rec.memory_size = memory.size();
    } else {
      const ReferenceCommands cmd =
          algo == Algorithm::Apf
              ? apf_step(scenario.world, state, scenario.goal, scenario.apf)
              : dwa_step(s, state, scenario.goal, scenario.dwa,
                         scenario.limits);
      v_cmd = cmd.v;
      r_cmd = clip_yaw(cmd.r, scenario.limits.r_max);
      rec.mode = ManeuverMode::Horizontal;
      rec.v_ref = cmd.v;
      rec.v_safe = cmd.v;
      rec.h = std::numeric_limits<double>::infinity();
    }
    if (options.record_compute_time) {
      const auto t1 = std::chrono::steady_clock::now();
      compute_times.push_back(
          std::chrono::duration<double>(t1 - t0).count());
    }

    rec.r_ref = r_cmd;
    last_mode = rec.mode;
    log.records.push_back(rec);

    for (int k = 0; k < substeps; ++k)
      state = step(state, v_cmd, r_cmd, scenario.limits, tracking);
    ++cycle;
  }

  EpisodeResult result;
  result.metrics = compute_metrics(log, scenario);
  result.metrics.median_cycle_seconds = median(compute_times);
  result.metrics.max_cycle_seconds =
      compute_times.empty()
          ? 0.0
          : *std::max_element(compute_times.begin(), compute_times.end());
  result.log = std::move(log);
  return result;
}

Metrics compute_metrics(const TrajectoryLog& log, const Scenario& scenario) {
  if (log.records.empty()) throw std::invalid_argument("empty log");
  Metrics m;
  m.outcome = log.outcome;
  m.success = log.outcome == EpisodeOutcome::Success;
  m.travel_time = log.records.back().t - log.records.front().t;
  m.min_clearance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const CycleRecord& rec = log.records[i];
    if (i > 0)
      m.path_length +=
          (rec.state.position - log.records[i - 1].state.position).norm();
    const double clearance =
        distance_to_surface(scenario.world, rec.state.position);
    m.min_clearance = std::min(m.min_clearance, clearance);
    if (clearance < scenario.d_min) ++m.d_min_violations;
    if (rec.pivot_event) ++m.pivot_events;
  }
  const double dt = log.control_period;
  double jerk_sum = 0.0;
  int jerk_n = 0;
  for (std::size_t i = 2; i < log.records.size(); ++i) {
    const double d2r = log.records[i].state.yaw_rate -
                       2.0 * log.records[i - 1].state.yaw_rate +
                       log.records[i - 2].state.yaw_rate;
    jerk_sum += std::abs(d2r) / (dt * dt);
    ++jerk_n;
  }
  m.avg_angular_jerk = jerk_n > 0 ? jerk_sum / jerk_n : 0.0;
  return m;
}

void write_log(std::ostream& out, const TrajectoryLog& log) {
  out << "# eroas-trajectory v1\n";
  out << "# scenario=" << log.scenario_name << " algo=" << log.algorithm
      << " seed=" << log.seed << " control_period="
      << fmt(log.control_period) << " outcome=" << to_string(log.outcome)
      << "\n";
  out << "t,x,y,z,psi,vx,vy,vz,r,mode,vxr,vyr,vzr,vxs,vys,vzs,r_cmd,h,"
         "mem,pivot,clearance\n";
  for (const CycleRecord& rec : log.records) {
    const VehicleState& st = rec.state;
    out << fmt(rec.t) << ',' << fmt(st.position.x()) << ','
        << fmt(st.position.y()) << ',' << fmt(st.position.z()) << ','
        << fmt(st.heading) << ',' << fmt(st.velocity.x()) << ','
        << fmt(st.velocity.y()) << ',' << fmt(st.velocity.z()) << ','
        << fmt(st.yaw_rate) << ',' << mode_char(rec.mode) << ','
        << fmt(rec.v_ref.x()) << ',' << fmt(rec.v_ref.y()) << ','
        << fmt(rec.v_ref.z()) << ',' << fmt(rec.v_safe.x()) << ','
        << fmt(rec.v_safe.y()) << ',' << fmt(rec.v_safe.z()) << ','
        << fmt(rec.r_ref) << ',' << fmt(rec.h) << ',' << rec.memory_size
        << ',' << (rec.pivot_event ? 1 : 0) << ',' << fmt(rec.clearance)
        << '\n';
  }
}

std::string log_to_string(const TrajectoryLog& log) {
  std::ostringstream ss;
  write_log(ss, log);
  return ss.str();
}

void write_log_file(const std::string& path, const TrajectoryLog& log) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_log(out, log);
}

TrajectoryLog read_log_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open log file " + path);
  TrajectoryLog log;
  std::string line;
  if (!std::getline(in, line) || line != "# eroas-trajectory v1")
    throw std::runtime_error("not a v1 trajectory log: " + path);
  if (!std::getline(in, line) || line.rfind("# scenario=", 0) != 0)
    throw std::runtime_error("missing log metadata line");
  {
    std::istringstream meta(line.substr(2));
    std::string tok;
    while (meta >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "scenario") log.scenario_name = val;
      else if (key == "algo") log.algorithm = val;
      else if (key == "seed") log.seed = std::stoull(val);
      else if (key == "control_period") log.control_period = std::stod(val);
      else if (key == "outcome") {
        if (val == "success") log.outcome = EpisodeOutcome::Success;
        else if (val == "collision") log.outcome = EpisodeOutcome::Collision;
        else log.outcome = EpisodeOutcome::Timeout;
      }
    }
  }
  std::getline(in, line);  // column header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 21)
      throw std::runtime_error("malformed log row: " + line);
    CycleRecord rec;
    int i = 0;
    const auto num = [&]() { return std::stod(cells[i++]); };
    const auto vec3 = [&]() {
      const double x = num(), y = num(), z = num();
      return Vec3(x, y, z);
    };
    rec.t = num();
    rec.state.position = vec3();
    rec.state.heading = num();
    rec.state.velocity = vec3();
    rec.state.yaw_rate = num();
    rec.state.time = rec.t;
    rec.mode = mode_from_char(cells[i++][0]);
    rec.v_ref = vec3();
    rec.v_safe = vec3();
    rec.r_ref = num();
    rec.h = num();
    rec.memory_size = static_cast<std::size_t>(std::stoull(cells[i++]));
    rec.pivot_event = cells[i++] == "1";
    rec.clearance = num();
    log.records.push_back(rec);
  }
  return log;
}

std::string metrics_to_json(const Metrics& m) {
  nlohmann::json j;
  j["schema"] = "eroas-metrics v1";
  j["success"] = m.success;
  j["outcome"] = to_string(m.outcome);
  j["path_length_m"] = m.path_length;
  j["travel_time_s"] = m.travel_time;
  j["min_clearance_m"] = m.min_clearance;
  j["avg_angular_jerk_rad_s3"] = m.avg_angular_jerk;
  j["d_min_violations"] = m.d_min_violations;
  j["pivot_events"] = m.pivot_events;
  j["median_cycle_seconds"] = m.median_cycle_seconds;
  j["max_cycle_seconds"] = m.max_cycle_seconds;
  return j.dump(2);
}

}  // namespace eroas
