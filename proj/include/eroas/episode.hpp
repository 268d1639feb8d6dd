#pragma once

#include <iosfwd>
#include <string>

#include "eroas/scenario.hpp"

namespace eroas {

enum class EpisodeOutcome { Success, Collision, Timeout };
std::string to_string(EpisodeOutcome outcome);

struct CycleRecord {
  double t = 0.0;
  VehicleState state;          // at the start of the cycle
  ManeuverMode mode = ManeuverMode::Horizontal;
  Vec3 v_ref{0.0, 0.0, 0.0};   // nominal body-frame reference
  Vec3 v_safe{0.0, 0.0, 0.0};  // after the safety filter
  double r_ref = 0.0;          // after yaw clipping
  double h = 0.0;              // barrier value (inf when no context)
  std::size_t memory_size = 0;
  bool pivot_event = false;    // a pivot sweep ran this cycle
  double clearance = 0.0;      // true signed distance to the world
};

struct TrajectoryLog {
  std::string scenario_name;
  std::string algorithm;
  std::uint64_t seed = 0;
  double control_period = 0.125;
  EpisodeOutcome outcome = EpisodeOutcome::Timeout;
  std::vector<CycleRecord> records;
};

struct Metrics {
  bool success = false;
  EpisodeOutcome outcome = EpisodeOutcome::Timeout;
  double path_length = 0.0;
  double travel_time = 0.0;
  double min_clearance = 0.0;
  double avg_angular_jerk = 0.0;  // mean |second difference of r| / dt^2
  int d_min_violations = 0;       // cycles with clearance < d_min
  int pivot_events = 0;
  double median_cycle_seconds = 0.0;  // decide + memory + filter only
  double max_cycle_seconds = 0.0;
};

struct EpisodeOptions {
  std::string dump_scans_path;   // per-beam CSV when non-empty
  bool record_compute_time = true;
};

struct EpisodeResult {
  TrajectoryLog log;
  Metrics metrics;
};

// Closed loop: scan -> decide -> optional pivot sweep -> memory update ->
// safety filter -> yaw clip -> integrate, until the goal, a collision
// (true clearance <= 0) or the time budget. Deterministic per
// (scenario, seed, algorithm). The baselines skip memory and filter.
EpisodeResult run_episode(const Scenario& scenario, Algorithm algo,
                          const EpisodeOptions& options = {});

Metrics compute_metrics(const TrajectoryLog& log, const Scenario& scenario);

// Versioned comma-separated trajectory serialization; excludes compute
// times so two identical runs serialize bit-identically.
void write_log(std::ostream& out, const TrajectoryLog& log);
void write_log_file(const std::string& path, const TrajectoryLog& log);
std::string log_to_string(const TrajectoryLog& log);
TrajectoryLog read_log_file(const std::string& path);

// Metrics as a small JSON document.
std::string metrics_to_json(const Metrics& m);

}  // namespace eroas
