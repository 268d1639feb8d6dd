#pragma once

#include "eroas/episode.hpp"

namespace eroas {

struct BatchRow {
  std::string scenario;
  std::string algorithm;
  std::uint64_t seed = 0;
  bool errored = false;  // episode threw; batch keeps going
  std::string error;
  Metrics metrics;
};

struct BatchGroup {
  std::string scenario;
  std::string algorithm;
  int runs = 0;
  int successes = 0;
  double median_path_length = 0.0;
  double median_travel_time = 0.0;
  double median_jerk = 0.0;
  double median_min_clearance = 0.0;
};

struct BatchResult {
  std::vector<BatchRow> rows;
  std::vector<BatchGroup> groups;
};

// Cross product scenarios x algorithms x repetitions. Repetition k of a
// scenario runs with seed = scenario.seed + k, re-instantiating any random
// obstacles, so every algorithm sees the identical world per seed.
BatchResult run_batch(const std::vector<Scenario>& scenarios,
                      const std::vector<Algorithm>& algorithms,
                      int repetitions);

std::string batch_rows_csv(const BatchResult& result);
std::string batch_summary_table(const BatchResult& result);

}  // namespace eroas
