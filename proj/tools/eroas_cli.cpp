// Command line front end: single episodes, scenario batches, and SVG plots.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "eroas/batch.hpp"
#include "eroas/plots.hpp"

namespace fs = std::filesystem;
using namespace eroas;

namespace {

// Exit codes: 0 success, 1 configuration error, 2 collision, 3 timeout.
int outcome_exit_code(EpisodeOutcome outcome) {
  switch (outcome) {
    case EpisodeOutcome::Success: return 0;
    case EpisodeOutcome::Collision: return 2;
    case EpisodeOutcome::Timeout: return 3;
  }
  return 1;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int cmd_run(const std::string& scenario_path, const std::string& algo_name,
            std::uint64_t seed, bool seed_set, bool dump_scans,
            const std::string& out_dir) {
  Scenario sc = load_scenario(scenario_path);
  if (seed_set) sc.seed = seed;
  instantiate_random_obstacles(sc, sc.seed);
  const Algorithm algo = algorithm_from_string(algo_name);

  fs::create_directories(out_dir);
  const std::string stem = sc.name + "_" + to_string(algo);
  EpisodeOptions options;
  if (dump_scans) options.dump_scans_path = (fs::path(out_dir) / (stem + "_scans.csv")).string();

  const EpisodeResult result = run_episode(sc, algo, options);
  write_log_file((fs::path(out_dir) / (stem + "_trajectory.csv")).string(),
                 result.log);
  write_text(fs::path(out_dir) / (stem + "_metrics.json"),
             metrics_to_json(result.metrics));
  emit_plots({result.log}, sc.world,
             (fs::path(out_dir) / stem).string());

  std::cout << metrics_to_json(result.metrics) << '\n';
  return outcome_exit_code(result.log.outcome);
}

int cmd_batch(const std::string& scenario_dir,
              const std::vector<std::string>& algo_names, int reps,
              const std::string& out_dir) {
  std::vector<Scenario> scenarios;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(scenario_dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const fs::path& file : files)
    scenarios.push_back(load_scenario(file.string()));
  if (scenarios.empty())
    throw std::runtime_error("no .json scenarios in " + scenario_dir);

  std::vector<Algorithm> algos;
  for (const std::string& name : algo_names)
    algos.push_back(algorithm_from_string(name));

  const BatchResult result = run_batch(scenarios, algos, reps);
  fs::create_directories(out_dir);
  write_text(fs::path(out_dir) / "batch_rows.csv", batch_rows_csv(result));
  const std::string table = batch_summary_table(result);
  write_text(fs::path(out_dir) / "batch_summary.txt", table);
  std::cout << table;
  for (const BatchRow& row : result.rows)
    if (row.errored)
      std::cerr << "error: " << row.scenario << '/' << row.algorithm << ": "
                << row.error << '\n';
  return 0;
}

int cmd_plot(const std::vector<std::string>& log_paths,
             const std::string& scenario_path, const std::string& out_dir) {
  std::vector<TrajectoryLog> logs;
  for (const std::string& path : log_paths)
    logs.push_back(read_log_file(path));

  World world;
  if (!scenario_path.empty()) {
    Scenario sc = load_scenario(scenario_path);
    instantiate_random_obstacles(sc, logs.front().seed);
    world = sc.world;
  }

  fs::create_directories(out_dir);
  const std::string prefix =
      (fs::path(out_dir) / fs::path(log_paths.front()).stem().string())
          .string();
  for (const std::string& path : emit_plots(logs, world, prefix))
    std::cout << path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinematic AUV obstacle avoidance testbed"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = "out", algo_name = "eroas";
  std::uint64_t seed = 0;
  bool dump_scans = false;
  auto* run = app.add_subcommand("run", "run a single episode");
  run->add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();
  run->add_option("--algo", algo_name, "eroas, apf or dwa");
  auto* seed_opt = run->add_option("--seed", seed, "override scenario seed");
  run->add_flag("--dump-scans", dump_scans, "write per-beam sonar CSV");
  run->add_option("--out", out_dir, "output directory");

  std::string scenario_dir;
  std::vector<std::string> algo_names = {"eroas", "apf", "dwa"};
  int reps = 1;
  std::string batch_out = "out";
  auto* batch = app.add_subcommand("batch", "run scenarios x algos x reps");
  batch->add_option("--scenarios", scenario_dir, "directory of scenario JSON")
      ->required();
  batch->add_option("--algos", algo_names, "algorithms to run")
      ->delimiter(',');
  batch->add_option("--reps", reps, "repetitions per scenario")
      ->check(CLI::PositiveNumber);
  batch->add_option("--out", batch_out, "output directory");

  std::vector<std::string> log_paths;
  std::string plot_scenario, plot_out = "out";
  auto* plot = app.add_subcommand("plot", "render trajectory logs as SVG");
  plot->add_option("--log", log_paths, "trajectory CSV, repeatable")
      ->required();
  plot->add_option("--scenario", plot_scenario,
                   "scenario JSON for obstacle outlines");
  plot->add_option("--out", plot_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed())
      return cmd_run(scenario_path, algo_name, seed, seed_opt->count() > 0,
                     dump_scans, out_dir);
    if (batch->parsed())
      return cmd_batch(scenario_dir, algo_names, reps, batch_out);
    return cmd_plot(log_paths, plot_scenario, plot_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
