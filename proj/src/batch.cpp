#include "eroas/batch.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace eroas {
namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BatchResult run_batch(const std::vector<Scenario>& scenarios,
                      const std::vector<Algorithm>& algorithms,
                      int repetitions) {
  BatchResult result;
  for (const Scenario& base : scenarios) {
    for (int rep = 0; rep < repetitions; ++rep) {
      Scenario sc = base;
      instantiate_random_obstacles(sc, base.seed + rep);
      for (Algorithm algo : algorithms) {
        BatchRow row;
        row.scenario = sc.name;
        row.algorithm = to_string(algo);
        row.seed = sc.seed;
        try {
          row.metrics = run_episode(sc, algo).metrics;
        } catch (const std::exception& e) {
          row.errored = true;
          row.error = e.what();
        }
        result.rows.push_back(std::move(row));
      }
    }
  }

  std::map<std::pair<std::string, std::string>, std::vector<const BatchRow*>>
      grouped;
  for (const BatchRow& row : result.rows)
    grouped[{row.scenario, row.algorithm}].push_back(&row);
  for (const auto& [key, rows] : grouped) {
    BatchGroup g;
    g.scenario = key.first;
    g.algorithm = key.second;
    std::vector<double> path, time, jerk, clear;
    for (const BatchRow* row : rows) {
      ++g.runs;
      if (row->errored) continue;
      if (row->metrics.success) ++g.successes;
      path.push_back(row->metrics.path_length);
      time.push_back(row->metrics.travel_time);
      jerk.push_back(row->metrics.avg_angular_jerk);
      clear.push_back(row->metrics.min_clearance);
    }
    g.median_path_length = median(path);
    g.median_travel_time = median(time);
    g.median_jerk = median(jerk);
    g.median_min_clearance = median(clear);
    result.groups.push_back(std::move(g));
  }
  return result;
}

std::string batch_rows_csv(const BatchResult& result) {
  std::ostringstream out;
  out << "scenario,algo,seed,outcome,path_length_m,travel_time_s,"
         "min_clearance_m,avg_angular_jerk_rad_s3,d_min_violations,"
         "pivot_events,error\n";
  for (const BatchRow& row : result.rows) {
    out << row.scenario << ',' << row.algorithm << ',' << row.seed << ',';
    if (row.errored) {
      out << "error,,,,,,," << row.error << '\n';
      continue;
    }
    const Metrics& m = row.metrics;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%.3f,%.3f,%.3f,%.4f,%d,%d,",
                  to_string(m.outcome).c_str(), m.path_length,
                  m.travel_time, m.min_clearance, m.avg_angular_jerk,
                  m.d_min_violations, m.pivot_events);
    out << buf << '\n';
  }
  return out.str();
}

std::string batch_summary_table(const BatchResult& result) {
  std::ostringstream out;
  out << "scenario                 algo    runs ok  med_path  med_time  "
         "med_jerk  med_clear\n";
  for (const BatchGroup& g : result.groups) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%-24s %-7s %4d %2d %9.2f %9.1f %9.4f %10.2f\n",
                  g.scenario.c_str(), g.algorithm.c_str(), g.runs,
                  g.successes, g.median_path_length, g.median_travel_time,
                  g.median_jerk, g.median_min_clearance);
    out << buf;
  }
  return out.str();
}

}  // namespace eroas
