#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parhca/grid_map.hpp"
#include "parhca/solver.hpp"

namespace parhca {

struct BenchmarkConfig {
  /// Random maps (a fresh one per instance) unless `map` is set.
  double obstacle_probability = 0.1;
  int width = 50;
  int height = 50;
  std::optional<GridMap> map;

  int agents = 16;
  int instances = 30;
  std::uint64_t seed = 1;
  double data_rate_bps = 8.0e7;
  unsigned workers = 1;
  double timeout_seconds = 60.0;
  int exact_threshold = kDefaultExactThreshold;
};

struct RatioStats {
  double avg = 0, min = 0, max = 0, median = 0;
  friend bool operator==(const RatioStats&, const RatioStats&) = default;
};

struct SummaryStats {
  int successes = 0;
  int failures = 0;
  RatioStats sum_of_costs;
  RatioStats makespan;
  RatioStats time_wall;
  RatioStats time_ideal;
  RatioStats speedup;
  friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

struct BenchmarkResult {
  std::vector<BenchmarkRecord> records;  // every attempt, failures included
  SummaryStats summary;
};

/// Seed used for instance `index` of a run seeded with `seed`.
std::uint64_t instance_seed(std::uint64_t seed, int index);

/// Runs paired solves sequentially. Failed pairs stay in `records` with
/// ok = false and are excluded from the statistics.
BenchmarkResult run_benchmark(const BenchmarkConfig& config);

RatioStats ratio_stats(std::vector<double> values);
SummaryStats summarize(const std::vector<BenchmarkRecord>& records);

/// Column names of emit_csv in order.
const std::vector<std::string>& csv_columns();
/// Columns that depend on measured time.
bool is_timing_column(std::string_view name);

std::string emit_csv(const std::vector<BenchmarkRecord>& records);
/// Inverse of emit_csv. Throws std::runtime_error on malformed input.
std::vector<BenchmarkRecord> parse_csv(std::string_view text);
/// Long-format series "metric,x,y" for sum-of-costs, makespan and time ratios
/// of successful pairs (x is the instance id).
std::string emit_plot_data(const std::vector<BenchmarkRecord>& records);
std::string format_summary(const SummaryStats& s);

}  // namespace parhca
