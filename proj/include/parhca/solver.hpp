#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parhca/comm.hpp"
#include "parhca/conflict.hpp"
#include "parhca/mis.hpp"
#include "parhca/problem.hpp"

namespace parhca {

enum class SolveStatus { success, infeasible, timeout };

std::string to_string(SolveStatus s);

struct HcaOptions {
  double timeout_seconds = 60.0;
};

struct HcaResult {
  SolveStatus status = SolveStatus::infeasible;
  std::optional<Solution> solution;
  AgentId blocked_agent = -1;  // first agent without a path on infeasibility
  double compute_seconds = 0;
};

/// Prioritized planning: agents plan one at a time in `order`, each with
/// space-time A* against the reservations of all earlier agents.
HcaResult solve_hca(const ProblemInstance& instance, const PriorityOrder& order,
                    const HcaOptions& options = {});

struct VariantConfig {
  int exact_threshold = kDefaultExactThreshold;
  unsigned workers = 1;
  CommConfig comm;
  double timeout_seconds = 60.0;
};

struct IterationRecord {
  std::vector<AgentId> pending;
  std::vector<TimedPath> candidates;  // parallel to `pending`
  std::size_t ig_edges = 0;
  std::vector<AgentId> fixed;
  /// Intersections reported per agent id (size N); partitions are owned
  /// round-robin by the pending agents.
  std::vector<int> intersections;
  IterationBits bits;
  double max_search_seconds = 0;
  double server_seconds = 0;   // merge, independent set, reservation update
  double ideal_seconds = 0;    // slowest agent per parallel phase + server work
  double wall_seconds = 0;
};

struct SolveTrace {
  std::vector<IterationRecord> iterations;
  CommLedger ledger;
  double wall_seconds = 0;
  double ideal_seconds = 0;
};

struct VariantResult {
  SolveStatus status = SolveStatus::infeasible;
  std::optional<Solution> solution;
  AgentId blocked_agent = -1;
  SolveTrace trace;
};

/// Parallel rounds: every pending agent plans against the current
/// reservations, conflicts are found per submap, an independent set of the
/// intersection graph is fixed, and the rest replan. At least one agent is
/// fixed per round.
VariantResult solve_variant(const ProblemInstance& instance, const VariantConfig& cfg = {});

/// One paired run of both solvers on one instance.
struct BenchmarkRecord {
  int instance_id = 0;
  std::uint64_t seed = 0;
  int agents = 0;
  bool ok = false;
  std::string failure;  // empty when ok

  long long hca_sum_of_costs = 0;
  int hca_makespan = 0;
  double hca_seconds = 0;

  long long variant_sum_of_costs = 0;
  int variant_makespan = 0;
  double variant_wall_seconds = 0;
  double variant_ideal_seconds = 0;
  int iterations = 0;

  std::uint64_t comm_bits = 0;
  double comm_seconds = 0;

  double sum_of_costs_ratio = 0;
  double makespan_ratio = 0;
  double time_ratio_wall = 0;
  double time_ratio_ideal = 0;
  double speedup = 0;

  friend bool operator==(const BenchmarkRecord&, const BenchmarkRecord&) = default;
};

/// Ratios are variant over HCA*. Speedup uses the idealised variant time.
BenchmarkRecord compare(const ProblemInstance& instance, const PriorityOrder& order,
                        const VariantConfig& cfg, const HcaOptions& hca_options = {});

}  // namespace parhca
