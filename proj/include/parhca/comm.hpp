#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "parhca/conflict.hpp"

namespace parhca {

/// Link speed for the analytical communication model. The default reads
/// "10 MBps" as 10 megabytes per second.
struct CommConfig {
  double data_rate_bps = 8.0e7;
};

/// Bits exchanged in one round of the parallel solver.
struct IterationBits {
  std::uint64_t source_goal = 0;  // server -> pending agents
  std::uint64_t paths = 0;        // encoded candidate path segments
  std::uint64_t ig = 0;           // intersection reports

  std::uint64_t total() const { return source_goal + paths + ig; }
  friend bool operator==(const IterationBits&, const IterationBits&) = default;
};

struct CommLedger {
  std::vector<IterationBits> iterations;
  std::uint64_t reservation_table = 0;

  std::uint64_t source_goal_bits() const;
  std::uint64_t path_bits() const;
  std::uint64_t ig_bits() const;
  /// Everything, including the per-round source/goal broadcast.
  std::uint64_t total_bits() const;
  /// Reservation table plus path and intersection traffic only.
  std::uint64_t total_bits_without_source_goal() const;

  friend bool operator==(const CommLedger&, const CommLedger&) = default;
};

/// 2 * N * ceil(log2 M).
std::uint64_t bits_source_goal(int n_agents, int map_side);

/// Encoded size of every pending agent's candidate path in one round.
/// `pending_segments[i]` holds the segments of one pending agent.
std::uint64_t bits_paths_iteration(std::span<const std::vector<SubpathSegment>> pending_segments,
                                   int n_agents, int map_side);

/// Sum over reporting agents of 2 * ceil(log2 N) * E_i.
std::uint64_t bits_ig(std::span<const int> intersections_per_agent, int n_agents);

/// Sum over fixed paths of (ceil(log2 N) + 2 ceil(log2 M) + 3 (L_i + 1)).
std::uint64_t bits_rt(std::span<const int> path_lengths, int n_agents, int map_side);

/// Seconds spent on the wire for the whole solve.
double comm_time(const CommLedger& ledger, const CommConfig& cfg,
                 bool include_source_goal = true);

/// hca_time / (variant_time + comm_time). Throws std::invalid_argument for
/// non-positive compute times or negative communication time.
double speedup(double hca_seconds, double variant_seconds, double comm_seconds);

}  // namespace parhca
