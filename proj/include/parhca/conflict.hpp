#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parhca/grid_map.hpp"
#include "parhca/problem.hpp"
#include "parhca/search.hpp"

namespace parhca {

/// Maximal time-contiguous run of a path inside one submap. The neighbouring
/// states on either side are kept so moves across the submap border can be
/// checked from both partitions.
struct SubpathSegment {
  AgentId agent = 0;
  int partition = 0;
  std::vector<TimedCell> states;
  std::optional<TimedCell> entered_from;
  std::optional<TimedCell> exits_to;

  /// Moves inside the segment (states - 1).
  int length() const { return static_cast<int>(states.size()) - 1; }
  bool ends_path() const { return !exits_to.has_value(); }

  friend bool operator==(const SubpathSegment&, const SubpathSegment&) = default;
};

/// One segment per change of partition id along the path. O(path length).
std::vector<SubpathSegment> split_path(const TimedPath& path, const Partitioning& part,
                                       const GridMap& map);

struct AgentPair {
  AgentId a = 0;  // a < b
  AgentId b = 0;

  static AgentPair of(AgentId x, AgentId y) { return x < y ? AgentPair{x, y} : AgentPair{y, x}; }
  friend constexpr auto operator<=>(const AgentPair&, const AgentPair&) = default;
};

struct ConflictReport {
  int partition = 0;
  std::vector<AgentPair> pairs;  // sorted, unique
};

/// Collisions visible from one submap: shared timed cells (a path that ends
/// here keeps its cell until `horizon`) and swaps over any edge with at least
/// one endpoint in the submap.
ConflictReport detect_conflicts_in_partition(int partition,
                                             std::span<const SubpathSegment> segments,
                                             const GridMap& map, int horizon);

struct IntersectionGraph {
  std::vector<AgentId> nodes;    // sorted
  std::vector<AgentPair> edges;  // sorted, unique

  std::vector<AgentId> neighbors(AgentId v) const;
};

struct IntersectionBuild {
  IntersectionGraph graph;
  std::vector<ConflictReport> reports;  // indexed by partition
  std::vector<std::vector<SubpathSegment>> segments;  // indexed like the input paths
  int horizon = 0;
  double max_split_seconds = 0;
  double max_detect_seconds = 0;
  double merge_seconds = 0;
};

/// Splits every path, runs partition-local detection concurrently and merges
/// the reports. `horizon` defaults to the latest arrival among `paths`.
IntersectionBuild build_intersection_graph(std::span<const TimedPath> paths,
                                           const Partitioning& part, const GridMap& map,
                                           unsigned workers = 1,
                                           std::optional<int> horizon = std::nullopt);

/// Components with ascending members, ordered by smallest member.
std::vector<std::vector<AgentId>> connected_components(const IntersectionGraph& g);

enum class ViolationKind {
  empty_path,
  wrong_agent,
  wrong_start,
  wrong_goal,
  time_gap,
  illegal_move,
  blocked_cell,
  vertex_conflict,
  edge_conflict,
};

struct Violation {
  ViolationKind kind;
  AgentId agent = 0;
  AgentId other = -1;
  Coord cell;
  int t = 0;

  std::string describe() const;
};

/// Every violation of path validity and pairwise collision freedom, with
/// agents parked at their final cell until the global makespan.
std::vector<Violation> validate_paths(const GridMap& map, std::span<const TimedPath> paths);
/// As validate_paths, plus endpoint checks against the instance.
std::vector<Violation> validate_solution(const ProblemInstance& instance,
                                         std::span<const TimedPath> paths);

}  // namespace parhca
