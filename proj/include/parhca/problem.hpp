#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "parhca/grid_map.hpp"
#include "parhca/search.hpp"

namespace parhca {

struct AgentTask {
  Coord source;
  Coord goal;
  friend bool operator==(const AgentTask&, const AgentTask&) = default;
};

struct ProblemInstance {
  GridMap map;
  std::vector<AgentTask> agents;

  int agent_count() const { return static_cast<int>(agents.size()); }
  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

/// Empty when the instance is well formed: endpoints free, sources distinct,
/// goals distinct, each goal statically reachable from its source.
std::vector<std::string> check_instance(const ProblemInstance& instance);

using PriorityOrder = std::vector<AgentId>;

PriorityOrder identity_order(int n_agents);
PriorityOrder random_order(int n_agents, std::uint64_t seed);

struct Solution {
  std::vector<TimedPath> paths;  // indexed by agent id
  long long sum_of_costs = 0;
  int makespan = 0;
};

Solution make_solution(std::vector<TimedPath> paths);

/// Plain-text path listing, one line per path:
/// `<agent> <start time> x,y x,y ...`.
std::string write_paths(const std::vector<TimedPath>& paths);
/// Throws std::runtime_error on malformed lines.
std::vector<TimedPath> read_paths(std::string_view text);

}  // namespace parhca
