#pragma once

#include <vector>

#include "parhca/conflict.hpp"

namespace parhca {

/// One connected piece of an intersection graph, relabelled 0..n-1.
/// `ids[v]` is the agent behind local vertex v; ids are ascending.
struct ComponentGraph {
  std::vector<AgentId> ids;
  std::vector<std::vector<int>> adjacency;

  int size() const { return static_cast<int>(ids.size()); }
  static ComponentGraph induced(const IntersectionGraph& g,
                                const std::vector<AgentId>& members);
};

inline constexpr int kDefaultExactThreshold = 10;
inline constexpr int kMaxExactNodes = 64;

/// Maximum independent set by branch and bound. Among maximum sets the one
/// with the lexicographically smallest sorted id list is returned.
/// Throws std::invalid_argument above kMaxExactNodes vertices.
std::vector<AgentId> mis_exact(const ComponentGraph& g);

/// Minimum-degree greedy: repeatedly take the lowest-degree remaining vertex
/// (smallest id on ties) and drop its neighbours. Always maximal.
std::vector<AgentId> mis_greedy(const ComponentGraph& g);

/// Union over connected components of mis_exact (components of at most
/// `exact_threshold` vertices) or mis_greedy. Sorted.
std::vector<AgentId> independent_set(const IntersectionGraph& g,
                                     int exact_threshold = kDefaultExactThreshold,
                                     unsigned workers = 1);

}  // namespace parhca
