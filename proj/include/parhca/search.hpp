#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "parhca/grid_map.hpp"

namespace parhca {

using AgentId = int;
using Clock = std::chrono::steady_clock;

struct TimedCell {
  Coord cell;
  int t = 0;

  friend constexpr auto operator<=>(const TimedCell&, const TimedCell&) = default;
};

/// One agent's plan: unit-time steps, each a wait or a 4-neighbour move.
struct TimedPath {
  AgentId agent = 0;
  std::vector<TimedCell> states;

  int start_time() const { return states.front().t; }
  int arrival_time() const { return states.back().t; }
  Coord goal() const { return states.back().cell; }
  /// Arrival minus departure, waits included.
  int cost() const { return states.empty() ? 0 : arrival_time() - start_time(); }

  friend bool operator==(const TimedPath&, const TimedPath&) = default;
};

class ReservationConflict : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Space-time occupancy of already fixed paths: timed vertices, timed
/// directed edges and indefinite goal stays.
class ReservationTable {
 public:
  static constexpr int kForever = std::numeric_limits<int>::max();

  bool vertex_reserved(int cell, int t) const;
  /// Move cell `from` -> `to` during [t, t + 1] crosses a reserved traversal.
  bool edge_reserved(int from, int to, int t) const;
  /// Cell occupied at t by a vertex reservation or an active goal stay.
  bool occupied(int cell, int t) const;
  /// Latest time `cell` is occupied, kForever when someone parks there, -1 if never.
  int last_occupied(int cell) const;
  std::optional<int> goal_stay_from(int cell) const;

  /// Largest finite reserved time, -1 when empty.
  int last_finite_time() const { return last_time_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t goal_stay_count() const { return goal_stays_.size(); }
  bool empty() const { return vertices_.empty() && goal_stays_.empty(); }

  /// Checks `path` against current contents, listing the first conflict
  /// found or nullopt if it fits.
  std::optional<std::string> find_conflict(const TimedPath& path,
                                           const GridMap& map) const;
  /// Reserves every state, both directions of every move and the goal stay.
  /// Throws ReservationConflict if the path does not fit.
  void insert(const TimedPath& path, const GridMap& map);

 private:
  static std::uint64_t vertex_key(int cell, int t) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t)) << 32) |
           static_cast<std::uint32_t>(cell);
  }
  static std::uint64_t edge_key(int from, int to, int t) {
    // 21 bits each is plenty for cells (2M) and times
    return (static_cast<std::uint64_t>(t) << 42) |
           (static_cast<std::uint64_t>(from) << 21) | static_cast<std::uint64_t>(to);
  }

  std::unordered_set<std::uint64_t> vertices_;
  std::unordered_set<std::uint64_t> edges_;
  std::unordered_map<int, int> goal_stays_;
  std::unordered_map<int, int> last_vertex_;
  int last_time_ = -1;
};

void insert_path(ReservationTable& rt, const TimedPath& path, const GridMap& map);

/// Shortest 4-connected path on static obstacles (Manhattan heuristic).
/// Throws std::invalid_argument when an endpoint is blocked.
std::optional<std::vector<Coord>> astar_static(const GridMap& map, Coord start,
                                               Coord goal);

/// Backward A* from a goal that pauses once the queried cell is closed and
/// resumes on the next query. Closed cells hold exact static distances.
class ReverseResumableAStar {
 public:
  /// `origin` is the agent's start; it steers the backward search.
  ReverseResumableAStar(const GridMap& map, Coord goal, Coord origin);

  std::optional<int> distance(Coord from);
  Coord goal() const { return goal_; }
  std::size_t expanded() const { return expanded_; }

 private:
  struct OpenEntry {
    int f, g, cell;
  };
  struct Worse {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const;
  };

  bool resume(int target);
  int heuristic(int cell) const;

  const GridMap* map_;
  Coord goal_;
  Coord origin_;
  std::vector<int> g_;
  std::vector<std::uint8_t> closed_;
  std::vector<OpenEntry> open_;
  std::size_t expanded_ = 0;
};

std::optional<int> rra_query(ReverseResumableAStar& state, Coord from);

struct SpaceTimeOptions {
  int start_time = 0;
  /// Latest state time considered. Default: last finite reservation time
  /// plus the number of map cells.
  std::optional<int> horizon;
  std::optional<Clock::time_point> deadline;
};

struct SearchTimeout : std::runtime_error {
  SearchTimeout() : std::runtime_error("search deadline exceeded") {}
};

/// Minimum-arrival path from start to goal that avoids every reservation
/// and can park at the goal forever. Absent when none exists within the
/// horizon. Throws SearchTimeout when the deadline passes.
std::optional<TimedPath> space_time_astar(const GridMap& map, AgentId agent,
                                          Coord start, Coord goal,
                                          const ReservationTable& rt,
                                          ReverseResumableAStar& heuristic,
                                          const SpaceTimeOptions& options = {});

std::optional<TimedPath> space_time_astar(const GridMap& map, AgentId agent,
                                          Coord start, Coord goal,
                                          const ReservationTable& rt,
                                          const SpaceTimeOptions& options = {});

}  // namespace parhca
