#include "parhca/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <sstream>

namespace parhca {

namespace {

int manhattan(Coord a, Coord b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

std::string describe(Coord c, int t) {
  std::ostringstream s;
  s << "(" << c.x << "," << c.y << ") at t=" << t;
  return s.str();
}

// Open-list order shared by every search here: lower f first, then deeper g,
// then lower y, then lower x.
template <typename Node>
bool worse(const Node& a, const Node& b, int a_y, int a_x, int b_y, int b_x) {
  if (a.f != b.f) return a.f > b.f;
  if (a.g != b.g) return a.g < b.g;
  if (a_y != b_y) return a_y > b_y;
  return a_x > b_x;
}

}  // namespace

// ---------------------------------------------------------------------------
// ReservationTable

bool ReservationTable::vertex_reserved(int cell, int t) const {
  return vertices_.contains(vertex_key(cell, t));
}

bool ReservationTable::edge_reserved(int from, int to, int t) const {
  return edges_.contains(edge_key(from, to, t));
}

bool ReservationTable::occupied(int cell, int t) const {
  if (vertex_reserved(cell, t)) return true;
  auto it = goal_stays_.find(cell);
  return it != goal_stays_.end() && t >= it->second;
}

int ReservationTable::last_occupied(int cell) const {
  if (goal_stays_.contains(cell)) return kForever;
  auto it = last_vertex_.find(cell);
  return it == last_vertex_.end() ? -1 : it->second;
}

std::optional<int> ReservationTable::goal_stay_from(int cell) const {
  auto it = goal_stays_.find(cell);
  if (it == goal_stays_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> ReservationTable::find_conflict(const TimedPath& path,
                                                           const GridMap& map) const {
  if (path.states.empty()) return "empty path";
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    const auto& s = path.states[k];
    if (!map.passable(s.cell)) return "impassable cell " + describe(s.cell, s.t);
    int cell = map.index(s.cell);
    if (occupied(cell, s.t)) return "vertex reserved " + describe(s.cell, s.t);
    if (k > 0) {
      const auto& prev = path.states[k - 1];
      int from = map.index(prev.cell);
      if (from != cell && edge_reserved(from, cell, prev.t))
        return "edge reserved into " + describe(s.cell, s.t);
    }
  }
  const auto& last = path.states.back();
  if (last_occupied(map.index(last.cell)) >= last.t)
    return "goal stay blocked " + describe(last.cell, last.t);
  return std::nullopt;
}

void ReservationTable::insert(const TimedPath& path, const GridMap& map) {
  if (auto why = find_conflict(path, map))
    throw ReservationConflict("agent " + std::to_string(path.agent) + ": " + *why);
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    const auto& s = path.states[k];
    int cell = map.index(s.cell);
    vertices_.insert(vertex_key(cell, s.t));
    auto [it, inserted] = last_vertex_.try_emplace(cell, s.t);
    if (!inserted) it->second = std::max(it->second, s.t);
    last_time_ = std::max(last_time_, s.t);
    if (k > 0) {
      const auto& prev = path.states[k - 1];
      int from = map.index(prev.cell);
      if (from != cell) {
        edges_.insert(edge_key(from, cell, prev.t));
        edges_.insert(edge_key(cell, from, prev.t));
      }
    }
  }
  goal_stays_[map.index(path.states.back().cell)] = path.states.back().t;
}

void insert_path(ReservationTable& rt, const TimedPath& path, const GridMap& map) {
  rt.insert(path, map);
}

// ---------------------------------------------------------------------------
// Static A*

std::optional<std::vector<Coord>> astar_static(const GridMap& map, Coord start,
                                               Coord goal) {
  if (!map.passable(start) || !map.passable(goal))
    throw std::invalid_argument("A* endpoint is blocked or out of bounds");

  struct Node {
    int f, g, cell;
  };
  auto cmp = [&map](const Node& a, const Node& b) {
    Coord ca = map.coord(a.cell), cb = map.coord(b.cell);
    return worse(a, b, ca.y, ca.x, cb.y, cb.x);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);
  std::vector<int> g(map.cell_count(), -1);
  std::vector<int> parent(map.cell_count(), -1);
  std::vector<std::uint8_t> closed(map.cell_count(), 0);

  int s = map.index(start), target = map.index(goal);
  g[s] = 0;
  open.push({manhattan(start, goal), 0, s});
  while (!open.empty()) {
    Node n = open.top();
    open.pop();
    if (closed[n.cell]) continue;
    closed[n.cell] = 1;
    if (n.cell == target) {
      std::vector<Coord> path;
      for (int c = target; c != -1; c = parent[c]) path.push_back(map.coord(c));
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Coord nb : neighbors4(map.coord(n.cell), map)) {
      int k = map.index(nb);
      if (closed[k]) continue;
      if (g[k] == -1 || n.g + 1 < g[k]) {
        g[k] = n.g + 1;
        parent[k] = n.cell;
        open.push({g[k] + manhattan(nb, goal), g[k], k});
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Reverse Resumable A*

ReverseResumableAStar::ReverseResumableAStar(const GridMap& map, Coord goal,
                                             Coord origin)
    : map_(&map),
      goal_(goal),
      origin_(origin),
      g_(map.cell_count(), -1),
      closed_(map.cell_count(), 0) {
  if (!map.passable(goal)) throw std::invalid_argument("RRA* goal is blocked");
  int k = map.index(goal);
  g_[k] = 0;
  open_.push_back({heuristic(k), 0, k});
}

bool ReverseResumableAStar::Worse::operator()(const OpenEntry& a,
                                              const OpenEntry& b) const {
  if (a.f != b.f) return a.f > b.f;
  if (a.g != b.g) return a.g < b.g;
  return a.cell > b.cell;
}

int ReverseResumableAStar::heuristic(int cell) const {
  return manhattan(map_->coord(cell), origin_);
}

bool ReverseResumableAStar::resume(int target) {
  while (!open_.empty()) {
    std::pop_heap(open_.begin(), open_.end(), Worse{});
    OpenEntry n = open_.back();
    open_.pop_back();
    if (closed_[n.cell]) continue;
    closed_[n.cell] = 1;
    ++expanded_;
    for (Coord nb : neighbors4(map_->coord(n.cell), *map_)) {
      int k = map_->index(nb);
      if (closed_[k]) continue;
      if (g_[k] == -1 || n.g + 1 < g_[k]) {
        g_[k] = n.g + 1;
        open_.push_back({g_[k] + heuristic(k), g_[k], k});
        std::push_heap(open_.begin(), open_.end(), Worse{});
      }
    }
    if (n.cell == target) return true;
  }
  return false;
}

std::optional<int> ReverseResumableAStar::distance(Coord from) {
  if (!map_->passable(from)) return std::nullopt;
  int k = map_->index(from);
  if (!closed_[k] && !resume(k)) return std::nullopt;
  return g_[k];
}

std::optional<int> rra_query(ReverseResumableAStar& state, Coord from) {
  return state.distance(from);
}

// ---------------------------------------------------------------------------
// Space-time A*

std::optional<TimedPath> space_time_astar(const GridMap& map, AgentId agent,
                                          Coord start, Coord goal,
                                          const ReservationTable& rt,
                                          ReverseResumableAStar& heuristic,
                                          const SpaceTimeOptions& options) {
  if (!map.passable(start) || !map.passable(goal))
    throw std::invalid_argument("space-time A* endpoint is blocked or out of bounds");
  if (heuristic.goal() != goal)
    throw std::invalid_argument("heuristic was built for a different goal");

  const int t0 = options.start_time;
  const int cells = map.cell_count();
  const int horizon =
      options.horizon.value_or(std::max(rt.last_finite_time(), t0) + cells);
  const int start_cell = map.index(start);
  const int goal_cell = map.index(goal);
  const int goal_free_after = rt.last_occupied(goal_cell);
  if (goal_free_after == ReservationTable::kForever) return std::nullopt;
  if (rt.occupied(start_cell, t0)) return std::nullopt;

  auto h0 = heuristic.distance(start);
  if (!h0 || t0 + *h0 > horizon) return std::nullopt;

  struct Node {
    int cell, t, parent;
  };
  struct Entry {
    int f, g, y, x, node;
  };
  auto cmp = [](const Entry& a, const Entry& b) { return worse(a, b, a.y, a.x, b.y, b.x); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> open(cmp);
  std::vector<Node> nodes;
  std::unordered_set<std::int64_t> seen;
  auto key = [cells](int cell, int t) {
    return static_cast<std::int64_t>(t) * cells + cell;
  };

  nodes.push_back({start_cell, t0, -1});
  seen.insert(key(start_cell, t0));
  open.push({*h0, 0, start.y, start.x, 0});

  std::size_t pops = 0;
  while (!open.empty()) {
    Entry e = open.top();
    open.pop();
    if (options.deadline && (pops++ & 0x3ff) == 0 && Clock::now() > *options.deadline)
      throw SearchTimeout();
    const Node cur = nodes[e.node];

    if (cur.cell == goal_cell && cur.t > goal_free_after) {
      TimedPath path{agent, {}};
      for (int n = e.node; n != -1; n = nodes[n].parent)
        path.states.push_back({map.coord(nodes[n].cell), nodes[n].t});
      std::reverse(path.states.begin(), path.states.end());
      return path;
    }
    if (cur.t >= horizon) continue;

    const int nt = cur.t + 1;
    Coord here = map.coord(cur.cell);
    auto moves = neighbors4(here, map);
    moves.push_back(here);
    for (Coord next : moves) {
      int nc = map.index(next);
      if (rt.occupied(nc, nt)) continue;
      if (nc != cur.cell && rt.edge_reserved(cur.cell, nc, cur.t)) continue;
      if (!seen.insert(key(nc, nt)).second) continue;
      auto h = heuristic.distance(next);
      if (!h || nt + *h > horizon) continue;
      int g = nt - t0;
      nodes.push_back({nc, nt, e.node});
      open.push({g + *h, g, next.y, next.x, static_cast<int>(nodes.size()) - 1});
    }
  }
  return std::nullopt;
}

std::optional<TimedPath> space_time_astar(const GridMap& map, AgentId agent,
                                          Coord start, Coord goal,
                                          const ReservationTable& rt,
                                          const SpaceTimeOptions& options) {
  ReverseResumableAStar heuristic(map, goal, start);
  return space_time_astar(map, agent, start, goal, rt, heuristic, options);
}

}  // namespace parhca
