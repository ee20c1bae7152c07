#include "parhca/conflict.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "parhca/parallel.hpp"

namespace parhca {

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void sort_unique(std::vector<AgentPair>& pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

}  // namespace

std::vector<SubpathSegment> split_path(const TimedPath& path, const Partitioning& part,
                                       const GridMap& map) {
  std::vector<SubpathSegment> out;
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    const auto& s = path.states[k];
    int id = partition_of(s.cell, map, part);
    if (out.empty() || out.back().partition != id) {
      if (!out.empty()) out.back().exits_to = s;
      SubpathSegment seg{path.agent, id, {}, std::nullopt, std::nullopt};
      if (k > 0) seg.entered_from = path.states[k - 1];
      out.push_back(std::move(seg));
    }
    out.back().states.push_back(s);
  }
  return out;
}

ConflictReport detect_conflicts_in_partition(int partition,
                                             std::span<const SubpathSegment> segments,
                                             const GridMap& map, int horizon) {
  struct Occupancy {
    int cell, t;
    AgentId agent;
    auto operator<=>(const Occupancy&) const = default;
  };
  struct Move {
    int lo, hi, t;
    bool forward;  // lo -> hi
    AgentId agent;
    auto operator<=>(const Move&) const = default;
  };

  std::vector<Occupancy> occupancy;
  std::vector<Move> moves;
  std::unordered_map<int, std::vector<std::pair<int, AgentId>>> stays;  // cell -> (from, agent)

  auto add_move = [&](const TimedCell& a, const TimedCell& b, AgentId agent) {
    int u = map.index(a.cell), v = map.index(b.cell);
    if (u == v) return;
    moves.push_back({std::min(u, v), std::max(u, v), a.t, u < v, agent});
  };

  for (const auto& seg : segments) {
    for (std::size_t k = 0; k < seg.states.size(); ++k) {
      const auto& s = seg.states[k];
      occupancy.push_back({map.index(s.cell), s.t, seg.agent});
      if (k > 0) add_move(seg.states[k - 1], s, seg.agent);
    }
    if (seg.entered_from) add_move(*seg.entered_from, seg.states.front(), seg.agent);
    if (seg.exits_to) add_move(seg.states.back(), *seg.exits_to, seg.agent);
    if (seg.ends_path()) {
      const auto& last = seg.states.back();
      stays[map.index(last.cell)].emplace_back(last.t, seg.agent);
    }
  }

  ConflictReport report{partition, {}};
  auto& pairs = report.pairs;

  std::sort(occupancy.begin(), occupancy.end());
  for (std::size_t i = 0; i < occupancy.size();) {
    std::size_t j = i;
    while (j < occupancy.size() && occupancy[j].cell == occupancy[i].cell &&
           occupancy[j].t == occupancy[i].t)
      ++j;
    for (std::size_t a = i; a < j; ++a)
      for (std::size_t b = a + 1; b < j; ++b)
        if (occupancy[a].agent != occupancy[b].agent)
          pairs.push_back(AgentPair::of(occupancy[a].agent, occupancy[b].agent));
    i = j;
  }

  for (const auto& occ : occupancy) {
    auto it = stays.find(occ.cell);
    if (it == stays.end()) continue;
    for (auto [from, agent] : it->second)
      if (agent != occ.agent && occ.t >= from && occ.t <= horizon)
        pairs.push_back(AgentPair::of(agent, occ.agent));
  }
  for (const auto& [cell, list] : stays)
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b)
        if (list[a].second != list[b].second)
          pairs.push_back(AgentPair::of(list[a].second, list[b].second));

  std::sort(moves.begin(), moves.end());
  for (std::size_t i = 0; i < moves.size();) {
    std::size_t j = i;
    while (j < moves.size() && moves[j].lo == moves[i].lo && moves[j].hi == moves[i].hi &&
           moves[j].t == moves[i].t)
      ++j;
    for (std::size_t a = i; a < j; ++a)
      for (std::size_t b = a + 1; b < j; ++b)
        if (moves[a].forward != moves[b].forward && moves[a].agent != moves[b].agent)
          pairs.push_back(AgentPair::of(moves[a].agent, moves[b].agent));
    i = j;
  }

  sort_unique(pairs);
  return report;
}

std::vector<AgentId> IntersectionGraph::neighbors(AgentId v) const {
  std::vector<AgentId> out;
  for (const auto& e : edges) {
    if (e.a == v) out.push_back(e.b);
    if (e.b == v) out.push_back(e.a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntersectionBuild build_intersection_graph(std::span<const TimedPath> paths,
                                           const Partitioning& part, const GridMap& map,
                                           unsigned workers, std::optional<int> horizon) {
  IntersectionBuild out;
  out.horizon = 0;
  for (const auto& p : paths) out.horizon = std::max(out.horizon, p.arrival_time());
  if (horizon) out.horizon = *horizon;

  out.segments.resize(paths.size());
  std::vector<double> split_time(paths.size(), 0.0);
  parallel_for(paths.size(), workers, [&](std::size_t i) {
    auto t0 = Clock::now();
    out.segments[i] = split_path(paths[i], part, map);
    split_time[i] = seconds_since(t0);
  });

  auto t_group = Clock::now();
  std::vector<std::vector<SubpathSegment>> by_partition(part.parts());
  for (const auto& segs : out.segments)
    for (const auto& s : segs) by_partition[s.partition].push_back(s);
  double serial = seconds_since(t_group);

  out.reports.resize(part.parts());
  std::vector<double> detect_time(part.parts(), 0.0);
  parallel_for(by_partition.size(), workers, [&](std::size_t k) {
    auto t0 = Clock::now();
    out.reports[k] = detect_conflicts_in_partition(static_cast<int>(k), by_partition[k],
                                                   map, out.horizon);
    detect_time[k] = seconds_since(t0);
  });

  auto t_merge = Clock::now();
  for (const auto& p : paths) out.graph.nodes.push_back(p.agent);
  std::sort(out.graph.nodes.begin(), out.graph.nodes.end());
  for (const auto& r : out.reports)
    out.graph.edges.insert(out.graph.edges.end(), r.pairs.begin(), r.pairs.end());
  sort_unique(out.graph.edges);
  out.merge_seconds = serial + seconds_since(t_merge);

  for (double t : split_time) out.max_split_seconds = std::max(out.max_split_seconds, t);
  for (double t : detect_time) out.max_detect_seconds = std::max(out.max_detect_seconds, t);
  return out;
}

std::vector<std::vector<AgentId>> connected_components(const IntersectionGraph& g) {
  std::unordered_map<AgentId, std::size_t> slot;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) slot[g.nodes[i]] = i;
  std::vector<std::vector<std::size_t>> adj(g.nodes.size());
  for (const auto& e : g.edges) {
    auto a = slot.at(e.a), b = slot.at(e.b);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  std::vector<std::vector<AgentId>> out;
  std::vector<std::uint8_t> visited(g.nodes.size(), 0);
  for (std::size_t root = 0; root < g.nodes.size(); ++root) {
    if (visited[root]) continue;
    std::vector<AgentId> comp;
    std::vector<std::size_t> stack{root};
    visited[root] = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      comp.push_back(g.nodes[v]);
      for (auto w : adj[v])
        if (!visited[w]) {
          visited[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::string Violation::describe() const {
  static constexpr const char* names[] = {
      "empty path",   "wrong agent id", "wrong start",     "wrong goal",   "time gap",
      "illegal move", "blocked cell",   "vertex conflict", "edge conflict"};
  std::ostringstream s;
  s << names[static_cast<int>(kind)] << ": agent " << agent;
  if (other >= 0) s << " vs agent " << other;
  s << " at (" << cell.x << "," << cell.y << ") t=" << t;
  return s.str();
}

std::vector<Violation> validate_paths(const GridMap& map, std::span<const TimedPath> paths) {
  std::vector<Violation> out;
  int makespan = 0;
  bool well_formed = true;

  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    AgentId id = static_cast<AgentId>(i);
    if (p.agent != id) out.push_back({ViolationKind::wrong_agent, id, -1, {}, 0});
    if (p.states.empty()) {
      out.push_back({ViolationKind::empty_path, id, -1, {}, 0});
      well_formed = false;
      continue;
    }
    if (p.states.front().t != 0) {
      out.push_back({ViolationKind::time_gap, id, -1, p.states.front().cell,
                     p.states.front().t});
      well_formed = false;
    }
    for (std::size_t k = 0; k < p.states.size(); ++k) {
      const auto& s = p.states[k];
      if (!map.passable(s.cell)) {
        out.push_back({ViolationKind::blocked_cell, id, -1, s.cell, s.t});
        well_formed = false;
      }
      if (k == 0) continue;
      const auto& prev = p.states[k - 1];
      if (s.t != prev.t + 1) {
        out.push_back({ViolationKind::time_gap, id, -1, s.cell, s.t});
        well_formed = false;
      }
      if (std::abs(s.cell.x - prev.cell.x) + std::abs(s.cell.y - prev.cell.y) > 1)
        out.push_back({ViolationKind::illegal_move, id, -1, s.cell, s.t});
    }
    makespan = std::max(makespan, p.states.back().t);
  }
  if (!well_formed) return out;

  // position of every agent at every time up to the makespan
  auto at = [&](const TimedPath& p, int t) {
    return t < static_cast<int>(p.states.size()) ? p.states[t].cell : p.states.back().cell;
  };
  std::unordered_map<int, AgentId> here;
  for (int t = 0; t <= makespan; ++t) {
    here.clear();
    for (std::size_t i = 0; i < paths.size(); ++i) {
      Coord c = at(paths[i], t);
      auto [it, fresh] = here.try_emplace(map.index(c), static_cast<AgentId>(i));
      if (!fresh)
        out.push_back({ViolationKind::vertex_conflict, it->second, static_cast<AgentId>(i),
                       c, t});
    }
    if (t == makespan) break;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      Coord from = at(paths[i], t), to = at(paths[i], t + 1);
      if (from == to) continue;
      auto it = here.find(map.index(to));
      if (it == here.end() || it->second <= static_cast<AgentId>(i)) continue;
      const auto& other = paths[it->second];
      if (at(other, t + 1) == from)
        out.push_back({ViolationKind::edge_conflict, static_cast<AgentId>(i), it->second,
                       from, t});
    }
  }
  return out;
}

std::vector<Violation> validate_solution(const ProblemInstance& instance,
                                         std::span<const TimedPath> paths) {
  std::vector<Violation> out;
  if (paths.size() != instance.agents.size()) {
    out.push_back({ViolationKind::empty_path, static_cast<AgentId>(paths.size()), -1, {}, 0});
    return out;
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    if (p.states.empty()) continue;
    const auto& task = instance.agents[i];
    AgentId id = static_cast<AgentId>(i);
    if (p.states.front().cell != task.source)
      out.push_back({ViolationKind::wrong_start, id, -1, p.states.front().cell, 0});
    if (p.states.back().cell != task.goal)
      out.push_back({ViolationKind::wrong_goal, id, -1, p.states.back().cell,
                     p.states.back().t});
  }
  auto rest = validate_paths(instance.map, paths);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace parhca
