#include "parhca/problem.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace parhca {

std::vector<std::string> check_instance(const ProblemInstance& instance) {
  std::vector<std::string> issues;
  const auto& map = instance.map;
  std::set<Coord> sources, goals;
  for (int i = 0; i < instance.agent_count(); ++i) {
    const auto& a = instance.agents[i];
    auto tag = "agent " + std::to_string(i) + ": ";
    bool endpoints_ok = true;
    if (!map.passable(a.source)) {
      issues.push_back(tag + "source is blocked or out of bounds");
      endpoints_ok = false;
    }
    if (!map.passable(a.goal)) {
      issues.push_back(tag + "goal is blocked or out of bounds");
      endpoints_ok = false;
    }
    if (!sources.insert(a.source).second) issues.push_back(tag + "duplicate source");
    if (!goals.insert(a.goal).second) issues.push_back(tag + "duplicate goal");
    if (endpoints_ok && !astar_static(map, a.source, a.goal))
      issues.push_back(tag + "goal unreachable from source");
  }
  return issues;
}

PriorityOrder identity_order(int n_agents) {
  PriorityOrder order(n_agents);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

PriorityOrder random_order(int n_agents, std::uint64_t seed) {
  auto order = identity_order(n_agents);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

Solution make_solution(std::vector<TimedPath> paths) {
  Solution s;
  for (const auto& p : paths) {
    s.sum_of_costs += p.cost();
    s.makespan = std::max(s.makespan, p.cost());
  }
  s.paths = std::move(paths);
  return s;
}

std::string write_paths(const std::vector<TimedPath>& paths) {
  std::ostringstream out;
  for (const auto& p : paths) {
    out << p.agent << ' ' << (p.states.empty() ? 0 : p.start_time());
    for (const auto& s : p.states) out << ' ' << s.cell.x << ',' << s.cell.y;
    out << '\n';
  }
  return out.str();
}

std::vector<TimedPath> read_paths(std::string_view text) {
  std::vector<TimedPath> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    TimedPath p;
    int t = 0;
    if (!(fields >> p.agent >> t))
      throw std::runtime_error("paths line " + std::to_string(row) + ": missing agent or time");
    std::string tok;
    while (fields >> tok) {
      auto comma = tok.find(',');
      try {
        if (comma == std::string::npos) throw std::invalid_argument("no comma");
        std::size_t used_x = 0, used_y = 0;
        int x = std::stoi(tok.substr(0, comma), &used_x);
        int y = std::stoi(tok.substr(comma + 1), &used_y);
        if (used_x != comma || used_y != tok.size() - comma - 1)
          throw std::invalid_argument("junk");
        p.states.push_back({{x, y}, t++});
      } catch (const std::logic_error&) {
        throw std::runtime_error("paths line " + std::to_string(row) + ": bad cell '" + tok +
                                 "'");
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace parhca
