#include "parhca/mis.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "parhca/parallel.hpp"

namespace parhca {

ComponentGraph ComponentGraph::induced(const IntersectionGraph& g,
                                       const std::vector<AgentId>& members) {
  ComponentGraph c;
  c.ids = members;
  std::sort(c.ids.begin(), c.ids.end());
  std::unordered_map<AgentId, int> local;
  for (int i = 0; i < c.size(); ++i) local[c.ids[i]] = i;
  c.adjacency.resize(c.ids.size());
  for (const auto& e : g.edges) {
    auto a = local.find(e.a), b = local.find(e.b);
    if (a == local.end() || b == local.end()) continue;
    c.adjacency[a->second].push_back(b->second);
    c.adjacency[b->second].push_back(a->second);
  }
  for (auto& list : c.adjacency) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return c;
}

namespace {

using Mask = std::uint64_t;

struct BranchAndBound {
  std::vector<Mask> neighbors;
  int n = 0;
  Mask best = 0;
  int best_size = -1;

  // Vertices are decided in ascending order, include-branch first, and only
  // strictly larger sets replace the incumbent. The first maximum reached is
  // therefore the lexicographically smallest one.
  void search(int v, Mask chosen, int size, Mask candidates) {
    if (size + std::popcount(candidates) <= best_size) return;
    while (v < n && !(candidates >> v & 1)) ++v;
    if (v == n) {
      best = chosen;
      best_size = size;
      return;
    }
    Mask bit = Mask{1} << v;
    search(v + 1, chosen | bit, size + 1, candidates & ~bit & ~neighbors[v]);
    search(v + 1, chosen, size, candidates & ~bit);
  }
};

}  // namespace

std::vector<AgentId> mis_exact(const ComponentGraph& g) {
  if (g.size() > kMaxExactNodes)
    throw std::invalid_argument("component too large for exact independent set");
  BranchAndBound bb;
  bb.n = g.size();
  bb.neighbors.assign(g.size(), 0);
  for (int v = 0; v < g.size(); ++v)
    for (int w : g.adjacency[v]) bb.neighbors[v] |= Mask{1} << w;
  Mask all = g.size() == 64 ? ~Mask{0} : (Mask{1} << g.size()) - 1;
  bb.search(0, 0, 0, all);

  std::vector<AgentId> out;
  for (int v = 0; v < g.size(); ++v)
    if (bb.best >> v & 1) out.push_back(g.ids[v]);
  return out;
}

std::vector<AgentId> mis_greedy(const ComponentGraph& g) {
  const int n = g.size();
  std::vector<int> degree(n);
  std::vector<std::uint8_t> alive(n, 1);
  for (int v = 0; v < n; ++v) degree[v] = static_cast<int>(g.adjacency[v].size());

  auto remove = [&](int v) {
    alive[v] = 0;
    for (int w : g.adjacency[v])
      if (alive[w]) --degree[w];
  };

  std::vector<AgentId> out;
  for (;;) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (alive[v] && (pick == -1 || degree[v] < degree[pick])) pick = v;
    if (pick == -1) break;
    out.push_back(g.ids[pick]);
    std::vector<int> drop{pick};
    for (int w : g.adjacency[pick])
      if (alive[w]) drop.push_back(w);
    for (int v : drop)
      if (alive[v]) remove(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AgentId> independent_set(const IntersectionGraph& g, int exact_threshold,
                                     unsigned workers) {
  auto components = connected_components(g);
  std::vector<std::vector<AgentId>> picked(components.size());
  parallel_for(components.size(), workers, [&](std::size_t k) {
    if (components[k].size() == 1) {
      picked[k] = components[k];
      return;
    }
    auto cg = ComponentGraph::induced(g, components[k]);
    picked[k] = cg.size() <= exact_threshold && cg.size() <= kMaxExactNodes ? mis_exact(cg)
                                                                            : mis_greedy(cg);
  });
  std::vector<AgentId> out;
  for (const auto& p : picked) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace parhca
