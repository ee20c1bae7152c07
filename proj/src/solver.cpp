#include "parhca/solver.hpp"

#include <algorithm>
#include <chrono>

#include "parhca/parallel.hpp"

namespace parhca {

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Clock::time_point deadline_after(double seconds) {
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(seconds));
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::success: return "success";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::timeout: return "timeout";
  }
  return "unknown";
}

HcaResult solve_hca(const ProblemInstance& instance, const PriorityOrder& order,
                    const HcaOptions& options) {
  const auto start = Clock::now();
  const auto deadline = deadline_after(options.timeout_seconds);
  const auto& map = instance.map;
  const int n = instance.agent_count();
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("priority order does not cover every agent");

  HcaResult result;
  ReservationTable rt;
  std::vector<TimedPath> paths(n);
  std::vector<std::uint8_t> planned(n, 0);
  SpaceTimeOptions search;
  search.deadline = deadline;

  try {
    for (AgentId id : order) {
      if (id < 0 || id >= n || planned[id])
        throw std::invalid_argument("priority order is not a permutation");
      planned[id] = 1;
      const auto& task = instance.agents[id];
      auto path = space_time_astar(map, id, task.source, task.goal, rt, search);
      if (!path) {
        result.status = SolveStatus::infeasible;
        result.blocked_agent = id;
        result.compute_seconds = seconds_since(start);
        return result;
      }
      rt.insert(*path, map);
      paths[id] = std::move(*path);
      if (Clock::now() > deadline) throw SearchTimeout();
    }
  } catch (const SearchTimeout&) {
    result.status = SolveStatus::timeout;
    result.compute_seconds = seconds_since(start);
    return result;
  }

  result.status = SolveStatus::success;
  result.solution = make_solution(std::move(paths));
  result.compute_seconds = seconds_since(start);
  return result;
}

VariantResult solve_variant(const ProblemInstance& instance, const VariantConfig& cfg) {
  const auto start = Clock::now();
  const auto deadline = deadline_after(cfg.timeout_seconds);
  const auto& map = instance.map;
  const int n = instance.agent_count();
  const int side = map.side();

  VariantResult result;
  auto& trace = result.trace;
  if (n == 0) {
    result.status = SolveStatus::success;
    result.solution = make_solution({});
    return result;
  }

  const Partitioning part(map, n);
  ReservationTable rt;
  std::vector<ReverseResumableAStar> heuristics;
  heuristics.reserve(n);
  for (const auto& task : instance.agents) heuristics.emplace_back(map, task.goal, task.source);

  std::vector<TimedPath> final_paths(n);
  std::vector<AgentId> pending(n);
  for (int i = 0; i < n; ++i) pending[i] = i;

  SpaceTimeOptions search;
  search.deadline = deadline;

  try {
    while (!pending.empty()) {
      const auto iter_start = Clock::now();
      IterationRecord rec;
      rec.pending = pending;

      std::vector<std::optional<TimedPath>> found(pending.size());
      std::vector<double> search_time(pending.size(), 0.0);
      parallel_for(pending.size(), cfg.workers, [&](std::size_t k) {
        const auto t0 = Clock::now();
        AgentId id = pending[k];
        const auto& task = instance.agents[id];
        found[k] = space_time_astar(map, id, task.source, task.goal, rt, heuristics[id], search);
        search_time[k] = seconds_since(t0);
      });
      for (std::size_t k = 0; k < pending.size(); ++k) {
        if (!found[k]) {
          result.status = SolveStatus::infeasible;
          result.blocked_agent = pending[k];
          trace.wall_seconds = seconds_since(start);
          return result;
        }
        rec.candidates.push_back(std::move(*found[k]));
      }
      rec.max_search_seconds = *std::max_element(search_time.begin(), search_time.end());

      auto build = build_intersection_graph(rec.candidates, part, map, cfg.workers);
      rec.ig_edges = build.graph.edges.size();

      const auto t_server = Clock::now();
      rec.fixed = independent_set(build.graph, cfg.exact_threshold, cfg.workers);
      if (rec.fixed.empty()) throw std::logic_error("independent set came back empty");

      rec.intersections.assign(n, 0);
      for (int k = 0; k < part.parts(); ++k) {
        AgentId owner = pending[static_cast<std::size_t>(k) % pending.size()];
        rec.intersections[owner] += static_cast<int>(build.reports[k].pairs.size());
      }
      rec.bits.source_goal = bits_source_goal(static_cast<int>(pending.size()), side);
      rec.bits.paths = bits_paths_iteration(build.segments, n, side);
      rec.bits.ig = bits_ig(rec.intersections, n);

      std::vector<AgentId> still_pending;
      std::size_t f = 0;
      for (std::size_t k = 0; k < pending.size(); ++k) {
        if (f < rec.fixed.size() && rec.fixed[f] == pending[k]) {
          rt.insert(rec.candidates[k], map);
          final_paths[pending[k]] = rec.candidates[k];
          ++f;
        } else {
          still_pending.push_back(pending[k]);
        }
      }
      pending = std::move(still_pending);
      rec.server_seconds = build.merge_seconds + seconds_since(t_server);

      rec.ideal_seconds = rec.max_search_seconds + build.max_split_seconds +
                          build.max_detect_seconds + rec.server_seconds;
      rec.wall_seconds = seconds_since(iter_start);
      trace.ideal_seconds += rec.ideal_seconds;
      trace.ledger.iterations.push_back(rec.bits);
      trace.iterations.push_back(std::move(rec));

      if (!pending.empty() && Clock::now() > deadline) throw SearchTimeout();
    }
  } catch (const SearchTimeout&) {
    result.status = SolveStatus::timeout;
    trace.wall_seconds = seconds_since(start);
    return result;
  }

  std::vector<int> lengths;
  for (const auto& p : final_paths) lengths.push_back(p.cost());
  trace.ledger.reservation_table = bits_rt(lengths, n, side);
  trace.wall_seconds = seconds_since(start);
  result.status = SolveStatus::success;
  result.solution = make_solution(std::move(final_paths));
  return result;
}

BenchmarkRecord compare(const ProblemInstance& instance, const PriorityOrder& order,
                        const VariantConfig& cfg, const HcaOptions& hca_options) {
  BenchmarkRecord rec;
  rec.agents = instance.agent_count();

  auto hca = solve_hca(instance, order, hca_options);
  rec.hca_seconds = hca.compute_seconds;
  auto variant = solve_variant(instance, cfg);
  rec.variant_wall_seconds = variant.trace.wall_seconds;
  rec.variant_ideal_seconds = variant.trace.ideal_seconds;
  rec.iterations = static_cast<int>(variant.trace.iterations.size());

  if (hca.status != SolveStatus::success) {
    rec.failure = "hca " + to_string(hca.status);
    return rec;
  }
  if (variant.status != SolveStatus::success) {
    rec.failure = "variant " + to_string(variant.status);
    return rec;
  }

  rec.ok = true;
  rec.hca_sum_of_costs = hca.solution->sum_of_costs;
  rec.hca_makespan = hca.solution->makespan;
  rec.variant_sum_of_costs = variant.solution->sum_of_costs;
  rec.variant_makespan = variant.solution->makespan;
  rec.comm_bits = variant.trace.ledger.total_bits();
  rec.comm_seconds = comm_time(variant.trace.ledger, cfg.comm);

  auto ratio = [](double num, double den) { return den == 0 ? (num == 0 ? 1.0 : 0.0) : num / den; };
  rec.sum_of_costs_ratio = ratio(static_cast<double>(rec.variant_sum_of_costs),
                                 static_cast<double>(rec.hca_sum_of_costs));
  rec.makespan_ratio = ratio(rec.variant_makespan, rec.hca_makespan);
  rec.time_ratio_wall = ratio(rec.variant_wall_seconds, rec.hca_seconds);
  rec.time_ratio_ideal = ratio(rec.variant_ideal_seconds, rec.hca_seconds);
  if (rec.hca_seconds > 0 && rec.variant_ideal_seconds > 0)
    rec.speedup = speedup(rec.hca_seconds, rec.variant_ideal_seconds, rec.comm_seconds);
  return rec;
}

}  // namespace parhca
