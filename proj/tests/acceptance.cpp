// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "parhca/bench.hpp"
#include "parhca/codec.hpp"
#include "parhca/instances.hpp"
#include "parhca/solver.hpp"

using namespace parhca;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct SuiteInstance {
  ProblemInstance instance;
  std::vector<PriorityOrder> orders;
};

constexpr int kSuiteSize = 100;
constexpr int kOrders = 5;

// 100 random 50x50 maps at obstacle probability 0.1, 16 agents each.
const std::vector<SuiteInstance>& suite() {
  static const std::vector<SuiteInstance> s = [] {
    std::vector<SuiteInstance> out;
    for (int i = 0; i < kSuiteSize; ++i) {
      auto seed = instance_seed(2024, i);
      auto map = generate_random_map(50, 50, 0.1, seed);
      SuiteInstance si{generate_instance(map, 16, seed + 1).instance, {}};
      for (int k = 0; k < kOrders; ++k) si.orders.push_back(random_order(16, seed + 2 + k));
      out.push_back(std::move(si));
    }
    return out;
  }();
  return s;
}

struct SuiteRuns {
  std::vector<std::vector<HcaResult>> hca;  // [instance][order]
  std::vector<VariantResult> variant;
};

const SuiteRuns& suite_runs() {
  static const SuiteRuns runs = [] {
    SuiteRuns r;
    for (const auto& si : suite()) {
      std::vector<HcaResult> per_order;
      for (const auto& order : si.orders) per_order.push_back(solve_hca(si.instance, order));
      r.hca.push_back(std::move(per_order));
      r.variant.push_back(solve_variant(si.instance));
    }
    return r;
  }();
  return runs;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

Outcome search_oracle() {
  std::mt19937_64 rng(101);
  int checked = 0, matched = 0, reachable = 0, delayed = 0;
  while (checked < 250) {
    int w = std::uniform_int_distribution<int>(1, 8)(rng);
    int h = std::uniform_int_distribution<int>(1, 8)(rng);
    auto m = generate_random_map(w, h, 0.2, rng());
    if (m.free_count() < 2) continue;
    ReservationTable rt;
    std::vector<TimedPath> fixed;
    int k = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < k; ++i) {
      auto walk = oracle::random_walk(m, i + 1, std::uniform_int_distribution<int>(0, 10)(rng), rng);
      if (rt.find_conflict(walk, m)) continue;
      rt.insert(walk, m);
      fixed.push_back(walk);
    }
    Coord start = oracle::random_walk(m, 0, 0, rng).states[0].cell;
    Coord goal = oracle::random_walk(m, 0, 0, rng).states[0].cell;
    SpaceTimeOptions opts;
    opts.horizon = 64;
    auto want = oracle::time_expanded_cost(m, start, goal, fixed, 0, 64);
    auto got = space_time_astar(m, 0, start, goal, rt, opts);
    ++checked;
    if (want) {
      ++reachable;
      delayed += *want > *oracle::bfs_distance(m, start, goal);
    }
    bool same = want.has_value() == got.has_value() && (!want || got->cost() == *want);
    if (same && got && rt.find_conflict(*got, m)) same = false;
    matched += same;
  }
  return {matched == checked, std::to_string(matched) + "/" + std::to_string(checked) +
                                  " matched (" + std::to_string(reachable) + " reachable, " +
                                  std::to_string(delayed) + " delayed by reservations)"};
}

Outcome conflict_oracle() {
  std::mt19937_64 rng(202);
  int checked = 0, matched = 0, edges = 0;
  for (int trial = 0; trial < 250; ++trial) {
    auto m = generate_random_map(10, 10, 0.1, rng());
    int n = std::uniform_int_distribution<int>(1, 10)(rng);
    std::vector<TimedPath> paths;
    for (int i = 0; i < n; ++i)
      paths.push_back(oracle::random_walk(m, i, std::uniform_int_distribution<int>(0, 20)(rng), rng));
    int horizon = 0;
    for (const auto& p : paths) horizon = std::max(horizon, p.arrival_time());
    auto want = oracle::all_pairs_conflicts(paths, horizon);
    Partitioning part(m, n);
    auto g = build_intersection_graph(paths, part, m).graph;
    std::set<std::pair<int, int>> got;
    for (auto e : g.edges) got.insert({e.a, e.b});
    ++checked;
    edges += static_cast<int>(want.size());
    matched += got == want;
  }
  return {matched == checked, std::to_string(matched) + "/" + std::to_string(checked) +
                                  " matched (" + std::to_string(edges) + " conflicting pairs)"};
}

Outcome mis_oracle() {
  std::mt19937_64 rng(303);
  int checked = 0, matched = 0;
  for (int trial = 0; trial < 600; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 10)(rng);
    double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::vector<std::pair<int, int>> edges;
    IntersectionGraph g;
    for (int v = 0; v < n; ++v) g.nodes.push_back(v);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (std::bernoulli_distribution(p)(rng)) {
          edges.push_back({a, b});
          g.edges.push_back({a, b});
        }
    auto s = mis_exact(ComponentGraph::induced(g, g.nodes));
    std::set<int> in(s.begin(), s.end());
    bool independent = true;
    for (auto [a, b] : edges) independent = independent && !(in.contains(a) && in.contains(b));
    ++checked;
    matched += independent && static_cast<int>(s.size()) == oracle::max_independent_set_size(n, edges);
  }
  return {matched == checked, std::to_string(matched) + "/" + std::to_string(checked) + " matched"};
}

Outcome codec_fidelity() {
  std::vector<std::string> failures;
  // agent 5 leaves (0,0) at t = 2 and reaches (2,3) at t = 12
  SubpathSegment seg{5, 0, {{{0, 0}, 2}}, {}, {}};
  Coord c{0, 0};
  int t = 2;
  for (char mv : std::string("ruwrdruuul")) {
    if (mv == 'r') ++c.x;
    if (mv == 'l') --c.x;
    if (mv == 'u') ++c.y;
    if (mv == 'd') --c.y;
    seg.states.push_back({c, ++t});
  }
  auto enc = encode_segment(seg);
  std::string stream;
  for (auto s : enc.symbols()) stream += std::string(stream.empty() ? "" : " ") + symbol_char(s);
  if (stream != "n n r u w r d r u u u l e") failures.push_back("stream '" + stream + "'");
  if (decode_segment(parse_segment_text(enc.to_string())).states != seg.states)
    failures.push_back("worked example round trip");

  std::mt19937_64 rng(404);
  GridMap m(64, 64);
  int round_trips = 0;
  for (int i = 0; i < 1000; ++i) {
    int t0 = std::uniform_int_distribution<int>(0, 30)(rng);
    auto p = oracle::random_walk(m, std::uniform_int_distribution<int>(0, 99)(rng),
                                 std::uniform_int_distribution<int>(0, 40)(rng), rng, t0);
    SubpathSegment s{p.agent, 0, p.states, {}, {}};
    auto e = encode_segment(s);
    bool ok = decode_segment(e).states == s.states && parse_segment_text(e.to_string()) == e &&
              unpack_segment(pack_segment(e, 100, 64), 100, 64) == e;
    round_trips += ok;
  }
  if (round_trips != 1000) failures.push_back(std::to_string(round_trips) + "/1000 round trips");

  int formula = 0;
  for (int i = 0; i < 200; ++i) {
    int n = std::uniform_int_distribution<int>(1, 5000)(rng);
    int side = std::uniform_int_distribution<int>(1, 64)(rng);
    auto p = oracle::random_walk(m, 0, std::uniform_int_distribution<int>(0, 60)(rng), rng);
    std::vector<SubpathSegment> one{{0, 0, p.states, {}, {}}};
    auto len = static_cast<std::uint64_t>(p.cost());
    std::uint64_t delta = oracle::log2_ceil(n) + 2 * oracle::log2_ceil(side) + 3;
    formula += path_bits(one, n, side) == 3 * len + delta;
  }
  if (formula != 200) failures.push_back(std::to_string(formula) + "/200 size formula");

  return {failures.empty(), failures.empty() ? "stream '" + stream + "', 1000/1000 round trips, "
                                               "200/200 size checks"
                                             : failures.front()};
}

Outcome generator_guarantee() {
  const auto& runs = suite_runs();
  int total = 0, ok = 0;
  for (std::size_t i = 0; i < runs.hca.size(); ++i)
    for (const auto& r : runs.hca[i]) {
      ++total;
      ok += r.status == SolveStatus::success &&
            validate_solution(suite()[i].instance, r.solution->paths).empty();
    }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " HCA* runs solved"};
}

Outcome variant_soundness() {
  const auto& runs = suite_runs();
  int ok = 0;
  std::size_t max_iter = 0;
  for (std::size_t i = 0; i < runs.variant.size(); ++i) {
    const auto& r = runs.variant[i];
    max_iter = std::max(max_iter, r.trace.iterations.size());
    ok += r.status == SolveStatus::success &&
          validate_solution(suite()[i].instance, r.solution->paths).empty() &&
          r.trace.iterations.size() <= 16;
  }
  return {ok == kSuiteSize, std::to_string(ok) + "/" + std::to_string(kSuiteSize) +
                                " solved and valid, max iterations " + std::to_string(max_iter)};
}

Outcome table_analogue() {
  const auto& runs = suite_runs();
  std::vector<double> soc, mk;
  for (std::size_t i = 0; i < runs.variant.size(); ++i) {
    const auto& v = runs.variant[i];
    if (v.status != SolveStatus::success) continue;
    for (const auto& h : runs.hca[i]) {
      if (h.status != SolveStatus::success) continue;
      soc.push_back(static_cast<double>(v.solution->sum_of_costs) /
                    static_cast<double>(h.solution->sum_of_costs));
      mk.push_back(static_cast<double>(v.solution->makespan) /
                   static_cast<double>(h.solution->makespan));
    }
  }
  if (soc.empty()) return {false, "no solved pairs"};
  auto s = ratio_stats(soc), k = ratio_stats(mk);
  bool pass = s.avg >= 0.97 && s.avg <= 1.01 && s.median >= 0.97 && s.median <= 1.01 &&
              k.avg >= 0.95 && k.avg <= 1.05;
  return {pass, std::to_string(soc.size()) + " pairs: sum-of-costs ratio mean " + fmt(s.avg) +
                    " median " + fmt(s.median) + ", makespan ratio mean " + fmt(k.avg)};
}

Outcome ledger_exactness() {
  const auto& runs = suite_runs();
  int checked = 0, exact = 0;
  for (std::size_t i = 0; i < runs.variant.size(); ++i) {
    const auto& r = runs.variant[i];
    if (r.status != SolveStatus::success) continue;
    const auto& map = suite()[i].instance.map;
    const int n = suite()[i].instance.agent_count();
    const int side = std::max(map.width(), map.height());
    std::uint64_t bits = 0;
    for (const auto& it : r.trace.iterations) {
      bits += 2ull * it.pending.size() * oracle::log2_ceil(side);
      for (const auto& c : it.candidates)
        bits += oracle::path_wire_bits(c, n, side, map.width(), map.height(), n);
      for (int e : it.intersections) bits += 2ull * oracle::log2_ceil(n) * e;
    }
    for (const auto& p : r.solution->paths)
      bits += oracle::log2_ceil(n) + 2 * oracle::log2_ceil(side) + 3ull * (p.cost() + 1);
    ++checked;
    exact += comm_time(r.trace.ledger, CommConfig{8e7}) == static_cast<double>(bits) / 8e7;
  }
  return {checked > 0 && exact == checked,
          std::to_string(exact) + "/" + std::to_string(checked) + " ledgers exact at 8e7 bit/s"};
}

std::string strip_timing(const std::string& csv) {
  const auto& cols = csv_columns();
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t i = 0, col = 0;
    while (i <= line.size()) {
      auto j = line.find(',', i);
      if (j == std::string::npos) j = line.size();
      if (!is_timing_column(cols[col])) out << line.substr(i, j - i) << ',';
      i = j + 1;
      ++col;
    }
    out << '\n';
  }
  return out.str();
}

Outcome determinism() {
  BenchmarkConfig cfg;
  cfg.instances = 20;
  cfg.seed = 77;
  cfg.workers = 1;
  auto a = emit_csv(run_benchmark(cfg).records);
  cfg.workers = 8;
  auto b = emit_csv(run_benchmark(cfg).records);
  bool same = strip_timing(a) == strip_timing(b);
  return {same, same ? "20-instance CSVs identical apart from timing columns"
                     : "CSV differs between 1 and 8 workers"};
}

Outcome partitioning() {
  std::mt19937_64 rng(505);
  long long cells = 0, bad = 0;
  for (int n = 1; n <= 100; ++n) {
    std::vector<std::pair<int, int>> sizes{{100, 100}, {1, 100}, {100, 1}};
    for (int k = 0; k < 3; ++k)
      sizes.push_back({std::uniform_int_distribution<int>(1, 100)(rng),
                       std::uniform_int_distribution<int>(1, 100)(rng)});
    for (auto [w, h] : sizes) {
      GridMap m(w, h);
      Partitioning part(m, n);
      auto [rows, cols] = oracle::partition_grid(n, w, h);
      if (part.rows() != rows || part.cols() != cols) {
        ++bad;
        continue;
      }
      std::vector<long long> area(n, 0);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          ++cells;
          int id = partition_of({x, y}, m, part);
          if (id < 0 || id >= n) {
            ++bad;
            continue;
          }
          ++area[id];
          int r = id / cols, c = id % cols;
          // closed rectangle [floor(c W / cols), floor((c+1) W / cols)] per axis
          bool inside = c * w / cols <= x && x <= (c + 1) * w / cols && r * h / rows <= y &&
                        y <= (r + 1) * h / rows;
          if (!inside || !part.bounds(id).contains({x, y})) ++bad;
        }
      for (int id = 0; id < n; ++id)
        if (area[id] != part.bounds(id).area()) ++bad;
    }
  }
  bool f64 = balanced_factorization(64) == Factorization{8, 8};
  return {bad == 0 && f64, std::to_string(cells) + " cells checked, " + std::to_string(bad) +
                               " mismatches, factorization(64) = " +
                               (f64 ? "(8,8)" : "wrong")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "search matches time-expanded oracle", 30, search_oracle},
      {2, "intersection graph matches all-pairs oracle", 30, conflict_oracle},
      {3, "exact independent set matches enumeration", 10, mis_oracle},
      {4, "codec fidelity", 10, codec_fidelity},
      {5, "generated instances solved by HCA* under 5 orders", 300, generator_guarantee},
      {6, "variant sound, valid and within 16 rounds", 300, variant_soundness},
      {7, "desk-scale cost ratios", 600, table_analogue},
      {8, "communication ledger exactness", 1, ledger_exactness},
      {9, "benchmark CSV independent of worker count", 300, determinism},
      {10, "partitioning correctness", 10, partitioning},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass && secs <= c.limit_seconds;
    if (o.pass && !pass) o.detail += ", over the time limit";
    failed += !pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f", secs);
    std::cout << (pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": " << o.detail
              << " (" << timing << " s)" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
