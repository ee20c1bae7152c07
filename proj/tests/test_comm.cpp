#include <doctest.h>

#include "oracles.hpp"
#include "parhca/comm.hpp"
#include "parhca/instances.hpp"
#include "parhca/solver.hpp"

using namespace parhca;

TEST_CASE("bit formulas") {
  CHECK(bits_source_goal(64, 100) == 896);
  CHECK(bits_source_goal(1, 2) == 2);
  CHECK(bits_source_goal(1, 1) == 0);
  CHECK(bits_source_goal(0, 100) == 0);

  std::vector<int> e{1, 2, 0};
  CHECK(bits_ig(e, 64) == 36);
  std::vector<int> single{1};
  CHECK(bits_ig(single, 2) == 2);

  std::vector<int> lengths{10};
  CHECK(bits_rt(lengths, 64, 100) == 53);
  lengths.push_back(0);
  CHECK(bits_rt(lengths, 64, 100) == 53 + 23);
  CHECK(bits_rt(std::vector<int>{}, 64, 100) == 0);
}

TEST_CASE("path traffic per iteration sums encoded paths") {
  GridMap m(12, 12);
  Partitioning part(m, 4);
  TimedPath a{0, {{{4, 0}, 0}, {{5, 0}, 1}, {{6, 0}, 2}}};
  TimedPath b{1, {{{0, 0}, 0}, {{0, 1}, 1}}};
  std::vector<std::vector<SubpathSegment>> segs{split_path(a, part, m), split_path(b, part, m)};
  // N = 2, M = 12: header 1 + 8. a: (9 + 3 * 2) + (9 + 3 * 2 + 3 * 1); b: 9 + 3 * 2
  CHECK(bits_paths_iteration(segs, 2, 12) == 15 + 18 + 15);
  CHECK(oracle::path_wire_bits(a, 2, 12, 12, 12, 4) + oracle::path_wire_bits(b, 2, 12, 12, 12, 4) ==
        48);
}

TEST_CASE("ledger totals and timing") {
  CommLedger l;
  l.iterations.push_back({100, 1000, 20});
  l.iterations.push_back({50, 500, 0});
  l.reservation_table = 330;
  CHECK(l.source_goal_bits() == 150);
  CHECK(l.path_bits() == 1500);
  CHECK(l.ig_bits() == 20);
  CHECK(l.total_bits() == 2000);
  CHECK(l.total_bits_without_source_goal() == 1850);
  CHECK(comm_time(l, CommConfig{2000}) == 1.0);
  CHECK(comm_time(l, CommConfig{1850}, false) == 1.0);

  CommLedger big;
  big.reservation_table = 80'000'000;
  CHECK(comm_time(big, CommConfig{}) == 1.0);
  CHECK_THROWS_AS(comm_time(big, CommConfig{0}), std::invalid_argument);
}

TEST_CASE("speedup") {
  CHECK(speedup(4.0, 0.5, 0.5) == 4.0);
  CHECK(speedup(1.0, 1.0, 0.0) == 1.0);
  CHECK_THROWS_AS(speedup(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(speedup(1.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(speedup(1.0, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("solver ledger matches a recomputation from the trace") {
  auto map = generate_random_map(30, 30, 0.1, 77);
  auto inst = generate_instance(map, 12, 5).instance;
  auto r = solve_variant(inst);
  REQUIRE(r.status == SolveStatus::success);
  const int n = inst.agent_count(), side = map.side();
  std::uint64_t total = 0;
  for (const auto& it : r.trace.iterations) {
    std::uint64_t sg = 2ull * it.pending.size() * oracle::log2_ceil(side);
    std::uint64_t paths = 0;
    for (const auto& c : it.candidates)
      paths += oracle::path_wire_bits(c, n, side, map.width(), map.height(), n);
    std::uint64_t reported = 0;
    for (int e : it.intersections) reported += e;
    std::uint64_t ig = 2ull * oracle::log2_ceil(n) * reported;
    CHECK(it.bits.source_goal == sg);
    CHECK(it.bits.paths == paths);
    CHECK(it.bits.ig == ig);
    total += sg + paths + ig;
  }
  std::uint64_t rt = 0;
  for (const auto& p : r.solution->paths)
    rt += oracle::log2_ceil(n) + 2 * oracle::log2_ceil(side) + 3ull * (p.cost() + 1);
  CHECK(r.trace.ledger.reservation_table == rt);
  total += rt;
  CHECK(r.trace.ledger.total_bits() == total);
  CHECK(comm_time(r.trace.ledger, CommConfig{}) == static_cast<double>(total) / 8e7);
}
