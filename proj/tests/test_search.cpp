#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "parhca/search.hpp"

using namespace parhca;

namespace {

TimedPath make_path(AgentId agent, int t0, std::vector<Coord> cells) {
  TimedPath p{agent, {}};
  for (auto c : cells) p.states.push_back({c, t0++});
  return p;
}

}  // namespace

TEST_CASE("static A*") {
  GridMap m(5, 5);
  auto p = astar_static(m, {0, 0}, {4, 4});
  REQUIRE(p);
  CHECK(p->size() == 9);
  CHECK(p->front() == Coord{0, 0});
  CHECK(p->back() == Coord{4, 4});

  SUBCASE("wall forces a detour") {
    for (int y = 0; y < 4; ++y) m.set_obstacle({2, y});
    auto d = astar_static(m, {0, 0}, {4, 0});
    REQUIRE(d);
    CHECK(d->size() == 13);
  }
  SUBCASE("disconnected") {
    for (int y = 0; y < 5; ++y) m.set_obstacle({2, y});
    CHECK_FALSE(astar_static(m, {0, 0}, {4, 0}));
  }
  SUBCASE("blocked endpoint") {
    m.set_obstacle({4, 4});
    CHECK_THROWS_AS(astar_static(m, {0, 0}, {4, 4}), std::invalid_argument);
  }
  SUBCASE("start equals goal") {
    auto s = astar_static(m, {1, 1}, {1, 1});
    REQUIRE(s);
    CHECK(s->size() == 1);
  }
}

TEST_CASE("static A* matches breadth-first distances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = generate_random_map(20, 20, 0.25, rng());
    std::uniform_int_distribution<int> pick(0, 19);
    for (int q = 0; q < 10; ++q) {
      Coord a{pick(rng), pick(rng)}, b{pick(rng), pick(rng)};
      if (m.blocked(a) || m.blocked(b)) continue;
      auto want = oracle::bfs_distance(m, a, b);
      auto got = astar_static(m, a, b);
      REQUIRE(want.has_value() == got.has_value());
      if (want) CHECK(static_cast<int>(got->size()) - 1 == *want);
    }
  }
}

TEST_CASE("reverse resumable A* gives exact distances") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = generate_random_map(25, 25, 0.2, rng());
    std::vector<Coord> free;
    for (int y = 0; y < 25; ++y)
      for (int x = 0; x < 25; ++x)
        if (!m.blocked({x, y})) free.push_back({x, y});
    std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
    Coord goal = free[pick(rng)], origin = free[pick(rng)];
    ReverseResumableAStar rra(m, goal, origin);
    for (int q = 0; q < 100; ++q) {
      Coord c = free[pick(rng)];
      CHECK(rra.distance(c) == oracle::bfs_distance(m, c, goal));
    }
  }
}

TEST_CASE("reservation table") {
  GridMap m(4, 4);
  ReservationTable rt;
  CHECK(rt.empty());
  CHECK(rt.last_finite_time() == -1);
  auto p = make_path(0, 0, {{0, 0}, {1, 0}, {1, 1}});
  rt.insert(p, m);
  CHECK(rt.vertex_reserved(m.index({1, 0}), 1));
  CHECK_FALSE(rt.vertex_reserved(m.index({1, 0}), 2));
  CHECK(rt.edge_reserved(m.index({0, 0}), m.index({1, 0}), 0));
  CHECK(rt.edge_reserved(m.index({1, 0}), m.index({0, 0}), 0));
  CHECK_FALSE(rt.edge_reserved(m.index({0, 0}), m.index({1, 0}), 1));
  CHECK(rt.goal_stay_from(m.index({1, 1})) == 2);
  CHECK(rt.occupied(m.index({1, 1}), 1000));
  CHECK_FALSE(rt.occupied(m.index({1, 1}), 1));
  CHECK(rt.last_occupied(m.index({1, 1})) == ReservationTable::kForever);
  CHECK(rt.last_occupied(m.index({0, 0})) == 0);
  CHECK(rt.last_occupied(m.index({3, 3})) == -1);
  CHECK(rt.last_finite_time() == 2);

  SUBCASE("conflicting paths are refused") {
    CHECK(rt.find_conflict(make_path(1, 0, {{2, 0}, {1, 0}}), m));
    CHECK_THROWS_AS(rt.insert(make_path(1, 0, {{2, 0}, {1, 0}}), m), ReservationConflict);
    // swap with agent 0 across (0,0)-(1,0)
    CHECK_THROWS_AS(rt.insert(make_path(1, 0, {{1, 0}, {0, 0}}), m), ReservationConflict);
    // entering another agent's goal after it parks
    CHECK_THROWS_AS(rt.insert(make_path(1, 5, {{1, 2}, {1, 1}}), m), ReservationConflict);
    // parking where another agent passes later
    CHECK_THROWS_AS(rt.insert(make_path(1, 0, {{1, 0}}), m), ReservationConflict);
  }
  SUBCASE("compatible path is accepted") {
    CHECK_FALSE(rt.find_conflict(make_path(1, 0, {{3, 3}, {3, 2}}), m));
    rt.insert(make_path(1, 0, {{3, 3}, {3, 2}}), m);
    CHECK(rt.goal_stay_count() == 2);
  }
}

TEST_CASE("space-time A* on small cases") {
  GridMap m(3, 1);
  ReservationTable rt;
  auto free = space_time_astar(m, 0, {0, 0}, {2, 0}, rt);
  REQUIRE(free);
  CHECK(free->cost() == 2);
  CHECK(free->agent == 0);

  SUBCASE("vertex reservation forces a wait") {
    // agent 1 sits on (1,0) at t = 1 only, then leaves the map area
    GridMap m2(3, 2);
    insert_path(rt, make_path(1, 0, {{1, 1}, {1, 0}, {1, 1}, {0, 1}}), m2);
    auto p = space_time_astar(m2, 0, {0, 0}, {2, 0}, rt);
    REQUIRE(p);
    CHECK(p->cost() == 3);
  }
  SUBCASE("goal of an earlier agent forces a detour") {
    GridMap m2(3, 2);
    insert_path(rt, make_path(1, 0, {{1, 1}, {1, 0}}), m2);
    auto p = space_time_astar(m2, 0, {0, 0}, {2, 0}, rt);
    REQUIRE(p);
    CHECK(p->cost() == 4);
  }
  SUBCASE("blocked corridor has no path") {
    insert_path(rt, make_path(1, 0, {{1, 0}}), m);
    CHECK_FALSE(space_time_astar(m, 0, {0, 0}, {2, 0}, rt));
  }
  SUBCASE("must not park where someone passes later") {
    GridMap m2(3, 2);
    // agent 1 crosses (2,0) at t = 5
    insert_path(rt, make_path(1, 0, {{2, 1}, {2, 1}, {2, 1}, {2, 1}, {2, 1}, {2, 0}, {1, 0},
                                      {1, 1}}),
                m2);
    auto p = space_time_astar(m2, 0, {0, 0}, {2, 0}, rt);
    REQUIRE(p);
    CHECK(p->arrival_time() > 5);
    CHECK_FALSE(rt.find_conflict(*p, m2));
  }
  SUBCASE("start time offsets the path") {
    SpaceTimeOptions opts;
    opts.start_time = 4;
    auto p = space_time_astar(m, 0, {0, 0}, {2, 0}, rt, opts);
    REQUIRE(p);
    CHECK(p->start_time() == 4);
    CHECK(p->cost() == 2);
  }
  SUBCASE("expired deadline") {
    GridMap big(200, 200);
    SpaceTimeOptions opts;
    opts.deadline = Clock::now() - std::chrono::seconds(1);
    CHECK_THROWS_AS(space_time_astar(big, 0, {0, 0}, {199, 199}, rt, opts), SearchTimeout);
  }
}

TEST_CASE("space-time A* goal stay survives insertion") {
  GridMap m(10, 10);
  ReservationTable rt;
  auto p = space_time_astar(m, 0, {0, 0}, {9, 9}, rt);
  REQUIRE(p);
  rt.insert(*p, m);
  CHECK(rt.vertex_reserved(m.index({9, 9}), 18));
  CHECK(rt.occupied(m.index({9, 9}), 1'000'000));
}

TEST_CASE("space-time A* agrees with the time-expanded search") {
  std::mt19937_64 rng(99);
  int compared = 0;
  for (int trial = 0; trial < 150; ++trial) {
    int w = std::uniform_int_distribution<int>(2, 6)(rng);
    int h = std::uniform_int_distribution<int>(2, 6)(rng);
    auto m = generate_random_map(w, h, 0.15, rng());
    if (m.free_count() < 3) continue;
    ReservationTable rt;
    std::vector<TimedPath> fixed;
    int k = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int i = 0; i < k; ++i) {
      auto walk = oracle::random_walk(m, i + 1, std::uniform_int_distribution<int>(0, 6)(rng), rng);
      if (rt.find_conflict(walk, m)) continue;
      rt.insert(walk, m);
      fixed.push_back(walk);
    }
    auto start = oracle::random_walk(m, 0, 0, rng).states[0].cell;
    auto goal = oracle::random_walk(m, 0, 0, rng).states[0].cell;
    SpaceTimeOptions opts;
    opts.horizon = 40;
    auto want = oracle::time_expanded_cost(m, start, goal, fixed, 0, 40);
    auto got = space_time_astar(m, 0, start, goal, rt, opts);
    REQUIRE(want.has_value() == got.has_value());
    if (want) {
      CHECK(got->cost() == *want);
      CHECK_FALSE(rt.find_conflict(*got, m));
    }
    ++compared;
  }
  CHECK(compared > 100);
}
