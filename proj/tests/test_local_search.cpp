#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcma/local_search.hpp"
#include "support.hpp"

using namespace hcma;
namespace ts = testsupport;

TEST_CASE("rai_improve") {
  SUBCASE("a cost-n tour on a cycle graph is a fixed point") {
    const auto m = tc_reduce(ts::cycle_graph(8));
    const auto nl = build_neighbor_lists(m, 5);
    Tour t({0, 1, 2, 3, 4, 5, 6, 7}, m);
    Rng rng(1);
    rai_improve(t, m, nl, rng);
    CHECK(t.cost() == 8);
    CHECK(t.order() == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
  }
  SUBCASE("scrambled tour on C6 under SR: monotone and valid") {
    const auto m = sr_reduce(ts::cycle_graph(6));
    const auto nl = build_neighbor_lists(m, 5);
    Tour t({0, 3, 1, 4, 2, 5}, m);
    const TourCost before = t.cost();
    Rng rng(2);
    rai_improve(t, m, nl, rng);
    CHECK(t.cost() <= before);
    t.validate(m);
  }
  SUBCASE("random small matrices: result valid and >= brute-force optimum") {
    debug::paranoid_checks = true;
    Rng rng(3);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 5 + rng.index(3);  // 5..7
      const auto m = ts::random_matrix(n, 1, 12, rng);
      const auto nl = build_neighbor_lists(m, n - 1);
      Rng sub = rng.split(trial);
      Tour t(ts::random_permutation(n, rng), m);
      const TourCost before = t.cost();
      rai_improve(t, m, nl, sub);
      t.validate(m);
      CHECK(t.cost() <= before);
      CHECK(t.cost() >= ts::brute_force_optimum(m));
    }
    debug::paranoid_checks = false;
  }
}

TEST_CASE("lk_improve") {
  SUBCASE("uncrosses the square and reaches the brute-force optimum") {
    DistanceMatrix m(4, false);
    const int d[4][4] = {{99, 10, 14, 10},
                         {10, 99, 10, 14},
                         {14, 10, 99, 10},
                         {10, 14, 10, 99}};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) m.set(a, b, d[a][b]);
    const auto nl = build_neighbor_lists(m, 3);
    Tour t({0, 2, 1, 3}, m);
    lk_improve(t, m, nl);
    CHECK(t.cost() == ts::brute_force_optimum(m));
    CHECK(t.cost() == 40);
  }
  SUBCASE("cost-n tour under TC cannot improve") {
    Rng rng(4);
    const auto g = ts::planted_cubic(12, rng);
    const auto m = tc_reduce(g);
    const auto nl = build_neighbor_lists(m, 5);
    const auto hc = ts::find_hc_bruteforce(g);
    REQUIRE(hc.has_value());
    Tour t(*hc, m);
    CHECK(t.cost() == 12);
    lk_improve(t, m, nl);
    CHECK(t.cost() == 12);
  }
  SUBCASE("output is 2-opt locally optimal with full candidate lists") {
    debug::paranoid_checks = true;
    Rng rng(5);
    for (int trial = 0; trial < 120; ++trial) {
      const int n = 5 + rng.index(4);  // 5..8
      const auto m = ts::random_matrix(n, 1, 15, rng);
      const auto nl = build_neighbor_lists(m, n - 1);
      Tour t(ts::random_permutation(n, rng), m);
      lk_improve(t, m, nl);
      t.validate(m);
      CHECK(!ts::has_improving_two_exchange(t, m));
    }
    debug::paranoid_checks = false;
  }
  SUBCASE("respects the move budget") {
    Rng rng(6);
    const auto m = ts::random_matrix(40, 1, 100, rng);
    const auto nl = build_neighbor_lists(m, 5);
    Tour t(ts::random_permutation(40, rng), m);
    Tour capped = t;
    lk_improve(capped, m, nl, 1);  // at most one applied move
    Tour full = t;
    lk_improve(full, m, nl);
    CHECK(capped.cost() <= t.cost());
    CHECK(full.cost() <= capped.cost());
  }
}

TEST_CASE("local_search composition") {
  Rng rng(7);
  SUBCASE("second call leaves cost unchanged at the joint optimum") {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 6 + rng.index(15);
      const auto m = ts::random_matrix(n, 1, 20, rng);
      const auto nl = build_neighbor_lists(m, 5);
      Tour t(ts::random_permutation(n, rng), m);
      Rng r1 = rng.split(trial, 1);
      local_search(t, m, nl, r1);
      const TourCost once = t.cost();
      Rng r2 = rng.split(trial, 2);
      t.clear_all_dont_look();
      local_search(t, m, nl, r2);
      CHECK(t.cost() == once);
    }
  }
  SUBCASE("never above the cost of rai alone on the same input") {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 6 + rng.index(15);
      const auto m = ts::random_matrix(n, 1, 20, rng);
      const auto nl = build_neighbor_lists(m, 5);
      const Tour start(ts::random_permutation(n, rng), m);
      Tour rai_only = start;
      Rng r1 = rng.split(trial, 3);
      rai_improve(rai_only, m, nl, r1);
      Tour both = start;
      Rng r2 = rng.split(trial, 3);  // same stream: identical rai phase
      local_search(both, m, nl, r2);
      CHECK(both.cost() <= rai_only.cost());
      CHECK(both.cost() <= start.cost());
    }
  }
}

TEST_CASE("monotonicity and validity under heavy fuzzing") {
  Rng rng(8);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 4 + rng.index(9);  // 4..12
    const auto m = ts::random_matrix(n, 1, 9, rng);
    const auto nl = build_neighbor_lists(m, std::min(5, n - 1));
    Tour t(ts::random_permutation(n, rng), m);
    const TourCost before = t.cost();
    Rng sub = rng.split(trial);
    if (trial % 2 == 0)
      rai_improve(t, m, nl, sub);
    else
      lk_improve(t, m, nl);
    CHECK(t.cost() <= before);
    t.validate(m);
  }
}

TEST_CASE("don't-look-bit pruning does not change which tours verify") {
  // Same planted instance solved with and without dlb pruning: both runs
  // must reach valid cost-n tours (trajectories may differ).
  Rng gen(9);
  const auto g = ts::planted_cubic(20, gen);
  const auto m = tc_reduce(g);
  const auto nl = build_neighbor_lists(m, 5);
  for (const bool use_dlb : {true, false}) {
    bool reached = false;
    for (std::uint64_t seed = 0; seed < 40 && !reached; ++seed) {
      Rng rng(seed);
      Tour t = nearest_neighbor_tour(m, rng);
      local_search(t, m, nl, rng, LocalSearchOptions{use_dlb, 0});
      if (t.cost() == 20) {
        CHECK(verify_hc(g, CycleCandidate{t.order()}));
        reached = true;
      }
    }
    CHECK(reached);
  }
}

TEST_CASE("planted cubic n=66: restarts of local_search reach cost n") {
  Rng gen(10);
  const auto g = ts::planted_cubic(66, gen);
  const auto m = tc_reduce(g);
  const auto nl = build_neighbor_lists(m, 5);
  bool reached = false;
  int restarts_used = 0;
  for (int restart = 0; restart < 100 && !reached; ++restart) {
    Rng rng(1000 + restart);
    Tour t = nearest_neighbor_tour(m, rng);
    local_search(t, m, nl, rng);
    restarts_used = restart + 1;
    if (t.cost() == 66) {
      CHECK(verify_hc(g, CycleCandidate{t.order()}));
      reached = true;
    }
  }
  INFO("restarts used: ", restarts_used);
  CHECK(reached);
}
