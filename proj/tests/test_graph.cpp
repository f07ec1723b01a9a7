#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hcma/graph.hpp"
#include "support.hpp"

using namespace hcma;
namespace ts = testsupport;

TEST_CASE("parse_hcp reads a triangle") {
  std::istringstream in(
      "NAME : k3\nTYPE : HCP\nDIMENSION : 3\n"
      "EDGE_DATA_FORMAT : EDGE_LIST\nEDGE_DATA_SECTION\n"
      "1 2\n2 3\n3 1\n-1\nEOF\n");
  const Graph g = parse_hcp(in);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(0, 2));
}

TEST_CASE("parse_hcp collapses duplicate edge listings") {
  std::istringstream in(
      "DIMENSION : 3\nEDGE_DATA_SECTION\n1 2\n1 2\n2 3\n-1\n");
  const Graph g = parse_hcp(in);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("parse_hcp tolerates section keyword without colon and loose spacing") {
  std::istringstream in(
      "DIMENSION: 4\nEDGE_DATA_FORMAT: EDGE_LIST\nEDGE_DATA_SECTION :\n"
      "  1   2\n2 3\n3 4 4 1\n -1\n");
  const Graph g = parse_hcp(in);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 4);
}

TEST_CASE("parse_hcp error paths carry line numbers") {
  SUBCASE("missing DIMENSION") {
    std::istringstream in("EDGE_DATA_SECTION\n1 2\n-1\n");
    CHECK_THROWS_AS(parse_hcp(in), ParseError);
  }
  SUBCASE("vertex id out of range") {
    std::istringstream in("DIMENSION : 3\nEDGE_DATA_SECTION\n1 5\n-1\n");
    try {
      parse_hcp(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("malformed token") {
    std::istringstream in("DIMENSION : 3\nEDGE_DATA_SECTION\n1 x\n-1\n");
    try {
      parse_hcp(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("missing terminator") {
    std::istringstream in("DIMENSION : 3\nEDGE_DATA_SECTION\n1 2\n");
    CHECK_THROWS_AS(parse_hcp(in), ParseError);
  }
  SUBCASE("dangling endpoint") {
    std::istringstream in("DIMENSION : 3\nEDGE_DATA_SECTION\n1 2 3\n-1\n");
    CHECK_THROWS_AS(parse_hcp(in), ParseError);
  }
}

TEST_CASE("parse/serialize round trip preserves the edge set") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + rng.index(40);
    const Graph g = ts::random_connected_graph(n, 0.1, rng);
    std::istringstream in(write_hcp(g, "roundtrip"));
    const Graph h = parse_hcp(in);
    REQUIRE(h.vertex_count() == g.vertex_count());
    CHECK(h.edges() == g.edges());
  }
}

TEST_CASE("bfs_distances basics") {
  CHECK(bfs_distances(ts::path_graph(4), 0) == std::vector<int>{0, 1, 2, 3});
  CHECK(bfs_distances(ts::cycle_graph(3), 0) == std::vector<int>{0, 1, 1});
  const Graph two_edges(4, {{0, 1}, {2, 3}});
  CHECK(bfs_distances(two_edges, 0) ==
        std::vector<int>{0, 1, kUnreachable, kUnreachable});
  CHECK_THROWS(bfs_distances(two_edges, 9));
}

TEST_CASE("bfs_distances satisfies the hop triangle inequality") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = ts::random_connected_graph(12 + trial, 0.15, rng);
    const int n = g.vertex_count();
    std::vector<std::vector<int>> d(n);
    for (int s = 0; s < n; ++s) d[s] = bfs_distances(g, s);
    for (int s = 0; s < n; ++s) {
      CHECK(d[s][s] == 0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          CHECK(d[s][b] <= d[s][a] + d[a][b]);
    }
  }
}

TEST_CASE("shortest_path determinism and correctness") {
  SUBCASE("C4 tie broken by ascending ids") {
    const auto p = shortest_path(ts::cycle_graph(4), 0, 2);
    REQUIRE(p.has_value());
    CHECK(*p == std::vector<int>{0, 1, 2});
  }
  SUBCASE("path graph") {
    const auto p = shortest_path(ts::path_graph(3), 0, 2);
    REQUIRE(p.has_value());
    CHECK(*p == std::vector<int>{0, 1, 2});
  }
  SUBCASE("unreachable") {
    const Graph g(4, {{0, 1}, {2, 3}});
    CHECK(!shortest_path(g, 0, 3).has_value());
  }
  SUBCASE("length matches Floyd-Warshall on a random 20-vertex graph") {
    Rng rng(3);
    const Graph g = ts::random_connected_graph(20, 0.1, rng);
    const auto fw = ts::floyd_warshall(g);
    for (int a = 0; a < 20; ++a)
      for (int b = 0; b < 20; ++b) {
        if (a == b) continue;
        const auto p = shortest_path(g, a, b);
        REQUIRE(p.has_value());
        CHECK(static_cast<int>(p->size()) - 1 == fw[a][b]);
        for (std::size_t i = 0; i + 1 < p->size(); ++i)
          CHECK(g.has_edge((*p)[i], (*p)[i + 1]));
      }
  }
}

TEST_CASE("verify_hc") {
  const Graph c5 = ts::cycle_graph(5);
  CHECK(verify_hc(c5, {{0, 1, 2, 3, 4}}));
  CHECK(!verify_hc(c5, {{0, 2, 4, 1, 3}}));  // chords absent
  const Graph k4 = ts::complete_graph(4);
  CHECK(verify_hc(k4, {{2, 0, 3, 1}}));
  CHECK(!verify_hc(k4, {{0, 1, 2}}));     // wrong length
  CHECK(!verify_hc(k4, {{0, 1, 1, 2}}));  // not a permutation
}

TEST_CASE("verify_hc implies minimum degree 2 and agrees with brute force") {
  Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + rng.index(5);  // 4..8
    const Graph g = ts::random_connected_graph(n, 0.3, rng);
    const auto oracle = ts::find_hc_bruteforce(g);
    if (oracle) {
      CHECK(verify_hc(g, {*oracle}));
      for (int v = 0; v < n; ++v) CHECK(g.degree(v) >= 2);
    }
    // random permutations agree with membership in the enumeration
    for (int t = 0; t < 10; ++t) {
      const auto perm = ts::random_permutation(n, rng);
      if (verify_hc(g, {perm})) CHECK(oracle.has_value());
    }
  }
}

TEST_CASE("ore and dirac checks") {
  CHECK(dirac_check(ts::complete_graph(5)));
  CHECK(ore_check(ts::complete_graph(5)));
  CHECK(!dirac_check(ts::cycle_graph(5)));
  CHECK(!ore_check(ts::cycle_graph(5)));
  CHECK(dirac_check(ts::cycle_graph(4)));  // degree 2 == n/2 boundary
  CHECK(!dirac_check(ts::cycle_graph(3)));  // n <= 3
  CHECK(!ore_check(ts::cycle_graph(3)));
}

TEST_CASE("connectivity and cut vertices") {
  CHECK(is_connected(ts::cycle_graph(6)));
  CHECK(!is_connected(Graph(4, {{0, 1}, {2, 3}})));
  CHECK(!find_cut_vertex(ts::cycle_graph(6)).has_value());
  // two triangles sharing vertex 2
  const Graph bowtie(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
  const auto cut = find_cut_vertex(bowtie);
  REQUIRE(cut.has_value());
  CHECK(*cut == 2);
}
