#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hcma {

// Hop distance assigned to vertices a BFS cannot reach.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// Undirected simple graph over vertices 0..n-1. Immutable after
// construction; safe for concurrent reads.
class Graph {
 public:
  Graph() = default;

  // Duplicate pairs collapse to one edge. Self-loops and out-of-range
  // endpoints are rejected.
  Graph(int n, const std::vector<std::pair<int, int>>& edge_list);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int u, int v) const;

  // All edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const;

 private:
  int n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<int>> adj_;  // sorted neighbor lists
};

// A candidate Hamiltonian cycle: a permutation of 0..n-1 read cyclically.
struct CycleCandidate {
  std::vector<int> order;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// TSPLIB HCP reader: DIMENSION, EDGE_DATA_FORMAT EDGE_LIST, and an
// EDGE_DATA_SECTION of 1-based "u v" pairs terminated by -1. Section
// keywords are accepted with or without a trailing colon; whitespace is
// free-form. Throws ParseError with the offending line number.
Graph parse_hcp(std::istream& in);
Graph parse_hcp_file(const std::string& path);
std::string write_hcp(const Graph& g, const std::string& name);

// Hop counts from source; unreachable vertices get kUnreachable.
std::vector<int> bfs_distances(const Graph& g, int source);

// One BFS shortest path a -> b with ascending-id neighbor order, so the
// result is deterministic among equal-length paths. nullopt if b is
// unreachable. Requires a != b.
std::optional<std::vector<int>> shortest_path(const Graph& g, int a, int b);

// True iff order is a permutation of 0..n-1 and every cyclically
// consecutive pair is an edge of g.
bool verify_hc(const Graph& g, const CycleCandidate& c);

// Degree-based Hamiltonicity certificates. Both return false for n <= 3.
// A true result certifies that g is Hamiltonian; false proves nothing.
bool ore_check(const Graph& g);
bool dirac_check(const Graph& g);

bool is_connected(const Graph& g);

// Any articulation point, if one exists. A graph with a cut vertex cannot
// be Hamiltonian; used as a cheap pre-filter diagnostic.
std::optional<int> find_cut_vertex(const Graph& g);

}  // namespace hcma
