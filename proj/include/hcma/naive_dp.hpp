#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "hcma/graph.hpp"
#include "hcma/tree_decomposition.hpp"

namespace hcma {

struct DpResult {
  enum class Status { found, no_cycle, timeout };
  Status status = Status::timeout;
  CycleCandidate cycle;  // populated when status == found
};

// Bottom-up dynamic program over a nice form of the tree decomposition.
// Partial solutions are systems of vertex-disjoint paths covering every
// forgotten vertex, with all endpoints in the current bag; states track
// per-slot degrees {0,1,2} and the pairing of open endpoints, plus a flag
// for the single allowed cycle closure.
//
// `found` carries a cycle that passes verify_hc; `no_cycle` is a proof of
// non-Hamiltonicity; `timeout` covers both the wall-clock deadline and the
// state-count cap.
DpResult dp_hamiltonian(const Graph& g, const TreeDecomposition& td,
                        std::chrono::milliseconds deadline,
                        std::size_t state_cap = 1500000);

namespace detail {

// Nice decomposition, exposed so tests can assert it structurally.
struct NiceNode {
  enum Kind { kLeaf, kIntroduce, kForget, kEdge, kJoin };
  Kind kind = kLeaf;
  int child1 = -1, child2 = -1;
  int vertex = -1;       // introduce / forget
  int eu = -1, ev = -1;  // edge
  std::vector<int> bag;  // sorted
};

struct NiceTree {
  std::vector<NiceNode> nodes;
  int root = -1;
  int width = -1;
};

// Roots the decomposition, splices forget/introduce chains and binary
// joins, and attaches each graph edge to exactly one edge node (directly
// below the forget node of its first-forgotten endpoint).
NiceTree build_nice_tree(const TreeDecomposition& td, const Graph& g);

// Checks that the nice tree is itself a valid tree decomposition of g,
// that each edge appears exactly once, and that node shapes are coherent.
bool validate_nice_tree(const NiceTree& nt, const Graph& g);

}  // namespace detail

}  // namespace hcma
