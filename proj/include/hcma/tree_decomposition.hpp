#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "hcma/graph.hpp"

namespace hcma {

// Tree of bags satisfying node coverage, edge coverage and coherence.
// parent[i] == -1 marks the root bag.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;  // sorted vertex ids
  std::vector<int> parent;
  int width = -1;  // max bag size - 1
};

struct DecompositionResult {
  std::optional<TreeDecomposition> td;  // absent when capped
  bool capped = false;
  int width = -1;  // width of td, or the bag width that tripped the cap
};

// Greedy min-fill elimination (ties by ascending vertex id); bags are the
// elimination cliques. Stops with capped=true as soon as a bag would
// exceed width_cap + 1 vertices. Requires a connected graph.
DecompositionResult min_fill_decomposition(const Graph& g, int width_cap);

// Checks the three defining properties plus the recorded width.
bool validate_decomposition(const Graph& g, const TreeDecomposition& td);

// PACE-style text format: "s td <#bags> <width+1> <n>", then one
// "b <id> <vertices...>" line per bag (1-based), then tree edges.
void write_pace_td(std::ostream& out, const TreeDecomposition& td, int n);

}  // namespace hcma
