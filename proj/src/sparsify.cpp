#include "hcma/sparsify.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hcma {

namespace {

// Writes value 1 on every edge of the shortest g-path between u and v,
// maintaining the ones counter. Path edges are edges of g by construction.
void restore_path(SparseState& s, const Graph& g, int u, int v) {
  const auto path = shortest_path(g, u, v);
  if (!path) throw std::logic_error("restore_path: endpoints disconnected");
  for (std::size_t i = 0; i + 1 < path->size(); ++i) {
    const int x = (*path)[i], y = (*path)[i + 1];
    if (s.working.at(x, y) != 1) {
      s.working.set(x, y, 1);
      ++s.ones_count;
    }
  }
}

}  // namespace

SparseState initial_sparsification(const Graph& g, const DistanceMatrix& base,
                                   const Tour& leader_pocket,
                                   const NeighborLists& base_nl, Rng& rng,
                                   std::int64_t lk_budget, Tour* probe) {
  const int n = g.vertex_count();
  Tour t(leader_pocket.order(), base);
  lk_improve(t, base, base_nl, lk_budget);

  SparseState s;
  s.working = base;
  s.baseline_ones = static_cast<std::int64_t>(g.edge_count());
  s.suppressed_value = n;
  s.ones_count = 0;

  auto on_tour = [&t](int u, int v) { return t.next(u) == v || t.next(v) == u; };

  for (const auto& [u, v] : g.edges()) {
    if (on_tour(u, v))
      ++s.ones_count;
    else
      s.working.set(u, v, s.suppressed_value);
  }

  std::vector<std::pair<int, int>> conflicts;
  for (int u = 0; u < n; ++u) {
    const int v = t.next(u);
    if (!g.has_edge(u, v)) conflicts.emplace_back(u, v);
  }
  while (!conflicts.empty()) {
    const std::size_t pick = rng.below(conflicts.size());
    const auto [u, v] = conflicts[pick];
    conflicts[pick] = conflicts.back();
    conflicts.pop_back();
    restore_path(s, g, u, v);
    s.working.set(u, v, s.suppressed_value);
  }

  assert(s.ones_count <= s.baseline_ones);
  if (probe) *probe = std::move(t);
  return s;
}

Tour augment(SparseState& s, const Graph& g, const Tour& leader_pocket,
             const NeighborLists& working_nl, Rng& rng,
             std::int64_t lk_budget) {
  Tour t(leader_pocket.order(), s.working);
  double_bridge_kick(t, s.working, rng);
  lk_improve(t, s.working, working_nl, lk_budget);
  const int n = g.vertex_count();
  for (int u = 0; u < n; ++u) {
    const int v = t.next(u);
    // Covers both a suppressed real edge (the path is the edge itself)
    // and a genuine conflicting edge (the path threads real edges).
    if (s.working.at(u, v) > 1) restore_path(s, g, u, v);
  }
  assert(s.ones_count <= s.baseline_ones);
  return t;
}

bool maybe_reset(SparseState& s, const Graph& g, const DistanceMatrix& base,
                 const Tour& leader_pocket, const NeighborLists& base_nl,
                 Rng& rng, std::int64_t lk_budget, Tour* probe) {
  if (s.ones_count < s.baseline_ones) return false;
  s = initial_sparsification(g, base, leader_pocket, base_nl, rng, lk_budget,
                             probe);
  return true;
}

std::int64_t count_ones(const DistanceMatrix& m) {
  std::int64_t ones = 0;
  for (int a = 0; a < m.size(); ++a)
    for (int b = a + 1; b < m.size(); ++b)
      if (m.at(a, b) == 1) ++ones;
  return ones;
}

}  // namespace hcma
