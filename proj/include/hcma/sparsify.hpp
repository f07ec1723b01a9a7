#pragma once

#include <cstdint>

#include "hcma/graph.hpp"
#include "hcma/local_search.hpp"
#include "hcma/reduction.hpp"
#include "hcma/tour.hpp"

namespace hcma {

// Mutable working copy of the TC matrix plus bookkeeping. Invariants:
//  - every 1-cell corresponds to an edge of the original graph, so a tour
//    of cost n on the working matrix is a Hamiltonian cycle of g;
//  - ones_count <= baseline_ones (= |E(g)|) at all times;
//  - suppressed cells hold exactly |V|.
struct SparseState {
  DistanceMatrix working;
  std::int64_t ones_count = 0;
  std::int64_t baseline_ones = 0;
  std::int32_t suppressed_value = 0;
};

// Improve a copy of the leader pocket with lk_improve against `base` to get
// a tour T; suppress every 1-cell off T to |V|; then resolve T's
// conflicting edges one at a time in random order: restore value 1 along
// the shortest g-path between the endpoints and overwrite the conflicting
// pair itself with |V|. If probe is non-null it receives T (whose cost is
// measured against base).
SparseState initial_sparsification(const Graph& g, const DistanceMatrix& base,
                                   const Tour& leader_pocket,
                                   const NeighborLists& base_nl, Rng& rng,
                                   std::int64_t lk_budget = 0,
                                   Tour* probe = nullptr);

// Improve a copy of the leader pocket against the current working matrix
// to get T''; for every T''-edge costing more than 1, set value 1 on all
// edges of the shortest g-path between its endpoints. Add-only; returns
// T'' (cost measured against the pre-augmentation working matrix).
//
// The probe starts from a random double-bridge kick of the pocket. The
// pocket itself is typically already a local optimum of the working
// matrix, and a deterministic descent from it would regenerate the same
// tour, the same conflicting edges, and therefore no new 1-cells, freezing
// the add-edges/reset cycle. The reference local search this stands in
// for is randomized, which is what keeps that cycle moving.
Tour augment(SparseState& s, const Graph& g, const Tour& leader_pocket,
             const NeighborLists& working_nl, Rng& rng,
             std::int64_t lk_budget = 0);

// When every original edge has become a 1-cell again, rebuild the state
// via initial_sparsification from the pristine base. Returns true when the
// reset fired.
bool maybe_reset(SparseState& s, const Graph& g, const DistanceMatrix& base,
                 const Tour& leader_pocket, const NeighborLists& base_nl,
                 Rng& rng, std::int64_t lk_budget = 0, Tour* probe = nullptr);

// Unordered pairs with value 1 (testing helper).
std::int64_t count_ones(const DistanceMatrix& m);

}  // namespace hcma
