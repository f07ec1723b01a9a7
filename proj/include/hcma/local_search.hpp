#pragma once

#include <cstdint>

#include "hcma/tour.hpp"

namespace hcma {

struct LocalSearchOptions {
  bool use_dlb = true;          // honor the tour's don't-look bits in RAI
  std::int64_t lk_move_budget = 0;  // applied-move cap per lk call; 0 -> 50*n
};

// Recursive Arc Insertion. For each critical city i and each candidate j,
// evaluates inserting edge (i,j): with a = next(i), b = prev(j),
// delta1 = d(i,a) + d(b,j) - d(i,j); then scans tour edges (m,n) forward
// from (j, next(j)) for delta2 = d(m,a) + d(b,n) - d(m,n) < delta1, and on
// success exchanges the three edges (a 3-opt segment relocation). Every
// applied move strictly decreases the cost. The scan range keeps the
// reconnection a single tour by construction. Cities that yield no move
// get their don't-look bit raised.
void rai_improve(Tour& t, const DistanceMatrix& m, const NeighborLists& nl,
                 Rng& rng, bool use_dlb = true);

// Neighbor-list-guided first-improvement engine: 2-opt, Or-opt (segment
// lengths 1..3, both orientations) and sequential 3-opt. Keeps its own
// internal examination bits (the tour's don't-look bits are left alone) and
// stops at a local optimum or when the move budget runs out.
void lk_improve(Tour& t, const DistanceMatrix& m, const NeighborLists& nl,
                std::int64_t move_budget = 0);

// rai_improve followed by lk_improve; cost never increases.
void local_search(Tour& t, const DistanceMatrix& m, const NeighborLists& nl,
                  Rng& rng, const LocalSearchOptions& opt = {});

// Random double-bridge 4-exchange. This is the classic kick used by
// Lin-Kernighan style solvers between descents; it usually raises the
// cost. Touched cities get their don't-look bits cleared. No-op for n < 8.
void double_bridge_kick(Tour& t, const DistanceMatrix& m, Rng& rng);

}  // namespace hcma
