#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hcma/reduction.hpp"
#include "hcma/rng.hpp"

namespace hcma {

// Array-based cyclic tour: position maps rank -> city, rank maps city ->
// rank, and the two stay mutual inverses across every move. The cost is
// cached and patched incrementally by move primitives; with
// debug::paranoid_checks on, each primitive re-validates the whole
// invariant against a from-scratch recompute.
//
// Each city carries a don't-look bit: FALSE marks the city as critical
// (worth examining); local search raises bits, recombination and mutation
// clear them on the cities they touch.
class Tour {
 public:
  Tour(std::vector<int> order, const DistanceMatrix& m);

  int size() const { return n_; }
  int at_rank(int r) const { return position_[r]; }
  int rank_of(int city) const { return rank_[city]; }
  int next(int city) const { return position_[rank_[city] + 1 == n_ ? 0 : rank_[city] + 1]; }
  int prev(int city) const { return position_[rank_[city] == 0 ? n_ - 1 : rank_[city] - 1]; }
  TourCost cost() const { return cost_; }
  const std::vector<int>& order() const { return position_; }

  bool dont_look(int city) const { return dlb_[city] != 0; }
  void set_dont_look(int city, bool value) { dlb_[city] = value ? 1 : 0; }
  void clear_all_dont_look();
  void raise_all_dont_look();

  // Recompute the cached cost against m (needed whenever the working
  // matrix mutates under the tour).
  void refresh_cost(const DistanceMatrix& m);

  // --- move primitives -----------------------------------------------
  // Each takes the caller-computed cost delta and patches the cache. The
  // matrix argument is only consulted for paranoid re-validation.

  // Reverse the cyclic rank segment [rank_from .. rank_to] (the shorter
  // equivalent side is reversed internally).
  void apply_reverse(int rank_from, int rank_to, TourCost delta,
                     const DistanceMatrix& m);

  // Relocate the cyclic rank segment [seg_from .. seg_to] so it follows
  // the city currently at dest_rank (which must lie outside the segment),
  // optionally reversing the segment.
  void apply_segment_move(int seg_from, int seg_to, int dest_rank,
                          bool reversed, TourCost delta,
                          const DistanceMatrix& m);

  // Overwrite `cities.size()` positions starting at start_rank
  // (cyclically) with the given cities; used by composite 3-opt moves.
  void apply_block_rewrite(int start_rank, const std::vector<int>& cities,
                           TourCost delta, const DistanceMatrix& m);

  // Full invariant check: permutation validity, rank/position inverse,
  // cached cost == recompute. Throws std::logic_error on violation.
  void validate(const DistanceMatrix& m) const;

 private:
  void maybe_validate(const DistanceMatrix& m) const {
    if (debug::paranoid_checks) validate(m);
  }

  int n_ = 0;
  std::vector<int> position_;
  std::vector<int> rank_;
  std::vector<std::uint8_t> dlb_;
  TourCost cost_ = 0;
};

// Per-city candidate lists: the k nearest other cities under the current
// working matrix, ascending by (distance, id).
struct NeighborLists {
  int k = 0;
  std::vector<std::vector<int>> lists;
};

NeighborLists build_neighbor_lists(const DistanceMatrix& m, int k);

// Nearest-neighbor construction from a uniformly random start city;
// equal-distance ties are resolved uniformly at random.
Tour nearest_neighbor_tour(const DistanceMatrix& m, Rng& rng);

// Remove `city` and re-insert it directly after `after`. Returns false
// (leaving the tour untouched) if city == after or city == next(after);
// inserting after the city's own predecessor succeeds as a no-op.
bool apply_insertion(Tour& t, const DistanceMatrix& m, int city, int after);

// TSPLIB TOUR_SECTION serialization (1-based ids, -1 terminated).
void write_tour(std::ostream& out, const std::vector<int>& order,
                const std::string& name);
std::vector<int> parse_tour(std::istream& in);

}  // namespace hcma
