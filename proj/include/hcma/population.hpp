#pragma once

#include <array>
#include <vector>

#include "hcma/local_search.hpp"
#include "hcma/tour.hpp"

namespace hcma {

// Each agent carries a pocket (best remembered) and a current (exploratory)
// solution. After structure_pop, cost(pocket) <= cost(current) per agent
// and cost(pocket(parent)) <= cost(pocket(child)) along every tree edge.
struct Agent {
  Tour pocket;
  Tour current;
};

// Complete ternary tree of 13 agents: children of i are 3i+1, 3i+2, 3i+3.
class Population {
 public:
  static constexpr int kAgents = 13;
  static int parent_of(int i) { return (i - 1) / 3; }
  static std::array<int, 3> children_of(int i) {
    return {3 * i + 1, 3 * i + 2, 3 * i + 3};
  }
  static bool is_leader(int i) { return i <= 3; }

  std::vector<Agent> agents;
  int generation = 0;
  std::vector<TourCost> best_cost_history;

  int best_pocket_index() const;
  TourCost best_pocket_cost() const;
  bool all_pockets_equal_cost() const;

  // Recompute every cached tour cost; required whenever the working matrix
  // the tours are measured against has changed.
  void refresh_costs(const DistanceMatrix& m);
  void clear_all_dont_look();
};

// 26 nearest-neighbor tours from independent random starts, each improved
// by local_search, then structured once.
Population initialize_pop(const DistanceMatrix& m, const NeighborLists& nl,
                          Rng& rng, const LocalSearchOptions& opt = {});

// UpdatePocket (swap pocket/current per agent when the current is cheaper)
// followed by PocketPropagation (bubble cheaper pockets toward the root
// until the tree order holds).
void structure_pop(Population& p);

// Vertex-disjoint directed paths covering all cities; every arc comes from
// the union of the two parent tours.
struct SubtourCover {
  std::vector<std::vector<int>> paths;
};

SubtourCover sax_crossover(const Tour& t1, const Tour& t2, Rng& rng);

// Greedy concatenation of a path cover into one tour: repeatedly join the
// current tail to the nearest remaining head, then close the cycle.
Tour stitch_cover(const SubtourCover& cover, const DistanceMatrix& m);

struct RecombineOptions {
  // When true (default) every recombination input is read from a snapshot
  // of the population taken at entry, so assignment order cannot matter.
  bool rhs_from_snapshot = true;
  LocalSearchOptions search;
};

// Assigns every agent's current: the root from
// Recombine(pocket(child 1), current(child 2)); each level-2 subpopulation
// {leader; off1..off3} (children labeled by a random permutation) from
//   current(leader) <- Recombine(pocket(off2), pocket(off3))
//   current(off1)   <- Recombine(pocket(leader), current(off2))
//   current(off2)   <- Recombine(pocket(off1), current(off3))
//   current(off3)   <- Recombine(pocket(off2), current(off1))
// Recombine = SAX -> stitch -> local_search. Pockets are never written.
void recombine_pop(Population& p, const DistanceMatrix& m,
                   const NeighborLists& nl, Rng& rng,
                   const RecombineOptions& opt = {});

// Relocate a random city after another random city and clear don't-look
// bits on the five cities involved. Exposed for restart and tests.
void mutate_insertion(Tour& t, const DistanceMatrix& m, Rng& rng);

// With probability mutation_rate per agent: mutate a copy of the current,
// run local_search on it, and keep it only if strictly cheaper.
void mutate_pop(Population& p, const DistanceMatrix& m,
                const NeighborLists& nl, Rng& rng, double mutation_rate,
                const LocalSearchOptions& opt = {});

// Keep the best pocket verbatim; rebuild every other tour with
// nearest-neighbor construction, one mutation, and rai_improve.
void restart_pop(Population& p, const DistanceMatrix& m,
                 const NeighborLists& nl, Rng& rng);

}  // namespace hcma
