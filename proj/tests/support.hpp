#pragma once

// Test-only oracles and instance generators. Everything here is
// independent of the solver's search path: brute-force enumeration,
// Floyd-Warshall, and exhaustive move scans.

#include <optional>
#include <vector>

#include "hcma/graph.hpp"
#include "hcma/reduction.hpp"
#include "hcma/rng.hpp"
#include "hcma/tour.hpp"

namespace testsupport {

hcma::Graph cycle_graph(int n);
hcma::Graph path_graph(int n);
hcma::Graph complete_graph(int n);
hcma::Graph petersen();

// Random spanning tree plus extra random edges; connected by construction.
hcma::Graph random_connected_graph(int n, double extra_edge_prob,
                                   hcma::Rng& rng);

// Planted Hamiltonian cubic graph: a random cycle plus a random perfect
// matching avoiding cycle chords. n must be even and >= 8.
hcma::Graph planted_cubic(int n, hcma::Rng& rng,
                          std::vector<int>* planted_cycle = nullptr);

// Planted cycle plus random extra edges until the edge target is met.
hcma::Graph planted_with_edges(int n, int target_edges, hcma::Rng& rng);

std::vector<std::vector<int>> floyd_warshall(const hcma::Graph& g);

bool has_hc_bruteforce(const hcma::Graph& g);
std::optional<std::vector<int>> find_hc_bruteforce(const hcma::Graph& g);

// Minimum tour cost over all cyclic permutations (n <= 10 or so).
hcma::TourCost brute_force_optimum(const hcma::DistanceMatrix& m);

// Exhaustive scan over all 2-exchanges; true if any strictly improves.
bool has_improving_two_exchange(const hcma::Tour& t,
                                const hcma::DistanceMatrix& m);

// Random symmetric matrix with entries in [lo, hi] and sentinel diagonal.
hcma::DistanceMatrix random_matrix(int n, int lo, int hi, hcma::Rng& rng);

std::vector<int> random_permutation(int n, hcma::Rng& rng);

// Equal as cyclic sequences in either direction.
bool cyclically_equal(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace testsupport
