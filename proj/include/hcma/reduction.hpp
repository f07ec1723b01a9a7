#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hcma/graph.hpp"

namespace hcma {

using TourCost = std::int64_t;

// Dense symmetric distance matrix produced by the HCP->TSP reductions.
// Entries are 32-bit by default; the compact mode stores 16-bit cells,
// which is enough because every value written is at most n + 1.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(int n, bool compact);

  int size() const { return n_; }
  bool compact() const { return compact_; }

  std::int32_t at(int a, int b) const {
    const std::size_t i = static_cast<std::size_t>(a) * n_ + b;
    return compact_ ? narrow_[i] : wide_[i];
  }

  // Writes both (a,b) and (b,a).
  void set(int a, int b, std::int32_t value);

  // Diagonal cells hold this; never a legal tour edge weight.
  std::int32_t diagonal_sentinel() const { return n_ + 1; }

 private:
  int n_ = 0;
  bool compact_ = false;
  std::vector<std::int32_t> wide_;
  std::vector<std::uint16_t> narrow_;
};

// Karp reduction: edges cost 1, every other off-diagonal pair costs 2.
DistanceMatrix sr_reduce(const Graph& g, bool compact = false);

// Transitive-closure reduction: edges cost 1, other pairs cost their hop
// distance in g. Throws std::invalid_argument if g is disconnected.
DistanceMatrix tc_reduce(const Graph& g, bool compact = false);

TourCost tour_cost(const DistanceMatrix& m, std::span<const int> order);
TourCost tour_cost(const DistanceMatrix& m, const CycleCandidate& c);

// TSPLIB EXPLICIT FULL_MATRIX dump, for feeding external TSP solvers.
void write_explicit_matrix(std::ostream& out, const DistanceMatrix& m,
                           const std::string& name);

}  // namespace hcma
