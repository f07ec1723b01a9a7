#include "hcma/reduction.hpp"

#include <cassert>
#include <ostream>
#include <stdexcept>

namespace hcma {

DistanceMatrix::DistanceMatrix(int n, bool compact) : n_(n), compact_(compact) {
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  if (compact_) {
    if (n + 1 > 0xFFFF)
      throw std::invalid_argument("compact matrix limited to n <= 65534");
    narrow_.assign(cells, 0);
  } else {
    wide_.assign(cells, 0);
  }
}

void DistanceMatrix::set(int a, int b, std::int32_t value) {
  const std::size_t i = static_cast<std::size_t>(a) * n_ + b;
  const std::size_t j = static_cast<std::size_t>(b) * n_ + a;
  if (compact_) {
    assert(value >= 0 && value <= 0xFFFF);
    narrow_[i] = static_cast<std::uint16_t>(value);
    narrow_[j] = static_cast<std::uint16_t>(value);
  } else {
    wide_[i] = value;
    wide_[j] = value;
  }
}

DistanceMatrix sr_reduce(const Graph& g, bool compact) {
  const int n = g.vertex_count();
  DistanceMatrix m(n, compact);
  for (int a = 0; a < n; ++a) {
    m.set(a, a, m.diagonal_sentinel());
    for (int b = a + 1; b < n; ++b) m.set(a, b, g.has_edge(a, b) ? 1 : 2);
  }
  return m;
}

DistanceMatrix tc_reduce(const Graph& g, bool compact) {
  const int n = g.vertex_count();
  DistanceMatrix m(n, compact);
  for (int a = 0; a < n; ++a) {
    const auto dist = bfs_distances(g, a);
    m.set(a, a, m.diagonal_sentinel());
    for (int b = a + 1; b < n; ++b) {
      if (dist[b] == kUnreachable)
        throw std::invalid_argument("tc_reduce requires a connected graph");
      m.set(a, b, dist[b]);
    }
  }
  return m;
}

TourCost tour_cost(const DistanceMatrix& m, std::span<const int> order) {
  const int n = static_cast<int>(order.size());
  TourCost total = 0;
  for (int i = 0; i < n; ++i) total += m.at(order[i], order[(i + 1) % n]);
  return total;
}

TourCost tour_cost(const DistanceMatrix& m, const CycleCandidate& c) {
  return tour_cost(m, std::span<const int>(c.order));
}

void write_explicit_matrix(std::ostream& out, const DistanceMatrix& m,
                           const std::string& name) {
  const int n = m.size();
  out << "NAME : " << name << "\n";
  out << "TYPE : TSP\n";
  out << "DIMENSION : " << n << "\n";
  out << "EDGE_WEIGHT_TYPE : EXPLICIT\n";
  out << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
  out << "EDGE_WEIGHT_SECTION\n";
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (b) out << ' ';
      out << m.at(a, b);
    }
    out << "\n";
  }
  out << "EOF\n";
}

}  // namespace hcma
