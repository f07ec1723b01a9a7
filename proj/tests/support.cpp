#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace testsupport {

using hcma::DistanceMatrix;
using hcma::Graph;
using hcma::Rng;
using hcma::TourCost;

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, edges);
}

Graph petersen() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer pentagon
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    edges.emplace_back(i, 5 + i);                // spokes
  }
  return Graph(10, edges);
}

Graph random_connected_graph(int n, double extra_edge_prob, Rng& rng) {
  std::vector<int> order = random_permutation(n, rng);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    const int parent = order[rng.below(i)];
    edges.emplace_back(parent, order[i]);
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(extra_edge_prob)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph planted_cubic(int n, Rng& rng, std::vector<int>* planted_cycle) {
  if (n % 2 != 0 || n < 8)
    throw std::invalid_argument("planted_cubic needs even n >= 8");
  const std::vector<int> cyc = random_permutation(n, rng);
  std::set<std::pair<int, int>> used;
  auto canon = [](int a, int b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    edges.push_back(canon(cyc[i], cyc[(i + 1) % n]));
    used.insert(edges.back());
  }
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<int> pairing = random_permutation(n, rng);
    bool ok = true;
    for (int i = 0; i < n && ok; i += 2)
      if (used.count(canon(pairing[i], pairing[i + 1]))) ok = false;
    if (!ok) continue;
    for (int i = 0; i < n; i += 2)
      edges.push_back(canon(pairing[i], pairing[i + 1]));
    if (planted_cycle) *planted_cycle = cyc;
    return Graph(n, edges);
  }
  throw std::runtime_error("planted_cubic: no matching found");
}

Graph planted_with_edges(int n, int target_edges, Rng& rng) {
  if (target_edges < n) throw std::invalid_argument("too few edges for a cycle");
  const std::vector<int> cyc = random_permutation(n, rng);
  std::set<std::pair<int, int>> used;
  auto canon = [](int a, int b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  for (int i = 0; i < n; ++i) used.insert(canon(cyc[i], cyc[(i + 1) % n]));
  while (static_cast<int>(used.size()) < target_edges) {
    const int u = rng.index(n), v = rng.index(n);
    if (u != v) used.insert(canon(u, v));
  }
  return Graph(n, {used.begin(), used.end()});
}

std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
  const int n = g.vertex_count();
  const int inf = hcma::kUnreachable;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (d[i][k] == inf) continue;
      for (int j = 0; j < n; ++j)
        if (d[k][j] != inf && d[i][k] + d[k][j] < d[i][j])
          d[i][j] = d[i][k] + d[k][j];
    }
  return d;
}

namespace {

// Enumerates cyclic orders with vertex 0 first and order[1] < order[n-1]
// (each undirected cycle visited once); invokes fn until it returns true.
template <typename Fn>
bool enumerate_cycles(int n, Fn&& fn) {
  std::vector<int> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> order(n);
  order[0] = 0;
  do {
    if (perm.front() > perm.back()) continue;
    std::copy(perm.begin(), perm.end(), order.begin() + 1);
    if (fn(order)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

bool has_hc_bruteforce(const Graph& g) {
  return find_hc_bruteforce(g).has_value();
}

std::optional<std::vector<int>> find_hc_bruteforce(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 3) return std::nullopt;
  std::optional<std::vector<int>> found;
  enumerate_cycles(n, [&](const std::vector<int>& order) {
    for (int i = 0; i < n; ++i)
      if (!g.has_edge(order[i], order[(i + 1) % n])) return false;
    found = order;
    return true;
  });
  return found;
}

TourCost brute_force_optimum(const DistanceMatrix& m) {
  const int n = m.size();
  TourCost best = -1;
  enumerate_cycles(n, [&](const std::vector<int>& order) {
    const TourCost c = hcma::tour_cost(m, std::span<const int>(order));
    if (best < 0 || c < best) best = c;
    return false;
  });
  return best;
}

bool has_improving_two_exchange(const hcma::Tour& t,
                                const DistanceMatrix& m) {
  const int n = t.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // same edge pair
      const int a = t.at_rank(i), b = t.at_rank(i + 1);
      const int c = t.at_rank(j), d = t.at_rank((j + 1) % n);
      const TourCost delta = TourCost(m.at(a, c)) + m.at(b, d) - m.at(a, b) -
                             m.at(c, d);
      if (delta < 0) return true;
    }
  }
  return false;
}

DistanceMatrix random_matrix(int n, int lo, int hi, Rng& rng) {
  DistanceMatrix m(n, false);
  for (int a = 0; a < n; ++a) {
    m.set(a, a, m.diagonal_sentinel());
    for (int b = a + 1; b < n; ++b)
      m.set(a, b, lo + static_cast<int>(rng.below(hi - lo + 1)));
  }
  return m;
}

std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(p.begin(), p.end());
  return p;
}

bool cyclically_equal(const std::vector<int>& a, const std::vector<int>& b) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n || n == 0) return false;
  const int shift =
      static_cast<int>(std::find(b.begin(), b.end(), a[0]) - b.begin());
  if (shift == n) return false;
  bool fwd = true, bwd = true;
  for (int i = 0; i < n; ++i) {
    if (a[i] != b[(shift + i) % n]) fwd = false;
    if (a[i] != b[(shift - i + n) % n]) bwd = false;
  }
  return fwd || bwd;
}

}  // namespace testsupport
