#include "hcma/tree_decomposition.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_set>

namespace hcma {

namespace {

int fill_edges_needed(const std::vector<std::unordered_set<int>>& adj, int v) {
  const auto& nb = adj[v];
  int fill = 0;
  for (auto it = nb.begin(); it != nb.end(); ++it) {
    auto jt = it;
    for (++jt; jt != nb.end(); ++jt)
      if (!adj[*it].count(*jt)) ++fill;
  }
  return fill;
}

}  // namespace

DecompositionResult min_fill_decomposition(const Graph& g, int width_cap) {
  const int n = g.vertex_count();
  std::vector<std::unordered_set<int>> adj(n);
  for (int v = 0; v < n; ++v)
    adj[v] = {g.neighbors(v).begin(), g.neighbors(v).end()};

  std::vector<char> alive(n, 1);
  std::vector<int> fill(n, 0);
  std::vector<char> dirty(n, 1);

  std::vector<std::vector<int>> bags;
  std::vector<int> elim_step(n, -1);  // vertex -> its elimination index
  bags.reserve(n);

  DecompositionResult result;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      if (dirty[v]) {
        fill[v] = fill_edges_needed(adj, v);
        dirty[v] = 0;
      }
      if (best == -1 || fill[v] < fill[best]) best = v;  // ties: lowest id
    }
    const int bag_size = static_cast<int>(adj[best].size()) + 1;
    if (bag_size - 1 > width_cap) {
      result.capped = true;
      result.width = bag_size - 1;
      return result;
    }
    std::vector<int> bag(adj[best].begin(), adj[best].end());
    bag.push_back(best);
    std::sort(bag.begin(), bag.end());
    bags.push_back(std::move(bag));
    elim_step[best] = step;

    // connect the neighborhood into a clique, drop the vertex
    for (int u : adj[best]) {
      for (int w : adj[best]) {
        if (u < w && !adj[u].count(w)) {
          adj[u].insert(w);
          adj[w].insert(u);
          dirty[u] = dirty[w] = 1;
        }
      }
    }
    for (int u : adj[best]) {
      adj[u].erase(best);
      dirty[u] = 1;
    }
    adj[best].clear();
    alive[best] = 0;
  }

  TreeDecomposition td;
  td.bags = std::move(bags);
  td.parent.assign(n, -1);
  td.width = 0;
  for (int i = 0; i < n; ++i) {
    td.width = std::max(td.width, static_cast<int>(td.bags[i].size()) - 1);
    // parent = bag of the earliest-eliminated other member
    int earliest = -1;
    for (int v : td.bags[i]) {
      if (elim_step[v] == i) continue;  // the eliminated vertex itself
      if (elim_step[v] > i && (earliest == -1 || elim_step[v] < earliest))
        earliest = elim_step[v];
    }
    td.parent[i] = earliest;  // -1 only for the last bag
  }
  result.td = std::move(td);
  result.width = result.td->width;
  return result;
}

bool validate_decomposition(const Graph& g, const TreeDecomposition& td) {
  const int n = g.vertex_count();
  const int bag_count = static_cast<int>(td.bags.size());
  int width = 0;
  std::vector<std::vector<int>> containing(n);
  for (int i = 0; i < bag_count; ++i) {
    width = std::max(width, static_cast<int>(td.bags[i].size()) - 1);
    for (int v : td.bags[i]) {
      if (v < 0 || v >= n) return false;
      containing[v].push_back(i);
    }
  }
  if (width != td.width) return false;

  // node coverage
  for (int v = 0; v < n; ++v)
    if (containing[v].empty()) return false;

  // edge coverage
  for (const auto& [u, v] : g.edges()) {
    bool covered = false;
    for (int i : containing[u]) {
      const auto& bag = td.bags[i];
      if (std::binary_search(bag.begin(), bag.end(), v)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }

  // parent links form a tree with exactly one root
  int roots = 0;
  for (int i = 0; i < bag_count; ++i) {
    if (td.parent[i] == -1)
      ++roots;
    else if (td.parent[i] < 0 || td.parent[i] >= bag_count)
      return false;
  }
  if (roots != 1) return false;

  // coherence: bags containing v induce a connected subtree. Walk each
  // bag toward the root counting steps inside v's set; connected iff the
  // set has exactly one member whose parent is outside the set.
  for (int v = 0; v < n; ++v) {
    std::vector<char> in_set(bag_count, 0);
    for (int i : containing[v]) in_set[i] = 1;
    int tops = 0;
    for (int i : containing[v]) {
      const int par = td.parent[i];
      if (par == -1 || !in_set[par]) ++tops;
    }
    if (tops != 1) return false;
  }
  return true;
}

void write_pace_td(std::ostream& out, const TreeDecomposition& td, int n) {
  out << "s td " << td.bags.size() << " " << td.width + 1 << " " << n << "\n";
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (int v : td.bags[i]) out << " " << v + 1;
    out << "\n";
  }
  for (std::size_t i = 0; i < td.bags.size(); ++i)
    if (td.parent[i] != -1) out << i + 1 << " " << td.parent[i] + 1 << "\n";
}

}  // namespace hcma
