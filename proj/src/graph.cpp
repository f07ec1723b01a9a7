#include "hcma/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <queue>
#include <sstream>

namespace hcma {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edge_list) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  n_ = n;
  adj_.assign(n, {});
  for (const auto& [u, v] : edge_list) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop rejected");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  edge_count_ = 0;
  for (auto& nb : adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    edge_count_ += nb.size();
  }
  edge_count_ /= 2;
}

bool Graph::has_edge(int u, int v) const {
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

namespace {

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Splits "KEY : value" / "KEY: value" / "KEY value"; returns {KEY, value}.
std::pair<std::string, std::string> split_keyword(const std::string& line) {
  std::size_t colon = line.find(':');
  if (colon != std::string::npos)
    return {upper(trim(line.substr(0, colon))), trim(line.substr(colon + 1))};
  std::size_t sp = line.find_first_of(" \t");
  if (sp == std::string::npos) return {upper(trim(line)), ""};
  return {upper(trim(line.substr(0, sp))), trim(line.substr(sp + 1))};
}

}  // namespace

Graph parse_hcp(std::istream& in) {
  int dimension = -1;
  bool in_edges = false;
  bool terminated = false;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  int pending = -1;  // first endpoint of a half-read pair
  int pending_line = 0;

  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;

    if (!in_edges) {
      auto [key, value] = split_keyword(t);
      if (key == "DIMENSION") {
        try {
          dimension = std::stoi(value);
        } catch (const std::exception&) {
          throw ParseError("bad DIMENSION value '" + value + "'", lineno);
        }
        if (dimension < 1) throw ParseError("DIMENSION must be positive", lineno);
      } else if (key == "EDGE_DATA_FORMAT") {
        if (upper(value) != "EDGE_LIST")
          throw ParseError("unsupported EDGE_DATA_FORMAT '" + value + "'", lineno);
      } else if (key == "EDGE_DATA_SECTION") {
        if (dimension < 1) throw ParseError("EDGE_DATA_SECTION before DIMENSION", lineno);
        in_edges = true;
      } else if (key == "EOF") {
        break;
      }
      // NAME, TYPE, COMMENT and anything else are ignored.
      continue;
    }

    if (terminated) {
      auto [key, value] = split_keyword(t);
      if (key == "EOF") break;
      continue;
    }

    std::istringstream ls(t);
    std::string tok;
    while (ls >> tok) {
      int v = 0;
      try {
        std::size_t used = 0;
        v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("malformed edge token '" + tok + "'", lineno);
      }
      if (v == -1) {
        if (pending != -1)
          throw ParseError("dangling edge endpoint before -1", pending_line);
        terminated = true;
        break;
      }
      if (v < 1 || v > dimension)
        throw ParseError("vertex id " + std::to_string(v) + " outside 1.." +
                             std::to_string(dimension),
                         lineno);
      if (pending == -1) {
        pending = v;
        pending_line = lineno;
      } else {
        if (pending == v) throw ParseError("self-loop " + std::to_string(v), lineno);
        edges.emplace_back(pending - 1, v - 1);
        pending = -1;
      }
    }
  }

  if (dimension < 1) throw ParseError("missing DIMENSION", lineno);
  if (!in_edges) throw ParseError("missing EDGE_DATA_SECTION", lineno);
  if (!terminated) throw ParseError("EDGE_DATA_SECTION not terminated by -1", lineno);
  return Graph(dimension, edges);
}

Graph parse_hcp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_hcp(in);
}

std::string write_hcp(const Graph& g, const std::string& name) {
  std::ostringstream out;
  out << "NAME : " << name << "\n";
  out << "TYPE : HCP\n";
  out << "DIMENSION : " << g.vertex_count() << "\n";
  out << "EDGE_DATA_FORMAT : EDGE_LIST\n";
  out << "EDGE_DATA_SECTION\n";
  for (const auto& [u, v] : g.edges()) out << u + 1 << " " << v + 1 << "\n";
  out << "-1\n";
  out << "EOF\n";
  return out.str();
}

std::vector<int> bfs_distances(const Graph& g, int source) {
  const int n = g.vertex_count();
  if (source < 0 || source >= n) throw std::out_of_range("bfs source out of range");
  std::vector<int> dist(n, kUnreachable);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

std::optional<std::vector<int>> shortest_path(const Graph& g, int a, int b) {
  const int n = g.vertex_count();
  if (a < 0 || a >= n || b < 0 || b >= n) throw std::out_of_range("endpoint out of range");
  if (a == b) throw std::invalid_argument("shortest_path requires a != b");
  std::vector<int> parent(n, -1);
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  seen[a] = 1;
  q.push(a);
  while (!q.empty() && !seen[b]) {
    int u = q.front();
    q.pop();
    for (int v : g.neighbors(u)) {  // ascending id: deterministic tie-break
      if (!seen[v]) {
        seen[v] = 1;
        parent[v] = u;
        q.push(v);
      }
    }
  }
  if (!seen[b]) return std::nullopt;
  std::vector<int> path;
  for (int v = b; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

bool verify_hc(const Graph& g, const CycleCandidate& c) {
  const int n = g.vertex_count();
  if (static_cast<int>(c.order.size()) != n || n < 3) return false;
  std::vector<char> seen(n, 0);
  for (int v : c.order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  for (int i = 0; i < n; ++i) {
    if (!g.has_edge(c.order[i], c.order[(i + 1) % n])) return false;
  }
  return true;
}

bool ore_check(const Graph& g) {
  const int n = g.vertex_count();
  if (n <= 3) return false;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!g.has_edge(a, b) && g.degree(a) + g.degree(b) < n) return false;
  return true;
}

bool dirac_check(const Graph& g) {
  const int n = g.vertex_count();
  if (n <= 3) return false;
  for (int v = 0; v < n; ++v)
    if (2 * g.degree(v) < n) return false;
  return true;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return false;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](int d) { return d == kUnreachable; });
}

std::optional<int> find_cut_vertex(const Graph& g) {
  // Iterative Tarjan articulation-point scan.
  const int n = g.vertex_count();
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1), child_count(n, 0);
  std::vector<std::size_t> next_edge(n, 0);
  int timer = 0;
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<int> stack{root};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      int u = stack.back();
      if (next_edge[u] < g.neighbors(u).size()) {
        int v = g.neighbors(u)[next_edge[u]++];
        if (disc[v] == -1) {
          parent[v] = u;
          ++child_count[u];
          disc[v] = low[v] = timer++;
          stack.push_back(v);
        } else if (v != parent[u]) {
          low[u] = std::min(low[u], disc[v]);
        }
      } else {
        stack.pop_back();
        int p = parent[u];
        if (p != -1) {
          low[p] = std::min(low[p], low[u]);
          if (p != root && low[u] >= disc[p]) return p;
          if (p == root && child_count[root] > 1) return root;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace hcma
