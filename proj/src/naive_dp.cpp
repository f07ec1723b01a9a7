#include "hcma/naive_dp.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <stdexcept>
#include <unordered_map>

namespace hcma {

namespace detail {

namespace {

std::vector<int> sorted_difference(const std::vector<int>& a,
                                   const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

}  // namespace

NiceTree build_nice_tree(const TreeDecomposition& td, const Graph& g) {
  NiceTree nt;
  nt.width = td.width;
  const int bag_count = static_cast<int>(td.bags.size());
  int root_bag = -1;
  std::vector<std::vector<int>> children(bag_count);
  for (int i = 0; i < bag_count; ++i) {
    if (td.parent[i] == -1)
      root_bag = i;
    else
      children[td.parent[i]].push_back(i);
  }
  if (root_bag == -1) throw std::invalid_argument("decomposition has no root");

  auto add_node = [&nt](NiceNode n) {
    nt.nodes.push_back(std::move(n));
    return static_cast<int>(nt.nodes.size()) - 1;
  };

  // Leaf chain introducing every vertex of `bag`.
  auto build_leaf_chain = [&](const std::vector<int>& bag) {
    int cur = add_node(NiceNode{NiceNode::kLeaf, -1, -1, -1, -1, -1, {}});
    std::vector<int> cur_bag;
    for (int v : bag) {
      cur_bag.insert(std::lower_bound(cur_bag.begin(), cur_bag.end(), v), v);
      cur = add_node(
          NiceNode{NiceNode::kIntroduce, cur, -1, v, -1, -1, cur_bag});
    }
    return cur;
  };

  // Chain on top of `top` transforming bag `from` into bag `to`.
  auto build_chain = [&](int top, const std::vector<int>& from,
                         const std::vector<int>& to) {
    int cur = top;
    std::vector<int> cur_bag = from;
    for (int v : sorted_difference(from, to)) {
      cur_bag.erase(std::lower_bound(cur_bag.begin(), cur_bag.end(), v));
      cur = add_node(NiceNode{NiceNode::kForget, cur, -1, v, -1, -1, cur_bag});
    }
    for (int v : sorted_difference(to, from)) {
      cur_bag.insert(std::lower_bound(cur_bag.begin(), cur_bag.end(), v), v);
      cur = add_node(
          NiceNode{NiceNode::kIntroduce, cur, -1, v, -1, -1, cur_bag});
    }
    return cur;
  };

  // Iterative post-order over the rooted bag tree.
  std::vector<int> topped(bag_count, -1);  // bag -> nice node with that bag
  std::vector<std::pair<int, std::size_t>> stack{{root_bag, 0}};
  while (!stack.empty()) {
    auto& [bag, next_child] = stack.back();
    if (next_child < children[bag].size()) {
      stack.emplace_back(children[bag][next_child++], 0);
      continue;
    }
    int top;
    if (children[bag].empty()) {
      top = build_leaf_chain(td.bags[bag]);
    } else {
      top = -1;
      for (int c : children[bag]) {
        const int lifted = build_chain(topped[c], td.bags[c], td.bags[bag]);
        top = top == -1 ? lifted
                        : add_node(NiceNode{NiceNode::kJoin, top, lifted, -1,
                                            -1, -1, td.bags[bag]});
      }
    }
    topped[bag] = top;
    stack.pop_back();
  }

  nt.root = build_chain(topped[root_bag], td.bags[root_bag], {});

  // Forget node of each vertex (unique: the bags containing a vertex form
  // a connected subtree, and the root chain empties the root bag).
  const int n = g.vertex_count();
  std::vector<int> forget_node(n, -1);
  for (int i = 0; i < static_cast<int>(nt.nodes.size()); ++i) {
    if (nt.nodes[i].kind == NiceNode::kForget) {
      if (forget_node[nt.nodes[i].vertex] != -1)
        throw std::logic_error("vertex forgotten twice");
      forget_node[nt.nodes[i].vertex] = i;
    }
  }
  for (int v = 0; v < n; ++v)
    if (forget_node[v] == -1) throw std::logic_error("vertex never forgotten");

  // Attach each edge right below the forget of its first-forgotten
  // endpoint. Construction ids grow upward, so of the two comparable
  // forget nodes the descendant has the smaller id.
  for (const auto& [u, v] : g.edges()) {
    const int f = std::min(forget_node[u], forget_node[v]);
    NiceNode edge_node{NiceNode::kEdge, nt.nodes[f].child1, -1, -1,
                       u,              v,                   {}};
    edge_node.bag = nt.nodes[edge_node.child1].bag;
    const auto& bag = edge_node.bag;
    if (!std::binary_search(bag.begin(), bag.end(), u) ||
        !std::binary_search(bag.begin(), bag.end(), v))
      throw std::logic_error("edge endpoints missing from attachment bag");
    const int id = add_node(std::move(edge_node));
    nt.nodes[f].child1 = id;
  }
  return nt;
}

bool validate_nice_tree(const NiceTree& nt, const Graph& g) {
  const int n = g.vertex_count();
  const int count = static_cast<int>(nt.nodes.size());
  if (nt.root < 0 || nt.root >= count) return false;
  if (!nt.nodes[nt.root].bag.empty()) return false;

  std::vector<std::vector<int>> containing(n);
  std::vector<int> parent(count, -1);
  int width = 0;
  for (int i = 0; i < count; ++i) {
    const auto& node = nt.nodes[i];
    width = std::max(width, static_cast<int>(node.bag.size()) - 1);
    for (int v : node.bag) containing[v].push_back(i);
    for (int c : {node.child1, node.child2})
      if (c != -1) {
        if (parent[c] != -1) return false;  // a node adopted twice
        parent[c] = i;
      }
    // shape checks
    auto has = [&](const std::vector<int>& bag, int v) {
      return std::binary_search(bag.begin(), bag.end(), v);
    };
    switch (node.kind) {
      case NiceNode::kLeaf:
        if (!node.bag.empty() || node.child1 != -1) return false;
        break;
      case NiceNode::kIntroduce: {
        const auto& cb = nt.nodes[node.child1].bag;
        if (has(cb, node.vertex) || !has(node.bag, node.vertex)) return false;
        if (node.bag.size() != cb.size() + 1) return false;
        break;
      }
      case NiceNode::kForget: {
        const auto& cb = nt.nodes[node.child1].bag;
        if (!has(cb, node.vertex) || has(node.bag, node.vertex)) return false;
        if (node.bag.size() + 1 != cb.size()) return false;
        break;
      }
      case NiceNode::kEdge:
        if (!has(node.bag, node.eu) || !has(node.bag, node.ev)) return false;
        if (node.bag != nt.nodes[node.child1].bag) return false;
        break;
      case NiceNode::kJoin:
        if (node.bag != nt.nodes[node.child1].bag ||
            node.bag != nt.nodes[node.child2].bag)
          return false;
        break;
    }
  }
  if (width > nt.width) return false;

  // every vertex covered; coherence via unique top per vertex
  for (int v = 0; v < n; ++v) {
    if (containing[v].empty()) return false;
    std::vector<char> in_set(count, 0);
    for (int i : containing[v]) in_set[i] = 1;
    int tops = 0;
    for (int i : containing[v])
      if (parent[i] == -1 || !in_set[parent[i]]) ++tops;
    if (tops != 1) return false;
  }

  // each graph edge introduced exactly once, with both ends in the bag
  std::unordered_map<std::int64_t, int> edge_seen;
  for (const auto& node : nt.nodes) {
    if (node.kind != NiceNode::kEdge) continue;
    const int a = std::min(node.eu, node.ev), b = std::max(node.eu, node.ev);
    ++edge_seen[static_cast<std::int64_t>(a) * n + b];
  }
  const auto edges = g.edges();
  if (edge_seen.size() != edges.size()) return false;
  for (const auto& [u, v] : edges) {
    auto it = edge_seen.find(static_cast<std::int64_t>(u) * n + v);
    if (it == edge_seen.end() || it->second != 1) return false;
  }
  return true;
}

}  // namespace detail

namespace {

using detail::NiceNode;
using detail::NiceTree;

constexpr int kMaxSlots = 15;  // partner nibble reserves 15 for "none"
constexpr std::uint8_t kNoPartner = 15;

struct Key {
  std::uint64_t lo = 0, hi = 0;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t x = k.lo * 0x9e3779b97f4a7c15ULL;
    x ^= (x >> 29);
    x += k.hi * 0xbf58476d1ce4e5b9ULL;
    x ^= (x >> 32);
    return static_cast<std::size_t>(x);
  }
};

// Decoded DP state over the slots of one bag.
struct State {
  std::array<std::uint8_t, kMaxSlots> deg{};
  std::array<std::uint8_t, kMaxSlots> partner{};
  bool closed = false;

  State() { partner.fill(kNoPartner); }

  Key encode(int slots) const {
    Key k;
    for (int s = 0; s < slots; ++s) {
      const std::uint64_t field =
          static_cast<std::uint64_t>(deg[s]) | (std::uint64_t(partner[s]) << 2);
      if (s < 10)
        k.lo |= field << (6 * s);
      else
        k.hi |= field << (6 * (s - 10));
    }
    if (closed) k.hi |= std::uint64_t(1) << 63;
    return k;
  }

  static State decode(const Key& k, int slots) {
    State st;
    for (int s = 0; s < slots; ++s) {
      const std::uint64_t field =
          s < 10 ? (k.lo >> (6 * s)) & 0x3F : (k.hi >> (6 * (s - 10))) & 0x3F;
      st.deg[s] = field & 0x3;
      st.partner[s] = (field >> 2) & 0xF;
    }
    st.closed = (k.hi >> 63) & 1;
    return st;
  }
};

struct Back {
  std::int32_t c1 = -1, c2 = -1;
  std::uint8_t action = 0;  // edge node: 1 = edge used
};

struct Table {
  std::vector<Key> keys;
  std::vector<Back> back;
  std::unordered_map<Key, std::int32_t, KeyHash> index;

  std::int32_t add(const Key& k, const Back& b) {
    auto [it, inserted] = index.try_emplace(k, static_cast<std::int32_t>(keys.size()));
    if (inserted) {
      keys.push_back(k);
      back.push_back(b);
    }
    return it->second;
  }
  void release_index() {
    index.clear();
    index.rehash(0);
  }
};

int slot_of(const std::vector<int>& bag, int v) {
  return static_cast<int>(
      std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

class DpRunner {
 public:
  DpRunner(const Graph& g, const NiceTree& nt,
           std::chrono::steady_clock::time_point deadline,
           std::size_t state_cap)
      : g_(g), nt_(nt), deadline_(deadline), state_cap_(state_cap) {}

  DpResult run() {
    const int count = static_cast<int>(nt_.nodes.size());
    tables_.resize(count);
    const std::vector<int> order = topo_order();
    for (int id : order) {
      process(id);
      if (aborted_ || expired() || total_states_ > state_cap_)
        return {DpResult::Status::timeout, {}};
      const auto& node = nt_.nodes[id];
      if (node.child1 != -1) tables_[node.child1].release_index();
      if (node.child2 != -1) tables_[node.child2].release_index();
    }

    State success;
    success.closed = true;
    const Key want = success.encode(0);
    auto& root_table = tables_[nt_.root];
    for (std::size_t i = 0; i < root_table.keys.size(); ++i) {
      if (root_table.keys[i] == want)
        return {DpResult::Status::found,
                reconstruct(nt_.root, static_cast<std::int32_t>(i))};
    }
    return {DpResult::Status::no_cycle, {}};
  }

 private:
  bool expired() {
    return std::chrono::steady_clock::now() >= deadline_;
  }

  // Periodic limit probe used inside per-node loops; once it trips, the
  // whole run is abandoned (a partially built table must never be used).
  bool tick(std::size_t pending) {
    if (((++ticks_) & 0xFFF) != 0) return aborted_;
    if (expired() || total_states_ + pending > state_cap_) aborted_ = true;
    return aborted_;
  }

  std::vector<int> topo_order() const {
    std::vector<int> order;
    order.reserve(nt_.nodes.size());
    std::vector<std::pair<int, int>> stack{{nt_.root, 0}};
    while (!stack.empty()) {
      auto& [id, phase] = stack.back();
      const auto& node = nt_.nodes[id];
      if (phase == 0) {
        phase = 1;
        if (node.child1 != -1) stack.emplace_back(node.child1, 0);
      } else if (phase == 1) {
        phase = 2;
        if (node.child2 != -1) stack.emplace_back(node.child2, 0);
      } else {
        order.push_back(id);
        stack.pop_back();
      }
    }
    return order;
  }

  void process(int id) {
    const auto& node = nt_.nodes[id];
    Table& out = tables_[id];
    switch (node.kind) {
      case NiceNode::kLeaf: {
        out.add(State().encode(0), Back{});
        break;
      }
      case NiceNode::kIntroduce: {
        const auto& child = tables_[node.child1];
        const int child_slots =
            static_cast<int>(nt_.nodes[node.child1].bag.size());
        const int iv = slot_of(node.bag, node.vertex);
        for (std::size_t i = 0; i < child.keys.size(); ++i) {
          State st = State::decode(child.keys[i], child_slots);
          State ns;
          ns.closed = st.closed;
          for (int s = 0; s < child_slots; ++s) {
            const int t = s < iv ? s : s + 1;
            ns.deg[t] = st.deg[s];
            if (st.partner[s] != kNoPartner) {
              const int p = st.partner[s];
              ns.partner[t] = static_cast<std::uint8_t>(p < iv ? p : p + 1);
            }
          }
          out.add(ns.encode(child_slots + 1),
                  Back{static_cast<std::int32_t>(i), -1, 0});
        }
        break;
      }
      case NiceNode::kForget: {
        const auto& child = tables_[node.child1];
        const auto& child_bag = nt_.nodes[node.child1].bag;
        const int child_slots = static_cast<int>(child_bag.size());
        const int iv = slot_of(child_bag, node.vertex);
        for (std::size_t i = 0; i < child.keys.size(); ++i) {
          State st = State::decode(child.keys[i], child_slots);
          if (st.deg[iv] != 2) continue;  // forgotten vertices are internal
          State ns;
          ns.closed = st.closed;
          for (int s = 0; s < child_slots; ++s) {
            if (s == iv) continue;
            const int t = s < iv ? s : s - 1;
            ns.deg[t] = st.deg[s];
            if (st.partner[s] != kNoPartner) {
              const int p = st.partner[s];
              ns.partner[t] = static_cast<std::uint8_t>(p < iv ? p : p - 1);
            }
          }
          out.add(ns.encode(child_slots - 1),
                  Back{static_cast<std::int32_t>(i), -1, 0});
        }
        break;
      }
      case NiceNode::kEdge: {
        const auto& child = tables_[node.child1];
        const int slots = static_cast<int>(node.bag.size());
        const int iu = slot_of(node.bag, node.eu);
        const int iv = slot_of(node.bag, node.ev);
        for (std::size_t i = 0; i < child.keys.size(); ++i) {
          if (tick(out.keys.size())) return;
          const auto back_idx = static_cast<std::int32_t>(i);
          out.add(child.keys[i], Back{back_idx, -1, 0});  // edge unused
          State st = State::decode(child.keys[i], slots);
          if (st.closed || st.deg[iu] == 2 || st.deg[iv] == 2) continue;
          State ns = st;
          if (st.deg[iu] == 0 && st.deg[iv] == 0) {
            ns.deg[iu] = ns.deg[iv] = 1;
            ns.partner[iu] = static_cast<std::uint8_t>(iv);
            ns.partner[iv] = static_cast<std::uint8_t>(iu);
          } else if (st.deg[iu] == 1 && st.deg[iv] == 0) {
            const std::uint8_t x = st.partner[iu];
            ns.deg[iu] = 2;
            ns.partner[iu] = kNoPartner;
            ns.deg[iv] = 1;
            ns.partner[iv] = x;
            ns.partner[x] = static_cast<std::uint8_t>(iv);
          } else if (st.deg[iu] == 0 && st.deg[iv] == 1) {
            const std::uint8_t x = st.partner[iv];
            ns.deg[iv] = 2;
            ns.partner[iv] = kNoPartner;
            ns.deg[iu] = 1;
            ns.partner[iu] = x;
            ns.partner[x] = static_cast<std::uint8_t>(iu);
          } else if (st.partner[iu] == iv) {
            // closing the cycle: nothing else may remain open
            bool others_open = false;
            for (int s = 0; s < slots; ++s)
              if (s != iu && s != iv && st.deg[s] == 1) others_open = true;
            if (others_open) continue;
            ns.deg[iu] = ns.deg[iv] = 2;
            ns.partner[iu] = ns.partner[iv] = kNoPartner;
            ns.closed = true;
          } else {
            const std::uint8_t x = st.partner[iu], y = st.partner[iv];
            ns.deg[iu] = ns.deg[iv] = 2;
            ns.partner[iu] = ns.partner[iv] = kNoPartner;
            ns.partner[x] = y;
            ns.partner[y] = x;
          }
          out.add(ns.encode(slots), Back{back_idx, -1, 1});
        }
        break;
      }
      case NiceNode::kJoin: {
        const auto& left = tables_[node.child1];
        const auto& right = tables_[node.child2];
        const int slots = static_cast<int>(node.bag.size());
        for (std::size_t i = 0; i < left.keys.size(); ++i) {
          const State s1 = State::decode(left.keys[i], slots);
          for (std::size_t j = 0; j < right.keys.size(); ++j) {
            if (tick(out.keys.size())) return;
            const State s2 = State::decode(right.keys[j], slots);
            State merged;
            if (!merge(s1, s2, slots, merged)) continue;
            out.add(merged.encode(slots),
                    Back{static_cast<std::int32_t>(i),
                         static_cast<std::int32_t>(j), 0});
          }
        }
        break;
      }
    }
    total_states_ += out.keys.size();
  }

  // Combines two path systems over the same bag. Degrees add; the two
  // matchings merge as alternating components. A single closed alternating
  // cycle is accepted as the Hamiltonian closure when nothing else stays
  // open; any other cycle is rejected.
  static bool merge(const State& s1, const State& s2, int slots, State& out) {
    if (s1.closed && s2.closed) return false;
    auto trivial = [slots](const State& s) {
      for (int i = 0; i < slots; ++i)
        if (s.deg[i] != 0) return false;
      return true;
    };
    if (s1.closed && !trivial(s2)) return false;
    if (s2.closed && !trivial(s1)) return false;

    out = State();
    out.closed = s1.closed || s2.closed;
    for (int s = 0; s < slots; ++s) {
      const int total = s1.deg[s] + s2.deg[s];
      if (total > 2) return false;
      out.deg[s] = static_cast<std::uint8_t>(total);
    }

    std::array<std::uint8_t, kMaxSlots> visited{};
    auto matched = [](const State& s, int slot) {
      return s.partner[slot] != kNoPartner;
    };

    // paths start at slots matched on exactly one side
    for (int s = 0; s < slots; ++s) {
      if (visited[s]) continue;
      const bool m1 = matched(s1, s), m2 = matched(s2, s);
      if (m1 == m2) continue;  // unmatched or interior
      int side = m1 ? 0 : 1;
      int cur = s;
      visited[s] = 1;
      for (;;) {
        const int nxt = side == 0 ? s1.partner[cur] : s2.partner[cur];
        visited[nxt] = 1;
        const bool cont = side == 0 ? matched(s2, nxt) : matched(s1, nxt);
        if (!cont) {
          out.partner[s] = static_cast<std::uint8_t>(nxt);
          out.partner[nxt] = static_cast<std::uint8_t>(s);
          break;
        }
        cur = nxt;
        side ^= 1;
      }
    }

    // anything still unvisited but matched lies on an alternating cycle
    int cycles = 0;
    for (int s = 0; s < slots; ++s) {
      if (visited[s] || !matched(s1, s)) continue;
      ++cycles;
      int cur = s, side = 0;
      do {
        visited[cur] = 1;
        cur = side == 0 ? s1.partner[cur] : s2.partner[cur];
        side ^= 1;
      } while (cur != s || side != 0);
    }
    if (cycles > 0) {
      if (cycles > 1 || s1.closed || s2.closed) return false;
      // the closure must be the only component
      for (int s = 0; s < slots; ++s)
        if (out.partner[s] != kNoPartner) return false;
      out.closed = true;
    }
    return true;
  }

  CycleCandidate reconstruct(int root, std::int32_t state_idx) {
    std::vector<std::pair<int, int>> used;
    std::vector<std::pair<int, std::int32_t>> stack{{root, state_idx}};
    while (!stack.empty()) {
      const auto [id, idx] = stack.back();
      stack.pop_back();
      const auto& node = nt_.nodes[id];
      const Back& b = tables_[id].back[idx];
      switch (node.kind) {
        case NiceNode::kLeaf:
          break;
        case NiceNode::kIntroduce:
        case NiceNode::kForget:
          stack.emplace_back(node.child1, b.c1);
          break;
        case NiceNode::kEdge:
          if (b.action == 1) used.emplace_back(node.eu, node.ev);
          stack.emplace_back(node.child1, b.c1);
          break;
        case NiceNode::kJoin:
          stack.emplace_back(node.child1, b.c1);
          stack.emplace_back(node.child2, b.c2);
          break;
      }
    }

    const int n = g_.vertex_count();
    std::vector<std::array<int, 2>> link(n, {-1, -1});
    for (const auto& [u, v] : used) {
      auto attach = [&](int a, int b2) {
        if (link[a][0] == -1)
          link[a][0] = b2;
        else if (link[a][1] == -1)
          link[a][1] = b2;
        else
          throw std::logic_error("dp reconstruction: vertex degree > 2");
      };
      attach(u, v);
      attach(v, u);
    }
    CycleCandidate cycle;
    cycle.order.reserve(n);
    int prev = -1, cur = 0;
    for (int i = 0; i < n; ++i) {
      cycle.order.push_back(cur);
      const int nxt = link[cur][0] == prev ? link[cur][1] : link[cur][0];
      if (nxt == -1) throw std::logic_error("dp reconstruction: broken cycle");
      prev = cur;
      cur = nxt;
    }
    if (cur != 0) throw std::logic_error("dp reconstruction: not a cycle");
    return cycle;
  }

  const Graph& g_;
  const NiceTree& nt_;
  std::chrono::steady_clock::time_point deadline_;
  std::size_t state_cap_;
  std::size_t total_states_ = 0;
  std::size_t ticks_ = 0;
  bool aborted_ = false;
  std::vector<Table> tables_;
};

}  // namespace

DpResult dp_hamiltonian(const Graph& g, const TreeDecomposition& td,
                        std::chrono::milliseconds deadline,
                        std::size_t state_cap) {
  const int n = g.vertex_count();
  if (n < 3) return {DpResult::Status::no_cycle, {}};
  if (td.width + 1 > kMaxSlots)
    throw std::invalid_argument("dp_hamiltonian: width exceeds slot encoding");
  const NiceTree nt = detail::build_nice_tree(td, g);
  DpRunner runner(g, nt, std::chrono::steady_clock::now() + deadline,
                  state_cap);
  DpResult result = runner.run();
  if (result.status == DpResult::Status::found)
    if (!verify_hc(g, result.cycle))
      throw std::logic_error("dp_hamiltonian produced an invalid cycle");
  return result;
}

}  // namespace hcma
