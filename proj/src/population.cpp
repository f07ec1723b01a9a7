#include "hcma/population.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace hcma {

int Population::best_pocket_index() const {
  int best = 0;
  for (int i = 1; i < kAgents; ++i)
    if (agents[i].pocket.cost() < agents[best].pocket.cost()) best = i;
  return best;
}

TourCost Population::best_pocket_cost() const {
  return agents[best_pocket_index()].pocket.cost();
}

bool Population::all_pockets_equal_cost() const {
  for (int i = 1; i < kAgents; ++i)
    if (agents[i].pocket.cost() != agents[0].pocket.cost()) return false;
  return true;
}

void Population::refresh_costs(const DistanceMatrix& m) {
  for (auto& a : agents) {
    a.pocket.refresh_cost(m);
    a.current.refresh_cost(m);
  }
}

void Population::clear_all_dont_look() {
  for (auto& a : agents) {
    a.pocket.clear_all_dont_look();
    a.current.clear_all_dont_look();
  }
}

Population initialize_pop(const DistanceMatrix& m, const NeighborLists& nl,
                          Rng& rng, const LocalSearchOptions& opt) {
  Population p;
  p.agents.reserve(Population::kAgents);
  for (int i = 0; i < Population::kAgents; ++i) {
    Rng pocket_rng = rng.split(2 * i);
    Rng current_rng = rng.split(2 * i + 1);
    Tour pocket = nearest_neighbor_tour(m, pocket_rng);
    local_search(pocket, m, nl, pocket_rng, opt);
    Tour current = nearest_neighbor_tour(m, current_rng);
    local_search(current, m, nl, current_rng, opt);
    p.agents.push_back(Agent{std::move(pocket), std::move(current)});
  }
  structure_pop(p);
  return p;
}

void structure_pop(Population& p) {
  for (auto& a : p.agents)
    if (a.current.cost() < a.pocket.cost()) std::swap(a.pocket, a.current);
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (int i = Population::kAgents - 1; i >= 1; --i) {
      const int parent = Population::parent_of(i);
      if (p.agents[i].pocket.cost() < p.agents[parent].pocket.cost()) {
        std::swap(p.agents[i].pocket, p.agents[parent].pocket);
        swapped = true;
      }
    }
  }
}

SubtourCover sax_crossover(const Tour& t1, const Tour& t2, Rng& rng) {
  const int n = t1.size();
  if (t2.size() != n)
    throw std::invalid_argument("sax_crossover: tours over different city sets");
  SubtourCover cover;
  std::vector<char> visited(n, 0);
  // pool of unvisited cities with O(1) random removal
  std::vector<int> pool(n), where(n);
  for (int i = 0; i < n; ++i) pool[i] = where[i] = i;
  auto remove_city = [&](int c) {
    const int idx = where[c];
    const int last = pool.back();
    pool[idx] = last;
    where[last] = idx;
    pool.pop_back();
    visited[c] = 1;
  };

  auto pick_unvisited = [&](int x, int y, Rng& r) -> int {
    // x, y: the two candidate neighbors from the parent tours (may agree)
    const bool ax = !visited[x];
    const bool ay = y != x && !visited[y];
    if (ax && ay) return r.below(2) == 0 ? x : y;
    if (ax) return x;
    if (ay) return y;
    return -1;
  };

  while (!pool.empty()) {
    const int start = pool[rng.below(pool.size())];
    remove_city(start);
    std::vector<int> path{start};
    // grow forward from the head through unvisited out-neighbors
    for (int head = start;;) {
      const int pick = pick_unvisited(t1.next(head), t2.next(head), rng);
      if (pick == -1) break;
      remove_city(pick);
      path.push_back(pick);
      head = pick;
    }
    // grow backward from the tail through unvisited in-neighbors
    std::vector<int> front;
    for (int tail = start;;) {
      const int pick = pick_unvisited(t1.prev(tail), t2.prev(tail), rng);
      if (pick == -1) break;
      remove_city(pick);
      front.push_back(pick);
      tail = pick;
    }
    if (!front.empty()) {
      std::reverse(front.begin(), front.end());
      front.insert(front.end(), path.begin(), path.end());
      path = std::move(front);
    }
    cover.paths.push_back(std::move(path));
  }
  return cover;
}

Tour stitch_cover(const SubtourCover& cover, const DistanceMatrix& m) {
  if (cover.paths.empty())
    throw std::invalid_argument("stitch_cover: empty cover");
  std::vector<int> order = cover.paths[0];
  std::vector<char> used(cover.paths.size(), 0);
  used[0] = 1;
  for (std::size_t joined = 1; joined < cover.paths.size(); ++joined) {
    const int tail = order.back();
    int best = -1;
    std::int32_t best_d = 0;
    for (std::size_t i = 0; i < cover.paths.size(); ++i) {
      if (used[i]) continue;
      const std::int32_t dist = m.at(tail, cover.paths[i].front());
      if (best == -1 || dist < best_d) {
        best = static_cast<int>(i);
        best_d = dist;
      }
    }
    used[best] = 1;
    order.insert(order.end(), cover.paths[best].begin(),
                 cover.paths[best].end());
  }
  return Tour(std::move(order), m);
}

namespace {

Tour recombine(const Tour& t1, const Tour& t2, const DistanceMatrix& m,
               const NeighborLists& nl, Rng& rng,
               const LocalSearchOptions& opt) {
  const SubtourCover cover = sax_crossover(t1, t2, rng);
  Tour offspring = stitch_cover(cover, m);
  local_search(offspring, m, nl, rng, opt);
  return offspring;
}

}  // namespace

void recombine_pop(Population& p, const DistanceMatrix& m,
                   const NeighborLists& nl, Rng& rng,
                   const RecombineOptions& opt) {
  const Population* source = &p;
  Population snapshot;
  if (opt.rhs_from_snapshot) {
    snapshot.agents = p.agents;
    source = &snapshot;
  }
  auto assign = [&](int target, const Tour& a, const Tour& b) {
    Rng sub = rng.split(100 + target);
    p.agents[target].current = recombine(a, b, m, nl, sub, opt.search);
  };

  const auto& ag = source->agents;
  assign(0, ag[1].pocket, ag[2].current);
  for (int leader = 1; leader <= 3; ++leader) {
    std::array<int, 3> kids = Population::children_of(leader);
    Rng perm_rng = rng.split(200 + leader);
    perm_rng.shuffle(kids.begin(), kids.end());
    const int off1 = kids[0], off2 = kids[1], off3 = kids[2];
    assign(leader, ag[off2].pocket, ag[off3].pocket);
    assign(off1, ag[leader].pocket, ag[off2].current);
    assign(off2, ag[off1].pocket, ag[off3].current);
    assign(off3, ag[off2].pocket, ag[off1].current);
  }
}

void mutate_insertion(Tour& t, const DistanceMatrix& m, Rng& rng) {
  const int n = t.size();
  if (n < 4) return;  // every relocation is the identity below 4 cities
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int ci = rng.index(n);
    const int cj = rng.index(n);
    if (cj == ci || cj == t.next(ci) || ci == t.prev(cj)) continue;
    const int old_prev = t.prev(cj);
    const int old_next = t.next(cj);
    const int after_next = t.next(ci);
    const bool ok = apply_insertion(t, m, cj, ci);
    assert(ok);
    (void)ok;
    for (int c : {cj, old_prev, old_next, ci, after_next})
      t.set_dont_look(c, false);
    return;
  }
}

void mutate_pop(Population& p, const DistanceMatrix& m,
                const NeighborLists& nl, Rng& rng, double mutation_rate,
                const LocalSearchOptions& opt) {
  for (int i = 0; i < Population::kAgents; ++i) {
    Rng agent_rng = rng.split(300 + i);
    if (!agent_rng.bernoulli(mutation_rate)) continue;
    Tour aux = p.agents[i].current;
    mutate_insertion(aux, m, agent_rng);
    local_search(aux, m, nl, agent_rng, opt);
    if (aux.cost() < p.agents[i].current.cost())
      p.agents[i].current = std::move(aux);
  }
}

void restart_pop(Population& p, const DistanceMatrix& m,
                 const NeighborLists& nl, Rng& rng) {
  const int keep = p.best_pocket_index();
  auto rebuild = [&](Rng sub) {
    Tour t = nearest_neighbor_tour(m, sub);
    mutate_insertion(t, m, sub);
    rai_improve(t, m, nl, sub);
    return t;
  };
  for (int i = 0; i < Population::kAgents; ++i) {
    if (i != keep) p.agents[i].pocket = rebuild(rng.split(400 + 2 * i));
    p.agents[i].current = rebuild(rng.split(400 + 2 * i + 1));
  }
}

}  // namespace hcma
