#include "hcma/tour.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hcma {

Tour::Tour(std::vector<int> order, const DistanceMatrix& m)
    : n_(static_cast<int>(order.size())), position_(std::move(order)) {
  rank_.assign(n_, -1);
  for (int r = 0; r < n_; ++r) {
    const int city = position_[r];
    if (city < 0 || city >= n_ || rank_[city] != -1)
      throw std::invalid_argument("tour order is not a permutation");
    rank_[city] = r;
  }
  dlb_.assign(n_, 0);  // fresh tour: every city is critical
  cost_ = tour_cost(m, std::span<const int>(position_));
}

void Tour::clear_all_dont_look() { std::fill(dlb_.begin(), dlb_.end(), 0); }
void Tour::raise_all_dont_look() { std::fill(dlb_.begin(), dlb_.end(), 1); }

void Tour::refresh_cost(const DistanceMatrix& m) {
  cost_ = tour_cost(m, std::span<const int>(position_));
}

void Tour::apply_reverse(int rank_from, int rank_to, TourCost delta,
                         const DistanceMatrix& m) {
  const int len = (rank_to - rank_from + n_) % n_ + 1;
  if (len > n_ - len) {
    // Reversing the complement yields the same undirected tour.
    rank_from = (rank_to + 1) % n_;
    rank_to = (rank_from + (n_ - len) - 1 + n_) % n_;
  }
  int i = rank_from, j = rank_to;
  int steps = ((j - i + n_) % n_ + 1) / 2;
  while (steps-- > 0) {
    std::swap(position_[i], position_[j]);
    rank_[position_[i]] = i;
    rank_[position_[j]] = j;
    i = i + 1 == n_ ? 0 : i + 1;
    j = j == 0 ? n_ - 1 : j - 1;
  }
  cost_ += delta;
  maybe_validate(m);
}

void Tour::apply_segment_move(int seg_from, int seg_to, int dest_rank,
                              bool reversed, TourCost delta,
                              const DistanceMatrix& m) {
  auto step = [this](int r) { return r + 1 == n_ ? 0 : r + 1; };
  std::vector<int> seg;
  for (int r = seg_from;; r = step(r)) {
    seg.push_back(position_[r]);
    if (r == seg_to) break;
  }
  int write = seg_from;
  for (int r = step(seg_to);; r = step(r)) {
    position_[write] = position_[r];
    rank_[position_[write]] = write;
    const bool done = (r == dest_rank);
    write = step(write);
    if (done) break;
  }
  const int len = static_cast<int>(seg.size());
  for (int idx = 0; idx < len; ++idx) {
    const int city = reversed ? seg[len - 1 - idx] : seg[idx];
    position_[write] = city;
    rank_[city] = write;
    write = step(write);
  }
  cost_ += delta;
  maybe_validate(m);
}

void Tour::apply_block_rewrite(int start_rank, const std::vector<int>& cities,
                               TourCost delta, const DistanceMatrix& m) {
  int r = start_rank;
  for (int city : cities) {
    position_[r] = city;
    rank_[city] = r;
    r = r + 1 == n_ ? 0 : r + 1;
  }
  cost_ += delta;
  maybe_validate(m);
}

void Tour::validate(const DistanceMatrix& m) const {
  std::vector<char> seen(n_, 0);
  for (int r = 0; r < n_; ++r) {
    const int city = position_[r];
    if (city < 0 || city >= n_ || seen[city])
      throw std::logic_error("tour is not a permutation");
    seen[city] = 1;
    if (rank_[city] != r) throw std::logic_error("rank/position mismatch");
  }
  const TourCost actual = tour_cost(m, std::span<const int>(position_));
  if (actual != cost_)
    throw std::logic_error("cached tour cost " + std::to_string(cost_) +
                           " != recomputed " + std::to_string(actual));
}

NeighborLists build_neighbor_lists(const DistanceMatrix& m, int k) {
  if (k < 1) throw std::invalid_argument("neighbor list size must be >= 1");
  const int n = m.size();
  NeighborLists nl;
  nl.k = k;
  nl.lists.resize(n);
  const int take = std::min(k, n - 1);
  std::vector<std::pair<std::int32_t, int>> cand(n - 1);
  for (int v = 0; v < n; ++v) {
    int idx = 0;
    for (int u = 0; u < n; ++u)
      if (u != v) cand[idx++] = {m.at(v, u), u};
    std::partial_sort(cand.begin(), cand.begin() + take, cand.end());
    auto& list = nl.lists[v];
    list.resize(take);
    for (int i = 0; i < take; ++i) list[i] = cand[i].second;
  }
  return nl;
}

Tour nearest_neighbor_tour(const DistanceMatrix& m, Rng& rng) {
  const int n = m.size();
  if (n < 3) throw std::invalid_argument("nearest_neighbor_tour requires n >= 3");
  std::vector<int> order;
  order.reserve(n);
  std::vector<char> visited(n, 0);
  int current = rng.index(n);
  order.push_back(current);
  visited[current] = 1;
  for (int step = 1; step < n; ++step) {
    int best = -1;
    std::int32_t best_d = 0;
    std::uint64_t ties = 0;
    for (int c = 0; c < n; ++c) {
      if (visited[c]) continue;
      const std::int32_t d = m.at(current, c);
      if (best == -1 || d < best_d) {
        best = c;
        best_d = d;
        ties = 1;
      } else if (d == best_d) {
        // reservoir draw keeps the choice uniform among ties
        ++ties;
        if (rng.below(ties) == 0) best = c;
      }
    }
    visited[best] = 1;
    order.push_back(best);
    current = best;
  }
  return Tour(std::move(order), m);
}

bool apply_insertion(Tour& t, const DistanceMatrix& m, int city, int after) {
  // city == next(after) covers "insert after own predecessor": a no-op.
  if (city == after || city == t.next(after)) return false;
  const int p = t.prev(city), s = t.next(city), na = t.next(after);
  const TourCost delta =
      TourCost(m.at(p, s)) + m.at(after, city) + m.at(city, na) -
      m.at(p, city) - m.at(city, s) - m.at(after, na);
  t.apply_segment_move(t.rank_of(city), t.rank_of(city), t.rank_of(after),
                       false, delta, m);
  return true;
}

void write_tour(std::ostream& out, const std::vector<int>& order,
                const std::string& name) {
  out << "NAME : " << name << "\n";
  out << "TYPE : TOUR\n";
  out << "DIMENSION : " << order.size() << "\n";
  out << "TOUR_SECTION\n";
  for (int v : order) out << v + 1 << "\n";
  out << "-1\n";
  out << "EOF\n";
}

std::vector<int> parse_tour(std::istream& in) {
  std::vector<int> order;
  std::string line;
  bool in_section = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    if (!in_section) {
      std::string head;
      ls >> head;
      std::transform(head.begin(), head.end(), head.begin(), ::toupper);
      if (head == "TOUR_SECTION") in_section = true;
      continue;
    }
    int v;
    while (ls >> v) {
      if (v == -1) return order;
      if (v < 1) throw ParseError("tour ids must be positive", lineno);
      order.push_back(v - 1);
    }
  }
  throw ParseError("TOUR_SECTION missing or unterminated", lineno);
}

}  // namespace hcma
