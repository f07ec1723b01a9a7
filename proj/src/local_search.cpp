#include "hcma/local_search.hpp"

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

namespace hcma {

namespace {

// One RAI attempt around critical city i; applies the first improving
// exchange found and clears don't-look bits on the six touched cities.
bool rai_try_city(Tour& t, const DistanceMatrix& m, const NeighborLists& nl,
                  int i) {
  const int a = t.next(i);
  for (int j : nl.lists[i]) {
    if (j == i || j == a) continue;  // edge (i,j) already in the tour
    const int b = t.prev(j);
    const TourCost delta1 =
        TourCost(m.at(i, a)) + m.at(b, j) - m.at(i, j);
    // Tour edges from (j, next(j)) up to (prev(i), i). Edges beyond that
    // lie inside the relocated segment and would split the tour.
    for (int mm = j; mm != i; mm = t.next(mm)) {
      const int nn = t.next(mm);
      const TourCost delta2 =
          TourCost(m.at(mm, a)) + m.at(b, nn) - m.at(mm, nn);
      if (delta2 < delta1) {
        t.apply_segment_move(t.rank_of(a), t.rank_of(b), t.rank_of(mm),
                             false, delta2 - delta1, m);
        for (int c : {i, j, a, b, mm, nn}) t.set_dont_look(c, false);
        return true;
      }
    }
  }
  return false;
}

}  // namespace

void rai_improve(Tour& t, const DistanceMatrix& m, const NeighborLists& nl,
                 Rng& rng, bool use_dlb) {
  const int n = t.size();
  if (!use_dlb) t.clear_all_dont_look();
  const int start = rng.index(n);
  bool moved = true;
  while (moved) {
    moved = false;
    for (int s = 0; s < n; ++s) {
      const int city = start + s < n ? start + s : start + s - n;
      if (t.dont_look(city)) continue;
      if (rai_try_city(t, m, nl, city))
        moved = true;
      else
        t.set_dont_look(city, true);
    }
  }
}

namespace {

class LkEngine {
 public:
  LkEngine(Tour& t, const DistanceMatrix& m, const NeighborLists& nl,
           std::int64_t budget)
      : t_(t), m_(m), nl_(nl), budget_(budget), awake_(t.size(), 1) {}

  void run() {
    const int n = t_.size();
    bool progress = true;
    while (progress && budget_ > 0) {
      progress = false;
      for (int v = 0; v < n && budget_ > 0; ++v) {
        if (!awake_[v]) continue;
        if (improve_city(v)) {
          --budget_;
          progress = true;
        } else {
          awake_[v] = 0;
        }
      }
    }
  }

 private:
  std::int32_t d(int a, int b) const { return m_.at(a, b); }
  void wake(int c) { awake_[c] = 1; }

  bool improve_city(int v) {
    return try_two_opt(v) || try_or_opt(v) || try_three_opt(v);
  }

  bool try_two_opt(int t1) {
    for (int dir = 0; dir < 2; ++dir) {
      const int t2 = dir == 0 ? t_.next(t1) : t_.prev(t1);
      const std::int32_t d12 = d(t1, t2);
      for (int t3 : nl_.lists[t1]) {
        if (t3 == t1 || t3 == t2) continue;
        const std::int32_t d13 = d(t1, t3);
        if (d13 >= d12) break;  // lists sorted by distance
        const int t4 = dir == 0 ? t_.next(t3) : t_.prev(t3);
        if (t4 == t1) continue;
        const TourCost delta = TourCost(d13) + d(t2, t4) - d12 - d(t3, t4);
        if (delta < 0) {
          if (dir == 0)
            t_.apply_reverse(t_.rank_of(t2), t_.rank_of(t3), delta, m_);
          else
            t_.apply_reverse(t_.rank_of(t1), t_.rank_of(t4), delta, m_);
          wake(t1);
          wake(t2);
          wake(t3);
          wake(t4);
          return true;
        }
      }
    }
    return false;
  }

  bool try_or_opt(int v) {
    const int n = t_.size();
    const int p = t_.prev(v);
    std::array<int, 3> seg{v, -1, -1};
    int w = v;
    for (int len = 1; len <= 3; ++len) {
      if (n < len + 3) break;
      if (len > 1) {
        w = t_.next(w);
        if (w == p) break;
        seg[len - 1] = w;
      }
      const int s = t_.next(w);
      if (s == p) break;
      const TourCost removed_base =
          TourCost(d(p, v)) + d(w, s) - d(p, s);
      auto in_seg = [&seg](int c) {
        return c == seg[0] || c == seg[1] || c == seg[2];
      };
      // Try the gaps on both sides of each candidate: after c (edge
      // (c, next(c))) and before c (edge (prev(c), c)).
      auto try_target = [&](int left, int right) {
        if (left == p) return false;  // identity position
        const std::int32_t gap = d(left, right);
        const TourCost delta_f =
            TourCost(d(left, v)) + d(w, right) - gap - removed_base;
        const TourCost delta_r =
            TourCost(d(left, w)) + d(v, right) - gap - removed_base;
        const bool rev = delta_r < delta_f;
        const TourCost delta = rev ? delta_r : delta_f;
        if (delta >= 0) return false;
        t_.apply_segment_move(t_.rank_of(v), t_.rank_of(w),
                              t_.rank_of(left), rev, delta, m_);
        wake(p);
        wake(s);
        wake(left);
        wake(right);
        for (int i = 0; i < len; ++i) wake(seg[i]);
        return true;
      };
      for (int pass = 0; pass < 2; ++pass) {
        if (pass == 1 && w == v) break;  // same candidate list twice
        for (int c : nl_.lists[pass == 0 ? v : w]) {
          if (c == p || in_seg(c)) continue;
          const int nc = t_.next(c);
          if (try_target(c, nc)) return true;
          const int pc = t_.prev(c);
          if (pc != p && !in_seg(pc) && try_target(pc, c)) return true;
        }
      }
    }
    return false;
  }

  bool try_three_opt(int t1) {
    if (t_.size() < 5) return false;
    // mirror flips the traversal direction so moves anchored on the
    // predecessor side are reachable too
    for (const bool mirror : {false, true}) {
      const int t2 = mirror ? t_.prev(t1) : t_.next(t1);
      const std::int32_t d12 = d(t1, t2);
      for (int t3 : nl_.lists[t2]) {
        if (t3 == t1 || t3 == t2) continue;
        const std::int32_t g1 = d12 - d(t2, t3);
        if (g1 <= 0) break;
        for (int t4dir = 0; t4dir < 2; ++t4dir) {
          const int t4 = (t4dir == 0) != mirror ? t_.next(t3) : t_.prev(t3);
          if (t4 == t1 || t4 == t2) continue;
          const std::int32_t g2base = g1 + d(t3, t4);
          for (int t5 : nl_.lists[t4]) {
            if (t5 == t1 || t5 == t2 || t5 == t3 || t5 == t4) continue;
            const std::int32_t g2 = g2base - d(t4, t5);
            if (g2 <= 0) break;
            for (int t6dir = 0; t6dir < 2; ++t6dir) {
              const int t6 =
                  (t6dir == 0) != mirror ? t_.next(t5) : t_.prev(t5);
              if (t6 == t1 || t6 == t4) continue;
              const TourCost gain = TourCost(g2) + d(t5, t6) - d(t6, t1);
              if (gain <= 0) continue;
              if (apply_three_opt(mirror, t1, t2, t3, t4, t4dir, t5, t6,
                                  t6dir, -gain)) {
                wake(t1);
                wake(t2);
                wake(t3);
                wake(t4);
                wake(t5);
                wake(t6);
                return true;
              }
            }
          }
        }
      }
    }
    return false;
  }

  // Removed edges sit at cut boundaries 0|1, p|p+1, q|q+1 in positions
  // relative to t1 along the (possibly mirrored) traversal; segments
  // S1 = [1..p], S2 = [p+1..q]. The added edge set picks one of the five
  // reconnections that keep a single tour; if none matches, the candidate
  // move would split the tour and is skipped.
  bool apply_three_opt(bool mirror, int t1, int t2, int t3, int t4,
                       int t4dir, int t5, int t6, int t6dir, TourCost delta) {
    const int n = t_.size();
    const int r1 = t_.rank_of(t1);
    auto relpos = [&](int city) {
      const int p = mirror ? r1 - t_.rank_of(city) : t_.rank_of(city) - r1;
      return p < 0 ? p + n : p;
    };
    const int cut2 = t4dir == 0 ? relpos(t3) : relpos(t4);
    const int cut3 = t6dir == 0 ? relpos(t5) : relpos(t6);
    if (cut2 == 0 || cut3 == 0 || cut2 == cut3) return false;
    const int p = std::min(cut2, cut3);
    const int q = std::max(cut2, cut3);

    auto city_at = [&](int rel) {
      const int r = mirror ? r1 - rel : r1 + rel;
      return t_.at_rank(((r % n) + n) % n);
    };
    const int A = t1, B = city_at(1);
    const int C = city_at(p), D = city_at(p + 1);
    const int E = city_at(q), F = city_at((q + 1) % n);

    auto canon = [](int a, int b) {
      return a < b ? std::pair<int, int>(a, b) : std::pair<int, int>(b, a);
    };
    std::array<std::pair<int, int>, 3> added = {canon(t2, t3), canon(t4, t5),
                                                canon(t6, t1)};
    std::sort(added.begin(), added.end());
    auto matches = [&](std::pair<int, int> e1, std::pair<int, int> e2,
                       std::pair<int, int> e3) {
      std::array<std::pair<int, int>, 3> probe = {e1, e2, e3};
      std::sort(probe.begin(), probe.end());
      return probe == added;
    };

    enum class Rec { s1r_s2r, s2_s1, s2_s1r, s2r_s1, s2r_s1r, none };
    Rec rec = Rec::none;
    if (matches(canon(A, C), canon(B, E), canon(D, F)))
      rec = Rec::s1r_s2r;
    else if (matches(canon(A, D), canon(E, B), canon(C, F)))
      rec = Rec::s2_s1;
    else if (matches(canon(A, D), canon(E, C), canon(B, F)))
      rec = Rec::s2_s1r;
    else if (matches(canon(A, E), canon(D, B), canon(C, F)))
      rec = Rec::s2r_s1;
    else if (matches(canon(A, E), canon(D, C), canon(B, F)))
      rec = Rec::s2r_s1r;
    if (rec == Rec::none) return false;

    std::vector<int> s1(p), s2(q - p);
    for (int i = 0; i < p; ++i) s1[i] = city_at(1 + i);
    for (int i = 0; i < q - p; ++i) s2[i] = city_at(p + 1 + i);
    std::vector<int> block;
    block.reserve(q);
    auto append = [&block](const std::vector<int>& seg, bool reversed) {
      if (reversed)
        block.insert(block.end(), seg.rbegin(), seg.rend());
      else
        block.insert(block.end(), seg.begin(), seg.end());
    };
    switch (rec) {
      case Rec::s1r_s2r:
        append(s1, true);
        append(s2, true);
        break;
      case Rec::s2_s1:
        append(s2, false);
        append(s1, false);
        break;
      case Rec::s2_s1r:
        append(s2, false);
        append(s1, true);
        break;
      case Rec::s2r_s1:
        append(s2, true);
        append(s1, false);
        break;
      case Rec::s2r_s1r:
        append(s2, true);
        append(s1, true);
        break;
      case Rec::none:
        return false;
    }
    if (mirror) {
      // Virtual positions 1..q run backward through the array; write the
      // block reversed starting at actual rank r1 - q.
      std::reverse(block.begin(), block.end());
      t_.apply_block_rewrite(((r1 - q) % n + n) % n, block, delta, m_);
    } else {
      t_.apply_block_rewrite((r1 + 1) % n, block, delta, m_);
    }
    return true;
  }

  Tour& t_;
  const DistanceMatrix& m_;
  const NeighborLists& nl_;
  std::int64_t budget_;
  std::vector<std::uint8_t> awake_;
};

}  // namespace

void lk_improve(Tour& t, const DistanceMatrix& m, const NeighborLists& nl,
                std::int64_t move_budget) {
  if (move_budget <= 0) move_budget = 50LL * t.size();
  LkEngine(t, m, nl, move_budget).run();
}

void local_search(Tour& t, const DistanceMatrix& m, const NeighborLists& nl,
                  Rng& rng, const LocalSearchOptions& opt) {
  rai_improve(t, m, nl, rng, opt.use_dlb);
  lk_improve(t, m, nl, opt.lk_move_budget);
}

void double_bridge_kick(Tour& t, const DistanceMatrix& m, Rng& rng) {
  const int n = t.size();
  if (n < 8) return;
  // three distinct interior cuts a < b < c
  int a = 1 + rng.index(n - 3);
  int b = 1 + rng.index(n - 3);
  int c = 1 + rng.index(n - 3);
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  b += 1;
  c += 2;  // enforce strict ordering a < b < c <= n-1
  const int ca = t.at_rank(a - 1), cb = t.at_rank(a);
  const int cc = t.at_rank(b - 1), cd = t.at_rank(b);
  const int ce = t.at_rank(c - 1), cf = t.at_rank(c % n);
  const TourCost delta = TourCost(m.at(ca, cd)) + m.at(ce, cb) +
                         m.at(cc, cf) - m.at(ca, cb) - m.at(cc, cd) -
                         m.at(ce, cf);
  std::vector<int> block;
  block.reserve(c - a);
  for (int r = b; r < c; ++r) block.push_back(t.at_rank(r));
  for (int r = a; r < b; ++r) block.push_back(t.at_rank(r));
  t.apply_block_rewrite(a, block, delta, m);
  for (int city : {ca, cb, cc, cd, ce, cf}) t.set_dont_look(city, false);
}

}  // namespace hcma
