#pragma once

// Exact intersection of permutation groups.
//
// Primary route: backtrack over the stabilizer chain of the smaller group,
// building the intersection's strong generators level by level from the
// bottom. The base is chosen greedily so that each next point has the
// smallest orbit under the other group's current stabilizer. A partial assignment of base images is pruned as soon as no
// element of the other group (chain rebuilt on the same base prefix) has
// those base images. Fallback: enumerate the smaller group and filter.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "group.hpp"

namespace mindim {

struct IntersectOptions {
  /// Maximum backtrack nodes before giving up on the primary route.
  std::uint64_t node_budget = 200'000'000;
  /// Cap for the enumeration fallback.
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
};

/// Counters from one backtrack run.
struct IntersectStats {
  std::uint64_t nodes = 0;
  std::uint64_t searches = 0;
};

namespace detail {

inline std::vector<std::size_t> orbit_sizes(std::size_t n,
                                            const std::vector<Permutation> &gens) {
  std::vector<std::size_t> size(n, 1);
  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Point> q{static_cast<Point>(s)};
    seen[s] = 1;
    for (std::size_t k = 0; k < q.size(); ++k)
      for (const auto &g : gens)
        if (!seen[g[q[k]]]) {
          seen[g[q[k]]] = 1;
          q.push_back(g[q[k]]);
        }
    for (Point x : q) size[x] = q.size();
  }
  return size;
}

/// Points fixed by the group generated by `gens`.
inline std::vector<char> fixed_mask(std::size_t n, const std::vector<Permutation> &gens) {
  std::vector<char> f(n, 1);
  for (const auto &g : gens)
    for (std::size_t x = 0; x < n; ++x)
      if (g[x] != x) f[x] = 0;
  return f;
}

/// H's base: G's base with, after each b_j, the further points fixed by
/// G_(b_0..b_j). An element of G is determined on all of them once its base
/// images are, so H can be checked on each. start[j] is the position of b_j.
struct ExtendedBase {
  std::vector<Point> points;
  std::vector<std::size_t> start;
};

inline ExtendedBase extended_base(const StabilizerChain &gc, std::size_t n) {
  ExtendedBase eb;
  std::vector<char> in(n, 0);
  std::size_t m = gc.levels.size();
  for (std::size_t j = 0; j < m; ++j) {
    eb.start.push_back(eb.points.size());
    auto add = [&](std::size_t x) {
      if (!in[x]) {
        in[x] = 1;
        eb.points.push_back(static_cast<Point>(x));
      }
    };
    add(gc.levels[j].base);
    auto fix = fixed_mask(n, j + 1 < m ? gc.levels[j + 1].gens : std::vector<Permutation>{});
    for (std::size_t x = 0; x < n; ++x)
      if (fix[x]) add(x);
  }
  eb.start.push_back(eb.points.size());
  return eb;
}

/// Base for G: among points moved by G's current stabilizer, take the one
/// with the smallest orbit under the stabilizer in H of every point G's
/// stabilizer fixes (ties: larger G-orbit, then lowest point).
inline std::vector<Point> greedy_base(const PermGroup &G, const PermGroup &H) {
  std::size_t n = G.degree();
  std::vector<Point> prefix;
  PermGroup Gp = G;
  for (;;) {
    std::size_t d = prefix.size();
    const auto &gl = Gp.chain().levels;
    if (d >= gl.size() || gl[d].gens.empty()) break;
    auto fix = fixed_mask(n, gl[d].gens);
    std::vector<Point> fixed = prefix;
    for (std::size_t x = 0; x < n; ++x)
      if (fix[x] && std::find(prefix.begin(), prefix.end(), x) == prefix.end())
        fixed.push_back(static_cast<Point>(x));
    PermGroup Hp = H.with_base_prefix(fixed);
    const auto &hl = Hp.chain().levels;
    auto gs = orbit_sizes(n, gl[d].gens);
    auto hs = orbit_sizes(n, fixed.size() < hl.size() ? hl[fixed.size()].gens
                                                      : std::vector<Permutation>{});
    std::size_t best = n;
    for (std::size_t x = 0; x < n; ++x) {
      if (gs[x] == 1) continue;
      if (best == n || hs[x] < hs[best] || (hs[x] == hs[best] && gs[x] > gs[best]))
        best = x;
    }
    if (best == n) break;
    prefix.push_back(static_cast<Point>(best));
    Gp = G.with_base_prefix(prefix);
  }
  return prefix;
}

class IntersectionSearch {
public:
  IntersectionSearch(const PermGroup &G, const PermGroup &H,
                     std::uint64_t budget)
      : G_(G.with_base_prefix(greedy_base(G, H))),
        eb_(extended_base(G_.chain(), G.degree())),
        Hc_(H.with_base_prefix(eb_.points)), n_(G.degree()), budget_(budget) {}

  PermGroup run() {
    const auto &gl = G_.chain().levels;
    std::size_t m = gl.size();
    std::vector<Permutation> kgens;
    for (std::size_t i = m; i-- > 0;) {
      const ChainLevel &lv = gl[i];
      if (lv.orbit.size() == 1) continue;
      std::vector<char> reached, failed(n_, 0);
      recompute_orbit(kgens, lv.base, reached);
      std::vector<Point> pts = lv.orbit;
      std::sort(pts.begin(), pts.end());
      for (Point gamma : pts) {
        if (reached[gamma] || failed[gamma]) continue;
        ++stats.searches;
        auto found = search_level(i, gamma);
        if (found) {
          kgens.push_back(std::move(*found));
          recompute_orbit(kgens, lv.base, reached);
        } else {
          std::vector<char> orb;
          recompute_orbit(kgens, gamma, orb);
          for (std::size_t p = 0; p < n_; ++p)
            if (orb[p]) failed[p] = 1;
        }
      }
    }
    return PermGroup(n_, std::move(kgens));
  }

  IntersectStats stats;

private:
  void recompute_orbit(const std::vector<Permutation> &gens, Point start,
                       std::vector<char> &mark) const {
    mark.assign(n_, 0);
    std::vector<Point> q{start};
    mark[start] = 1;
    for (std::size_t k = 0; k < q.size(); ++k)
      for (const auto &g : gens) {
        Point y = g[q[k]];
        if (!mark[y]) {
          mark[y] = 1;
          q.push_back(y);
        }
      }
  }

  /// Sifts `residual` one level of H's chain at position j. Returns false
  /// if the base image is outside H's orbit.
  bool sift_step(Permutation &residual, std::size_t j) const {
    const auto &hl = Hc_.chain().levels[j];
    Point b = residual[hl.base];
    if (!hl.in_orbit(b)) return false;
    if (b != hl.base) residual = residual * hl.rep_inv(b);
    return true;
  }

  /// Sifts through the H levels belonging to G level j.
  bool sift_range(Permutation &residual, std::size_t j) const {
    for (std::size_t l = eb_.start[j]; l < eb_.start[j + 1]; ++l)
      if (!sift_step(residual, l)) return false;
    return true;
  }

  std::optional<Permutation> search_level(std::size_t i, Point gamma) {
    const auto &gl = G_.chain().levels;
    const Permutation &u = gl[i].rep(gamma);
    // u fixes every H base point listed before b_i, so the residual starts
    // at b_i's H level.
    Permutation residual = u;
    if (!sift_range(residual, i)) return std::nullopt;
    return dfs(i + 1, u, residual);
  }

  std::optional<Permutation> dfs(std::size_t j, const Permutation &p,
                                 const Permutation &residual) {
    const auto &gl = G_.chain().levels;
    if (++stats.nodes > budget_)
      throw BudgetExceeded("intersection backtrack budget exhausted");
    if (j == gl.size()) {
      // p is a full element of G; finish sifting in H.
      auto [h, stop] = Hc_.chain().sift(residual, eb_.start[j]);
      if (stop == Hc_.chain().levels.size() && h.is_identity()) return p;
      return std::nullopt;
    }
    const ChainLevel &lv = gl[j];
    for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
      const Permutation &t = lv.transversal[k];
      Permutation r = t * residual;
      if (!sift_range(r, j)) continue;
      auto res = dfs(j + 1, t * p, r);
      if (res) return res;
    }
    return std::nullopt;
  }

  PermGroup G_;
  ExtendedBase eb_;
  PermGroup Hc_;
  std::size_t n_;
  std::uint64_t budget_;
};

} // namespace detail

/// Intersection by enumerating the smaller group and filtering by
/// membership in the other (independent oracle for the backtrack).
inline PermGroup intersect_by_enumeration(const PermGroup &A,
                                          const PermGroup &B,
                                          std::uint64_t cap =
                                              kDefaultEnumerationCap) {
  if (A.degree() != B.degree())
    throw std::invalid_argument("degree mismatch in intersect");
  const PermGroup &small = A.order() <= B.order() ? A : B;
  const PermGroup &other = &small == &A ? B : A;
  std::vector<Permutation> gens;
  PermGroup K(A.degree());
  small.for_each_element(
      [&](const Permutation &x) {
        if (x.is_identity() || !other.contains(x) || K.contains(x)) return;
        gens.push_back(x);
        K = PermGroup(A.degree(), gens);
      },
      cap);
  return K;
}

/// Exact A cap B. Throws BudgetExceeded if the backtrack budget runs out and
/// the smaller order exceeds the enumeration cap.
inline PermGroup intersect(const PermGroup &A, const PermGroup &B,
                           const IntersectOptions &opt = {},
                           IntersectStats *stats = nullptr) {
  if (A.degree() != B.degree())
    throw std::invalid_argument("degree mismatch in intersect");
  bool a_small = A.order() <= B.order();
  const PermGroup &G = a_small ? A : B;
  const PermGroup &H = a_small ? B : A;
  if (G.is_trivial()) return G;
  if (H.contains_group(G)) return G;
  detail::IntersectionSearch search(G, H, opt.node_budget);
  try {
    PermGroup K = search.run();
    if (stats) *stats = search.stats;
    return K;
  } catch (const BudgetExceeded &) {
    if (stats) *stats = search.stats;
    if (G.order() <= opt.enumeration_cap)
      return intersect_by_enumeration(A, B, opt.enumeration_cap);
    throw;
  }
}

} // namespace mindim
