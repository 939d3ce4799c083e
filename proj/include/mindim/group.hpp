#pragma once

// Permutation groups backed by a deterministic Schreier-Sims stabilizer
// chain. A PermGroup is immutable once constructed and may be shared
// across threads for reading.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <type_traits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "perm.hpp"

namespace mindim {

using BigInt = boost::multiprecision::cpp_int;

/// Raised when an enumeration or search exceeds its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Default cap on explicit element enumeration.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// One level of a stabilizer chain: G^(i) = pointwise stabilizer of the
/// earlier base points, its strong generators, and the orbit of the level's
/// base point with explicit transversal elements.
struct ChainLevel {
  Point base = 0;
  std::vector<Permutation> gens;
  std::vector<Point> orbit;                         // BFS order, orbit[0] == base
  std::vector<std::int32_t> orbit_pos;              // point -> index in orbit, or -1
  std::vector<Permutation> transversal;             // u with base^u == orbit[k]
  std::vector<Permutation> transversal_inv;

  bool in_orbit(Point p) const { return orbit_pos[p] >= 0; }
  const Permutation &rep(Point p) const { return transversal[orbit_pos[p]]; }
  const Permutation &rep_inv(Point p) const {
    return transversal_inv[orbit_pos[p]];
  }
};

namespace detail {

inline void rebuild_orbit(ChainLevel &lv, std::size_t degree) {
  lv.orbit.assign(1, lv.base);
  lv.orbit_pos.assign(degree, -1);
  lv.orbit_pos[lv.base] = 0;
  Permutation id(degree);
  lv.transversal.assign(1, id);
  lv.transversal_inv.assign(1, id);
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    Point p = lv.orbit[k];
    for (const auto &s : lv.gens) {
      Point q = s[p];
      if (lv.orbit_pos[q] >= 0) continue;
      lv.orbit_pos[q] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(q);
      Permutation u = lv.transversal[k] * s;
      lv.transversal_inv.push_back(u.inverse());
      lv.transversal.push_back(std::move(u));
    }
  }
}

} // namespace detail

/// Stabilizer chain data. Levels may have trivial orbits when a base prefix
/// was prescribed.
struct StabilizerChain {
  std::size_t degree = 0;
  std::vector<ChainLevel> levels;

  /// Sifts g from level `from`; returns the residue and the index of the
  /// first level where sifting stopped (levels.size() if it went through).
  std::pair<Permutation, std::size_t> sift(Permutation g,
                                           std::size_t from = 0) const {
    for (std::size_t i = from; i < levels.size(); ++i) {
      const auto &lv = levels[i];
      Point b = g[lv.base];
      if (!lv.in_orbit(b)) return {std::move(g), i};
      if (b != lv.base) g = g * lv.rep_inv(b);
    }
    return {std::move(g), levels.size()};
  }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto &lv : levels) b.push_back(lv.base);
    return b;
  }
};

namespace detail {

/// Deterministic Schreier-Sims. `prefix` fixes the leading base points.
inline StabilizerChain schreier_sims(std::size_t degree,
                                     const std::vector<Permutation> &gens,
                                     const std::vector<Point> &prefix) {
  StabilizerChain ch;
  ch.degree = degree;
  std::vector<bool> in_base(degree, false);
  auto add_level = [&](Point b) {
    ChainLevel lv;
    lv.base = b;
    in_base[b] = true;
    ch.levels.push_back(std::move(lv));
  };
  for (Point b : prefix) {
    if (b >= degree) throw std::invalid_argument("base point out of range");
    if (!in_base[b]) add_level(b);
  }

  // Ensure every generator moves some base point, then distribute.
  auto ensure_moves_base = [&](const Permutation &g) {
    for (const auto &lv : ch.levels)
      if (g[lv.base] != lv.base) return;
    for (std::size_t p = 0; p < degree; ++p)
      if (g[p] != p && !in_base[p]) {
        add_level(static_cast<Point>(p));
        return;
      }
  };
  std::vector<Permutation> sgs;
  for (const auto &g : gens) {
    if (g.degree() != degree) throw std::invalid_argument("degree mismatch");
    if (g.is_identity()) continue;
    if (std::find(sgs.begin(), sgs.end(), g) != sgs.end()) continue;
    ensure_moves_base(g);
    sgs.push_back(g);
  }
  auto fixes_prefix = [&](const Permutation &g, std::size_t i) {
    for (std::size_t j = 0; j < i; ++j)
      if (g[ch.levels[j].base] != ch.levels[j].base) return false;
    return true;
  };
  for (std::size_t i = 0; i < ch.levels.size(); ++i) {
    for (const auto &g : sgs)
      if (fixes_prefix(g, i)) ch.levels[i].gens.push_back(g);
    rebuild_orbit(ch.levels[i], degree);
  }

  // Process levels bottom-up; on adding a strong generator, restart at the
  // deepest level it was added to.
  std::size_t i = ch.levels.size();
  while (i > 0) {
    std::size_t li = i - 1;
    bool restarted = false;
    for (std::size_t k = 0; !restarted && k < ch.levels[li].orbit.size(); ++k) {
      for (std::size_t s = 0; !restarted && s < ch.levels[li].gens.size();
           ++s) {
        const Permutation gen = ch.levels[li].gens[s];
        Point img = gen[ch.levels[li].orbit[k]];
        // Schreier generator u_k * s * u_{img}^-1
        Permutation y = ch.levels[li].transversal[k] * gen *
                        ch.levels[li].rep_inv(img);
        if (y.is_identity()) continue;
        auto [h, j] = ch.sift(std::move(y), li + 1);
        if (h.is_identity()) continue;
        if (j == ch.levels.size()) {
          std::size_t p = h.first_moved();
          add_level(static_cast<Point>(p));
        }
        for (std::size_t l = li + 1; l <= j; ++l) {
          ch.levels[l].gens.push_back(h);
          rebuild_orbit(ch.levels[l], degree);
        }
        i = j + 1;
        restarted = true;
      }
    }
    if (!restarted) --i;
  }
  return ch;
}

} // namespace detail

class PermGroup {
public:
  PermGroup() : PermGroup(1) {}

  /// Trivial group of the given degree.
  explicit PermGroup(std::size_t degree) : degree_(degree) {
    if (degree == 0 || degree > kMaxDegree)
      throw std::invalid_argument("group degree out of range");
    chain_ = std::make_shared<const StabilizerChain>(
        detail::schreier_sims(degree, {}, {}));
  }

  /// Group generated by `gens` (all of degree `degree`). An empty list gives
  /// the trivial group. `base_prefix` (0-based points) is prescribed as the
  /// leading base points of the chain.
  PermGroup(std::size_t degree, std::vector<Permutation> gens,
            const std::vector<Point> &base_prefix = {})
      : degree_(degree) {
    if (degree == 0 || degree > kMaxDegree)
      throw std::invalid_argument("group degree out of range");
    for (const auto &g : gens)
      if (g.degree() != degree)
        throw std::invalid_argument("generator degree mismatch");
    std::erase_if(gens, [](const Permutation &g) { return g.is_identity(); });
    gens_ = std::move(gens);
    chain_ = std::make_shared<const StabilizerChain>(
        detail::schreier_sims(degree, gens_, base_prefix));
  }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation> &generators() const { return gens_; }
  const StabilizerChain &chain() const { return *chain_; }

  BigInt order() const {
    BigInt o = 1;
    for (const auto &lv : chain_->levels) o *= lv.orbit.size();
    return o;
  }

  /// Order as a 64-bit value; throws if it does not fit.
  std::uint64_t order_u64() const {
    BigInt o = order();
    if (o > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("group order exceeds 64 bits");
    return o.convert_to<std::uint64_t>();
  }

  bool is_trivial() const {
    for (const auto &lv : chain_->levels)
      if (lv.orbit.size() > 1) return false;
    return true;
  }

  bool contains(const Permutation &p) const {
    if (p.degree() != degree_)
      throw std::invalid_argument("degree mismatch in contains");
    auto [h, j] = chain_->sift(p);
    return j == chain_->levels.size() && h.is_identity();
  }

  /// True iff every generator of `other` lies in this group.
  bool contains_group(const PermGroup &other) const {
    for (const auto &g : other.generators())
      if (!contains(g)) return false;
    return true;
  }

  /// Equality as sets of permutations.
  bool same_group(const PermGroup &other) const {
    return degree_ == other.degree_ && order() == other.order() &&
           contains_group(other);
  }

  /// Rebuilt with the given leading base points.
  PermGroup with_base_prefix(const std::vector<Point> &prefix) const {
    return PermGroup(degree_, strong_generators(), prefix);
  }

  std::vector<Permutation> strong_generators() const {
    std::vector<Permutation> out;
    for (const auto &lv : chain_->levels)
      for (const auto &g : lv.gens)
        if (std::find(out.begin(), out.end(), g) == out.end())
          out.push_back(g);
    return out;
  }

  /// Uniformly random element (product of random transversal entries).
  template <class Rng> Permutation random_element(Rng &rng) const {
    Permutation g(degree_);
    for (auto it = chain_->levels.rbegin(); it != chain_->levels.rend(); ++it) {
      std::uniform_int_distribution<std::size_t> d(0, it->orbit.size() - 1);
      g = g * it->transversal[d(rng)];
    }
    return g;
  }

  /// Calls f(element) for every element exactly once. Throws BudgetExceeded
  /// if the order exceeds `cap`; f returning false stops early.
  template <class F>
  void for_each_element(F &&f,
                        std::uint64_t cap = kDefaultEnumerationCap) const {
    if (order() > cap)
      throw BudgetExceeded("group order " + order().str() +
                           " exceeds enumeration cap " + std::to_string(cap));
    const auto &lv = chain_->levels;
    std::size_t m = lv.size();
    if (m == 0) {
      f(Permutation(degree_));
      return;
    }
    // partial[i] = u_{m-1} * ... * u_i
    std::vector<std::size_t> idx(m, 0);
    std::vector<Permutation> partial(m + 1, Permutation(degree_));
    for (std::size_t i = m; i-- > 0;)
      partial[i] = partial[i + 1] * lv[i].transversal[0];
    for (;;) {
      if constexpr (std::is_same_v<std::invoke_result_t<F, Permutation>,
                                   bool>) {
        if (!f(partial[0])) return;
      } else {
        f(partial[0]);
      }
      std::size_t i = 0;
      while (i < m && ++idx[i] == lv[i].orbit.size()) {
        idx[i] = 0;
        ++i;
      }
      if (i == m) return;
      for (std::size_t j = i + 1; j-- > 0;)
        partial[j] = partial[j + 1] * lv[j].transversal[idx[j]];
    }
  }

  std::vector<Permutation>
  elements(std::uint64_t cap = kDefaultEnumerationCap) const {
    std::vector<Permutation> out;
    for_each_element([&](const Permutation &g) { out.push_back(g); }, cap);
    return out;
  }

  /// G^g, with the stabilizer chain relabelled rather than recomputed.
  PermGroup conjugated(const Permutation &g) const {
    if (g.degree() != degree_)
      throw std::invalid_argument("degree mismatch in conjugate_group");
    Permutation ginv = g.inverse();
    auto conj = [&](const Permutation &x) { return ginv * x * g; };
    PermGroup out;
    out.degree_ = degree_;
    for (const auto &x : gens_) out.gens_.push_back(conj(x));
    auto ch = std::make_shared<StabilizerChain>();
    ch->degree = degree_;
    ch->levels.reserve(chain_->levels.size());
    for (const auto &lv : chain_->levels) {
      ChainLevel nl;
      nl.base = g[lv.base];
      for (const auto &x : lv.gens) nl.gens.push_back(conj(x));
      nl.orbit_pos.assign(degree_, -1);
      for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
        Point p = g[lv.orbit[k]];
        nl.orbit.push_back(p);
        nl.orbit_pos[p] = static_cast<std::int32_t>(k);
        nl.transversal.push_back(conj(lv.transversal[k]));
        nl.transversal_inv.push_back(conj(lv.transversal_inv[k]));
      }
      ch->levels.push_back(std::move(nl));
    }
    out.chain_ = std::move(ch);
    return out;
  }

private:
  std::size_t degree_ = 1;
  std::vector<Permutation> gens_;
  std::shared_ptr<const StabilizerChain> chain_;
};

inline PermGroup build_chain(std::size_t degree,
                             std::vector<Permutation> gens) {
  return PermGroup(degree, std::move(gens));
}

/// Group generated by a nonempty generator list.
inline PermGroup build_chain(std::vector<Permutation> gens) {
  if (gens.empty())
    throw std::invalid_argument(
        "empty generator list: pass the degree explicitly");
  std::size_t n = gens.front().degree();
  return PermGroup(n, std::move(gens));
}

/// Group generated by g^-1 x g for the generators x of G.
inline PermGroup conjugate_group(const PermGroup &G, const Permutation &g) {
  return G.conjugated(g);
}

inline PermGroup symmetric_group(std::size_t n) {
  if (n <= 1) return PermGroup(std::max<std::size_t>(n, 1));
  std::vector<Permutation> gens;
  std::vector<Point> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<Point>((i + 1) % n);
  gens.push_back(Permutation::from_images0(cyc));
  std::vector<Point> tr(n);
  for (std::size_t i = 0; i < n; ++i) tr[i] = static_cast<Point>(i);
  std::swap(tr[0], tr[1]);
  gens.push_back(Permutation::from_images0(tr));
  return PermGroup(n, std::move(gens));
}

/// A_n generated by (1 2 3) and the (n or n-1)-cycle of matching parity.
inline PermGroup alternating_group(std::size_t n) {
  if (n <= 2) return PermGroup(std::max<std::size_t>(n, 1));
  Permutation id(n);
  std::vector<Point> c3 = id.images0();
  c3[0] = 1;
  c3[1] = 2;
  c3[2] = 0;
  std::vector<Permutation> gens{Permutation::from_images0(c3)};
  if (n > 3) {
    std::vector<Point> cy = id.images0();
    std::size_t start = n % 2 == 1 ? 0 : 1;
    for (std::size_t i = start; i < n; ++i)
      cy[i] = static_cast<Point>(i + 1 < n ? i + 1 : start);
    gens.push_back(Permutation::from_images0(cy));
  }
  return PermGroup(n, std::move(gens));
}

/// Orbits of the group on points (0-based), each sorted, ordered by minimum.
inline std::vector<std::vector<Point>> orbits(const PermGroup &G) {
  std::size_t n = G.degree();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<Point>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Point> orb{static_cast<Point>(s)};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < orb.size(); ++k)
      for (const auto &g : G.generators()) {
        Point q = g[orb[k]];
        if (comp[q] < 0) {
          comp[q] = static_cast<int>(out.size());
          orb.push_back(q);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

inline bool is_transitive(const PermGroup &G) { return orbits(G).size() == 1; }

/// Finest block system in which points a and b share a block (0-based block
/// ids per point), via union-find closure under the generators.
inline std::vector<std::size_t> minimal_block(const PermGroup &G, Point a,
                                              Point b) {
  std::size_t n = G.degree();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<std::size_t, std::size_t>> queue{{a, b}};
  parent[find(b)] = find(a);
  while (!queue.empty()) {
    auto [x, y] = queue.back();
    queue.pop_back();
    for (const auto &g : G.generators()) {
      std::size_t gx = find(g[x]), gy = find(g[y]);
      if (gx != gy) {
        parent[gy] = gx;
        queue.emplace_back(g[x], g[y]);
      }
    }
  }
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = find(i);
  return out;
}

/// Transitive and no nontrivial block system (checked from the block
/// generated by point 0 and each other point).
inline bool is_primitive(const PermGroup &G) {
  if (!is_transitive(G)) return false;
  std::size_t n = G.degree();
  for (std::size_t b = 1; b < n; ++b) {
    auto blk = minimal_block(G, 0, static_cast<Point>(b));
    std::size_t r = blk[0];
    for (std::size_t i = 1; i < n; ++i)
      if (blk[i] != r) return false;
  }
  return true;
}

} // namespace mindim
