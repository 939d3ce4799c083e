#pragma once

// Concrete permutation groups: projective groups on the projective line,
// affine groups on F_p^d, Mathieu groups, and the structural stabilizers
// (set stabilizers, partition stabilizers) used for maximal subgroups.

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "group.hpp"

namespace mindim {

/// Subgroup of even permutations of M (index 1 or 2), via Schreier
/// generators for the coset representatives {1, t} with t an odd generator.
inline PermGroup intersect_with_An(const PermGroup &M) {
  const auto &gens = M.generators();
  const Permutation *odd = nullptr;
  for (const auto &g : gens)
    if (!is_even(g)) {
      odd = &g;
      break;
    }
  if (!odd) return M;
  const Permutation &t = *odd;
  Permutation tinv = t.inverse();
  std::vector<Permutation> out;
  for (const auto &s : gens) {
    if (is_even(s)) {
      out.push_back(s);
      out.push_back(t * s * tinv);
    } else {
      out.push_back(s * tinv);
      out.push_back(t * s);
    }
  }
  return PermGroup(M.degree(), std::move(out));
}

// Projective line ------------------------------------------------------------
//
// Point i (1 <= i <= q) is the field element with index i-1; point q+1 is
// infinity. Internally 0-based: element index e <-> point e, infinity <-> q.

namespace detail {

inline Permutation projective_map(const FiniteField &F, unsigned a, unsigned b,
                                  unsigned c, unsigned d) {
  // x -> (a x + b) / (c x + d)
  unsigned q = F.order();
  const unsigned inf = q;
  std::vector<Point> img(q + 1);
  for (unsigned x = 0; x <= q; ++x) {
    unsigned num, den;
    if (x == inf) {
      num = a;
      den = c;
    } else {
      num = F.add(F.mul(a, x), b);
      den = F.add(F.mul(c, x), d);
    }
    if (den == 0)
      img[x] = static_cast<Point>(inf);
    else
      img[x] = static_cast<Point>(F.mul(num, F.inv(den)));
  }
  return Permutation::from_images0(std::move(img));
}

inline Permutation projective_frobenius(const FiniteField &F) {
  unsigned q = F.order();
  std::vector<Point> img(q + 1);
  for (unsigned x = 0; x < q; ++x) img[x] = static_cast<Point>(F.frobenius(x));
  img[q] = static_cast<Point>(q);
  return Permutation::from_images0(std::move(img));
}

inline void require_projective_q(unsigned q) {
  auto w = prime_power(q);
  if (!w.is_prime_power)
    throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  if (q < 4) throw std::invalid_argument("projective constructions need q >= 4");
}

} // namespace detail

/// PGL_2(q) on the q+1 points of the projective line, generated by
/// x -> x+1, x -> u x (u primitive), x -> -1/x.
inline PermGroup pgl2_projective(unsigned q) {
  detail::require_projective_q(q);
  FiniteField F(q);
  unsigned u = F.primitive_element();
  std::vector<Permutation> gens{
      detail::projective_map(F, 1, 1, 0, 1),
      detail::projective_map(F, u, 0, 0, 1),
      detail::projective_map(F, 0, F.neg(1), 1, 0),
  };
  return PermGroup(q + 1, std::move(gens));
}

/// PSL_2(q): generated by x -> x+1, x -> u^2 x, x -> -1/x.
inline PermGroup psl2_projective(unsigned q) {
  detail::require_projective_q(q);
  FiniteField F(q);
  unsigned u = F.primitive_element();
  std::vector<Permutation> gens{
      detail::projective_map(F, 1, 1, 0, 1),
      detail::projective_map(F, F.mul(u, u), 0, 0, 1),
      detail::projective_map(F, 0, F.neg(1), 1, 0),
  };
  return PermGroup(q + 1, std::move(gens));
}

/// PGammaL_2(q): PGL_2(q) extended by the Frobenius x -> x^p.
inline PermGroup pgammal2_projective(unsigned q) {
  detail::require_projective_q(q);
  FiniteField F(q);
  auto gens = pgl2_projective(q).generators();
  gens.push_back(detail::projective_frobenius(F));
  return PermGroup(q + 1, std::move(gens));
}

/// Image of diag(u, 1) on the projective line: x -> u x.
inline Permutation projective_diagonal(unsigned q) {
  detail::require_projective_q(q);
  FiniteField F(q);
  return detail::projective_map(F, F.primitive_element(), 0, 0, 1);
}

// Affine groups -------------------------------------------------------------
//
// Points are vectors v of F_p^d; point index (0-based) is
// v_0 + v_1 p + ... + v_{d-1} p^{d-1}; 1-based point = index + 1.

enum class LinearPart { GL, SL };

namespace detail {

inline std::vector<unsigned> vec_of(unsigned idx, unsigned p, unsigned d) {
  std::vector<unsigned> v(d);
  for (unsigned i = 0; i < d; ++i) {
    v[i] = idx % p;
    idx /= p;
  }
  return v;
}

inline unsigned idx_of(const std::vector<unsigned> &v, unsigned p) {
  unsigned a = 0;
  for (unsigned i = static_cast<unsigned>(v.size()); i-- > 0;) a = a * p + v[i];
  return a;
}

/// Permutation induced by v -> M v + t (M row-major d x d).
inline Permutation affine_map(unsigned p, unsigned d,
                              const std::vector<unsigned> &M,
                              const std::vector<unsigned> &t) {
  unsigned n = 1;
  for (unsigned i = 0; i < d; ++i) n *= p;
  std::vector<Point> img(n);
  for (unsigned x = 0; x < n; ++x) {
    auto v = vec_of(x, p, d);
    std::vector<unsigned> w(d);
    for (unsigned r = 0; r < d; ++r) {
      unsigned s = t[r];
      for (unsigned c = 0; c < d; ++c) s += M[r * d + c] * v[c];
      w[r] = s % p;
    }
    img[x] = static_cast<Point>(idx_of(w, p));
  }
  return Permutation::from_images0(std::move(img));
}

} // namespace detail

/// AGL_d(p) or ASL_d(p) on p^d points: all unit translations plus
/// elementary transvections (and, for GL, diag(g,1,...,1) with g a
/// primitive root).
inline PermGroup affine_group(unsigned d, unsigned p, LinearPart linear) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  std::uint64_t n = 1;
  for (unsigned i = 0; i < d; ++i) n *= p;
  if (n > kMaxDegree) throw std::invalid_argument("affine degree exceeds cap");
  std::vector<unsigned> I(d * d, 0), zero(d, 0);
  for (unsigned i = 0; i < d; ++i) I[i * d + i] = 1;
  std::vector<Permutation> gens;
  for (unsigned i = 0; i < d; ++i) {
    auto t = zero;
    t[i] = 1;
    gens.push_back(detail::affine_map(p, d, I, t));
  }
  for (unsigned r = 0; r < d; ++r)
    for (unsigned c = 0; c < d; ++c) {
      if (r == c) continue;
      auto M = I;
      M[r * d + c] = 1;
      gens.push_back(detail::affine_map(p, d, M, zero));
    }
  if (linear == LinearPart::GL && p > 2) {
    FiniteField F(p);
    auto M = I;
    M[0] = F.primitive_element();
    gens.push_back(detail::affine_map(p, d, M, zero));
  }
  return PermGroup(static_cast<std::size_t>(n), std::move(gens));
}

// Mathieu groups ------------------------------------------------------------

inline PermGroup mathieu11() {
  return PermGroup(11, {parse_cycles("(1 2 3 4 5 6 7 8 9 10 11)", 11),
                        parse_cycles("(3 7 11 8)(4 10 5 6)", 11)});
}

inline PermGroup mathieu12() {
  return PermGroup(12, {parse_cycles("(1 2 3 4 5 6 7 8 9 10 11)", 12),
                        parse_cycles("(3 7 11 8)(4 10 5 6)", 12),
                        parse_cycles("(1 12)(2 11)(3 6)(4 8)(5 9)(7 10)", 12)});
}

inline PermGroup mathieu23() {
  return PermGroup(
      23, {parse_cycles("(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 "
                        "21 22 23)",
                        23),
           parse_cycles("(3 17 10 7 9)(4 13 14 19 5)(8 18 11 12 23)"
                        "(15 20 22 21 16)",
                        23)});
}

namespace detail {

/// Stabilizer of the last point of G, restricted to the other points.
inline PermGroup last_point_stabilizer(const PermGroup &G) {
  std::size_t n = G.degree();
  PermGroup H = G.with_base_prefix({static_cast<Point>(n - 1)});
  std::vector<Permutation> gens;
  const auto &lv = H.chain().levels;
  for (std::size_t i = 1; i < lv.size(); ++i)
    for (const auto &x : lv[i].gens) {
      std::vector<Point> img(n - 1);
      for (std::size_t j = 0; j + 1 < n; ++j) img[j] = x[j];
      gens.push_back(Permutation::from_images0(std::move(img)));
    }
  return PermGroup(n - 1, std::move(gens));
}

} // namespace detail

/// M22: the stabilizer of point 23 in M23.
inline PermGroup mathieu22() { return detail::last_point_stabilizer(mathieu23()); }

/// GL_d(2) = PSL_d(2) on the 2^d - 1 nonzero vectors of F_2^d (point v has
/// index v - 1 in the affine numbering).
inline PermGroup projective_space_2(unsigned d) {
  PermGroup ag = affine_group(d, 2, LinearPart::GL);
  std::size_t m = (std::size_t{1} << d) - 1;
  std::vector<Permutation> gens;
  for (const auto &x : ag.generators()) {
    if (x[0] != 0) continue;
    std::vector<Point> img(m);
    for (std::size_t v = 1; v <= m; ++v) img[v - 1] = static_cast<Point>(x[v] - 1);
    gens.push_back(Permutation::from_images0(std::move(img)));
  }
  return PermGroup(m, std::move(gens));
}

// Structural stabilizers ----------------------------------------------------

namespace detail {

/// Generators of Sym(points) (points 0-based): a transposition and a cycle.
inline void append_symmetric_gens(std::size_t n, const std::vector<Point> &pts,
                                  std::vector<Permutation> &out) {
  if (pts.size() < 2) return;
  Permutation id(n);
  std::vector<Point> tr = id.images0();
  std::swap(tr[pts[0]], tr[pts[1]]);
  out.push_back(Permutation::from_images0(tr));
  if (pts.size() > 2) {
    std::vector<Point> cy = id.images0();
    for (std::size_t i = 0; i < pts.size(); ++i)
      cy[pts[i]] = pts[(i + 1) % pts.size()];
    out.push_back(Permutation::from_images0(cy));
  }
}

} // namespace detail

/// Setwise stabilizer of `subset` (1-based points) in S_n.
inline PermGroup set_stabilizer_sym(std::size_t n,
                                    const std::vector<int> &subset) {
  std::vector<bool> in(n, false);
  for (int x : subset) {
    if (x < 1 || static_cast<std::size_t>(x) > n)
      throw std::invalid_argument("point out of range");
    in[x - 1] = true;
  }
  std::vector<Point> a, b;
  for (std::size_t i = 0; i < n; ++i)
    (in[i] ? a : b).push_back(static_cast<Point>(i));
  std::vector<Permutation> gens;
  detail::append_symmetric_gens(n, a, gens);
  detail::append_symmetric_gens(n, b, gens);
  return PermGroup(n, std::move(gens));
}

/// Stabilizer in S_n of a partition into equal blocks (1-based points):
/// Sym(first block), a swap of the first two blocks, and a block cycle.
inline PermGroup partition_stabilizer_sym(
    std::size_t n, const std::vector<std::vector<int>> &blocks) {
  std::vector<std::vector<Point>> B;
  for (const auto &blk : blocks) {
    std::vector<Point> b;
    for (int x : blk) b.push_back(static_cast<Point>(x - 1));
    std::sort(b.begin(), b.end());
    B.push_back(std::move(b));
  }
  std::vector<Permutation> gens;
  detail::append_symmetric_gens(n, B[0], gens);
  Permutation id(n);
  if (B.size() >= 2) {
    std::vector<Point> sw = id.images0();
    for (std::size_t i = 0; i < B[0].size(); ++i) {
      sw[B[0][i]] = B[1][i];
      sw[B[1][i]] = B[0][i];
    }
    gens.push_back(Permutation::from_images0(sw));
  }
  if (B.size() > 2) {
    std::vector<Point> cy = id.images0();
    for (std::size_t j = 0; j < B.size(); ++j)
      for (std::size_t i = 0; i < B[j].size(); ++i)
        cy[B[j][i]] = B[(j + 1) % B.size()][i];
    gens.push_back(Permutation::from_images0(cy));
  }
  return PermGroup(n, std::move(gens));
}

} // namespace mindim
