#pragma once

// Explicit maximal irredundant families of A_n.

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "classifier.hpp"
#include "constructions.hpp"
#include "irredundance.hpp"

namespace mindim {

/// A family of maximal subgroups of A_n with its irredundance certificate.
struct WitnessFamily {
  std::size_t n = 0;
  std::string provenance;
  std::vector<MaximalSubgroupDescriptor> descriptors;
  IrredundanceCertificate certificate;
  bool trivial_intersection = false;
  /// How maximality of the members is known.
  std::string maximality;

  Family family() const {
    return Family::of_descriptors(alternating_group(n), descriptors);
  }
};

/// Thrown when no implemented construction covers a degree.
class ConstructiveGap : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline WitnessFamily finish_witness(std::size_t n, std::string provenance,
                                    std::vector<MaximalSubgroupDescriptor> ds,
                                    std::string maximality) {
  WitnessFamily w;
  w.n = n;
  w.provenance = std::move(provenance);
  w.descriptors = std::move(ds);
  w.maximality = std::move(maximality);
  Family F = w.family();
  auto cert = irredundance_certificate(F);
  if (!cert)
    throw std::logic_error("constructed family (" + w.provenance +
                           ") is not irredundant");
  w.certificate = std::move(*cert);
  w.trivial_intersection = intersect_family(F).is_trivial();
  return w;
}

} // namespace detail

// Dihedral triple -------------------------------------------------------------
//
// D = <rho, sigma> of order n = 2m. Point i+1 is rho^i, point m+i+1 is
// sigma rho^i (0 <= i < m). D acts on itself by right multiplication.

/// The right-regular dihedral group of degree n.
inline PermGroup dihedral_right_regular(std::size_t n) {
  if (n % 2 || n < 6) throw std::invalid_argument("need even n >= 6");
  std::size_t m = n / 2;
  std::vector<Point> rho(n), sigma(n);
  for (std::size_t i = 0; i < m; ++i) {
    rho[i] = static_cast<Point>((i + 1) % m);
    rho[m + i] = static_cast<Point>(m + (i + 1) % m);
    // rho^i sigma = sigma rho^-i ; sigma rho^i sigma = rho^-i
    sigma[i] = static_cast<Point>(m + (m - i) % m);
    sigma[m + i] = static_cast<Point>((m - i) % m);
  }
  return PermGroup(n, {Permutation::from_images0(rho),
                       Permutation::from_images0(sigma)});
}

/// Right multiplication by the reflection sigma rho^j, as a list of 2-cycles
/// (1-based): rho^i <-> sigma rho^(j-i).
inline std::vector<std::vector<int>> dihedral_reflection_blocks(std::size_t n,
                                                                std::size_t j) {
  std::size_t m = n / 2;
  std::vector<std::vector<int>> blocks;
  for (std::size_t i = 0; i < m; ++i)
    blocks.push_back({static_cast<int>(i + 1),
                      static_cast<int>(m + (j + m - i) % m + 1)});
  return blocks;
}

/// {C(r1) cap A_n, C(r2) cap A_n, Stab(1) cap A_n} with r1 = sigma,
/// r2 = sigma rho. The centralizer of a fixed-point-free involution is the
/// wreath product over its 2-cycles.
inline WitnessFamily dihedral_triple(std::size_t n) {
  if (n % 2 || n < 6)
    throw std::invalid_argument("dihedral_triple needs even n >= 6");
  std::vector<MaximalSubgroupDescriptor> ds{
      imprimitive_subgroup(n, dihedral_reflection_blocks(n, 0),
                           Ambient::AlternatingN),
      imprimitive_subgroup(n, dihedral_reflection_blocks(n, 1),
                           Ambient::AlternatingN),
      point_stabilizer(n, 1, Ambient::AlternatingN)};
  std::string maximality =
      n == 8 ? "not maximal: (S_2 wr S_4) cap A_8 lies in AGL_3(2)"
             : "maximal (intransitive and imprimitive classes)";
  return detail::finish_witness(n, "dihedral_triple", std::move(ds),
                                std::move(maximality));
}

// Trivial-intersection conjugates ---------------------------------------------

struct ConjugateSearchOptions {
  std::uint64_t seed = 1;
  std::uint64_t random_trials = 200;
  /// Conjugates examined in the exhaustive phase (0 = skip it).
  std::uint64_t exhaustive_budget = 1'000'000;
  IntersectOptions intersect;
};

struct ConjugateSearchResult {
  std::optional<Permutation> conjugator;
  /// True if every conjugate was examined; with no conjugator this proves
  /// that none exists.
  bool exhaustive_completed = false;
  std::uint64_t random_trials = 0;
  std::uint64_t conjugates_checked = 0;
};

/// g in the ambient with H cap H^g trivial: seeded random trials, then all
/// conjugates of H (enumerated from the descriptor).
inline ConjugateSearchResult
find_trivial_intersection_conjugate(const PermGroup &ambient,
                                    const MaximalSubgroupDescriptor &H,
                                    const ConjugateSearchOptions &opt = {}) {
  if (!ambient.contains_group(H.group))
    throw std::invalid_argument("H is not a subgroup of the ambient group");
  ConjugateSearchResult r;
  std::mt19937_64 rng(opt.seed);
  for (; r.random_trials < opt.random_trials;) {
    ++r.random_trials;
    Permutation g = ambient.random_element(rng);
    if (intersect(H.group, H.group.conjugated(g), opt.intersect).is_trivial()) {
      r.conjugator = g;
      return r;
    }
  }
  if (opt.exhaustive_budget == 0) return r;
  ConjugateSet cs(ambient, H, opt.exhaustive_budget);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    ++r.conjugates_checked;
    PermGroup K = H.group.conjugated(cs.conjugator(i));
    if (intersect(H.group, K, opt.intersect).is_trivial()) {
      r.conjugator = cs.conjugator(i);
      return r;
    }
  }
  r.exhaustive_completed = true;
  return r;
}

/// Overload for a bare group: wrapped as a constructed descriptor.
inline ConjugateSearchResult
find_trivial_intersection_conjugate(const PermGroup &ambient,
                                    const PermGroup &H,
                                    const ConjugateSearchOptions &opt = {}) {
  MaximalSubgroupDescriptor d;
  d.degree = H.degree();
  d.ambient = Ambient::AlternatingN;
  d.kind = Primitive{"constructed:H", Permutation(H.degree())};
  d.group = H;
  return find_trivial_intersection_conjugate(ambient, d, opt);
}

/// Descriptor of H^g.
inline MaximalSubgroupDescriptor conjugate_descriptor(
    const MaximalSubgroupDescriptor &H, const Permutation &g) {
  auto map_pts = [&](const std::vector<int> &v) {
    std::vector<int> out;
    for (int x : v) out.push_back(g[x - 1] + 1);
    return out;
  };
  if (auto *t = std::get_if<Intransitive>(&H.kind))
    return intransitive_subgroup(H.degree, map_pts(t->set), H.ambient);
  if (auto *m = std::get_if<Imprimitive>(&H.kind)) {
    std::vector<std::vector<int>> B;
    for (const auto &b : m->blocks) B.push_back(map_pts(b));
    return imprimitive_subgroup(H.degree, std::move(B), H.ambient);
  }
  const auto &p = std::get<Primitive>(H.kind);
  if (!is_constructed_id(p.catalog_id))
    return primitive_subgroup(p.catalog_id, p.conjugator * g);
  MaximalSubgroupDescriptor d = H;
  d.kind = Primitive{p.catalog_id, p.conjugator * g};
  d.group = H.group.conjugated(g);
  return d;
}

// Size-3 families found by search ------------------------------------------------

struct TripleSearchOptions {
  std::uint64_t seed = 1;
  std::uint64_t budget = 5'000'000;
  IntersectOptions intersect;
};

/// Three conjugates of H (H itself first) with trivial intersection forming
/// an irredundant family. The second member runs over the conjugates in a
/// seeded order; the third over all conjugates.
inline std::optional<std::vector<MaximalSubgroupDescriptor>>
search_conjugate_triple(const MaximalSubgroupDescriptor &H,
                        const TripleSearchOptions &opt = {}) {
  PermGroup ambient = ambient_group(H.degree, H.ambient);
  ConjugateSet cs(ambient, H);
  std::size_t self = *cs.index_of_key(cs.key_of(Permutation(H.degree)));
  std::vector<std::size_t> order(cs.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(opt.seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::uint64_t budget = opt.budget;
  for (std::size_t bi : order) {
    if (bi == self) continue;
    PermGroup B = H.group.conjugated(cs.conjugator(bi));
    PermGroup I = intersect(H.group, B, opt.intersect);
    if (I.is_trivial() || I.order() > 100000) continue;
    std::vector<Permutation> elts;
    I.for_each_element([&](const Permutation &x) {
      if (!x.is_identity()) elts.push_back(x);
    });
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
      if (ci == self || ci == bi) continue;
      if (budget-- == 0) return std::nullopt;
      PermGroup C = H.group.conjugated(cs.conjugator(ci));
      bool meets = std::any_of(elts.begin(), elts.end(),
                               [&](const Permutation &x) { return C.contains(x); });
      if (meets) continue;
      std::vector<MaximalSubgroupDescriptor> ds{
          H, conjugate_descriptor(H, cs.conjugator(bi)),
          conjugate_descriptor(H, cs.conjugator(ci))};
      if (irredundance_certificate(Family::of_descriptors(ambient, ds),
                                   opt.intersect))
        return ds;
    }
  }
  return std::nullopt;
}

// Exceptional degrees ------------------------------------------------------------

inline WitnessFamily exceptional_witness(std::size_t n,
                                         const TripleSearchOptions &opt = {}) {
  if (n == 7) {
    std::vector<MaximalSubgroupDescriptor> ds{
        intransitive_subgroup(7, {1, 2, 3, 4}, Ambient::AlternatingN),
        intransitive_subgroup(7, {1, 2, 5}, Ambient::AlternatingN),
        intransitive_subgroup(7, {2, 5, 6}, Ambient::AlternatingN)};
    return detail::finish_witness(7, "exceptional_A7", std::move(ds),
                                  "maximal (intransitive classes)");
  }
  if (n == 11) {
    auto ds = search_conjugate_triple(primitive_subgroup("A11.M11.a"), opt);
    if (!ds)
      throw BudgetExceeded("no M11 triple with trivial intersection within "
                           "the search budget");
    return detail::finish_witness(11, "exceptional_A11_M11", std::move(*ds),
                                  "maximal (catalog class A11.M11.a)");
  }
  throw std::invalid_argument("exceptional_witness covers n = 7 and 11 only");
}

/// n = 8: the dihedral members C(r) cap A_8 are not maximal, so the family
/// comes from a triple search over the 3-set stabilizers.
inline WitnessFamily triple_search_8(const TripleSearchOptions &opt = {}) {
  auto ds = search_conjugate_triple(
      intransitive_subgroup(8, {1, 2, 3}, Ambient::AlternatingN), opt);
  if (!ds) throw BudgetExceeded("no 3-set stabilizer triple within the budget");
  return detail::finish_witness(8, "triple_search_A8", std::move(*ds),
                                "maximal (intransitive class)");
}

// Size-2 witnesses -------------------------------------------------------------

struct Size2Result {
  std::optional<WitnessFamily> witness;
  std::string route;
  std::string explanation;
};

namespace detail {

inline std::optional<WitnessFamily>
pair_from_conjugate(std::size_t n, const MaximalSubgroupDescriptor &H,
                    const std::string &route, const std::string &maximality,
                    const ConjugateSearchOptions &opt) {
  PermGroup A = alternating_group(n);
  auto r = find_trivial_intersection_conjugate(A, H, opt);
  if (!r.conjugator) return std::nullopt;
  std::vector<MaximalSubgroupDescriptor> ds{H, conjugate_descriptor(H, *r.conjugator)};
  return finish_witness(n, route, std::move(ds), maximality);
}

} // namespace detail

/// A maximal irredundant pair (trivial intersection) for a value-2 degree,
/// or an explanation when no implemented route covers n.
inline Size2Result size2_witness(std::size_t n, std::uint64_t seed = 1) {
  if (mindim_theorem(n).value != 2)
    throw std::invalid_argument("size2_witness requires a degree of value 2");
  Size2Result res;
  const Ambient An = Ambient::AlternatingN;
  ConjugateSearchOptions opt;
  opt.seed = seed;
  if (n == 4) {
    res.route = "A4: V4 and a point stabilizer";
    res.witness = detail::finish_witness(
        4, "size2_A4",
        {imprimitive_subgroup(4, {{1, 2}, {3, 4}}, An), point_stabilizer(4, 4, An)},
        "maximal (imprimitive and intransitive classes)");
    return res;
  }
  if (n == 5) {
    res.route = "A5: stabilizers of {1,2} and {1,3}";
    res.witness = detail::finish_witness(
        5, "size2_A5",
        {intransitive_subgroup(5, {1, 2}, An), intransitive_subgroup(5, {1, 3}, An)},
        "maximal (intransitive class)");
    return res;
  }
  if (n <= 12) {
    for (const auto &e : primitive_catalog()) {
      if (e.degree != n || e.ambient != An) continue;
      auto w = detail::pair_from_conjugate(n, primitive_subgroup(e.catalog_id),
                                           "size2_catalog_" + e.catalog_id,
                                           "maximal (catalog class)", opt);
      if (w) {
        res.route = "catalog primitive class " + e.catalog_id;
        res.witness = std::move(w);
        return res;
      }
    }
    res.explanation = "no catalog primitive class of degree " +
                      std::to_string(n) + " has a trivial-intersection conjugate";
    return res;
  }
  const std::string lit = "maximal by the classification of maximal subgroups "
                          "of A_n (not machine-checked)";
  std::vector<std::pair<std::string, std::function<MaximalSubgroupDescriptor()>>>
      routes;
  auto q = prime_power(n - 1);
  if (q.is_prime_power && n - 1 != 23 && n - 1 <= 256 &&
      (q.exponent == 1 ||
       conway_polynomials().count({static_cast<unsigned>(q.prime), q.exponent})))
    routes.emplace_back("PGammaL_2(" + std::to_string(n - 1) + ") cap A_n", [=] {
      return constructed_primitive("PGammaL2_" + std::to_string(n - 1),
                                   pgammal2_projective(static_cast<unsigned>(n - 1)),
                                   An);
    });
  if (is_prime(n) && n != 17 && n != 23)
    routes.emplace_back("AGL_1(" + std::to_string(n) + ") cap A_n", [=] {
      return constructed_primitive(
          "AGL1_" + std::to_string(n),
          affine_group(1, static_cast<unsigned>(n), LinearPart::GL), An);
    });
  if (n == 23)
    routes.emplace_back("M23", [] {
      return constructed_primitive("M23", mathieu23(), An);
    });
  if (n == 22)
    routes.emplace_back("M22", [] {
      return constructed_primitive("M22", mathieu22(), An);
    });
  if (n == 15)
    routes.emplace_back("PSL_4(2) on 15 points", [] {
      return constructed_primitive("PSL4_2", projective_space_2(4), An);
    });
  if (n == 16)
    routes.emplace_back("AGL_4(2)", [] {
      return constructed_primitive("AGL4_2", affine_group(4, 2, LinearPart::GL), An);
    });
  auto sq = prime_power(n);
  if (sq.is_prime_power && sq.exponent == 2 && sq.prime >= 5)
    routes.emplace_back("AGL_2(" + std::to_string(sq.prime) + ") cap A_n", [=] {
      return constructed_primitive(
          "AGL2_" + std::to_string(sq.prime),
          affine_group(2, static_cast<unsigned>(sq.prime), LinearPart::GL), An);
    });
  for (std::size_t k = 3; k * k < n; ++k) {
    if (n % k) continue;
    std::size_t l = n / k;
    if (l < k + 2 || (k == 3 && l == 5) || (k == 4 && l == 6)) continue;
    routes.emplace_back("(S_" + std::to_string(k) + " wr S_" + std::to_string(l) +
                            ") cap A_n",
                        [=] {
                          return imprimitive_subgroup(n, consecutive_blocks(n, k), An);
                        });
    break;
  }
  for (auto &[name, make] : routes) {
    MaximalSubgroupDescriptor H = make();
    ConjugateSearchOptions o = opt;
    o.exhaustive_budget = 0;
    o.random_trials = 400;
    bool structural = std::holds_alternative<Imprimitive>(H.kind);
    auto w = detail::pair_from_conjugate(
        n, H, "size2_" + name, structural ? "maximal (imprimitive class)" : lit, o);
    if (w) {
      res.route = name;
      res.witness = std::move(w);
      return res;
    }
  }
  res.explanation =
      routes.empty()
          ? "no constructive route at degree " + std::to_string(n) +
                " (the value rests on the existence of a base of size 2)"
          : "routes tried without finding a trivial-intersection conjugate";
  return res;
}

// Six-case construction for n = 2p ----------------------------------------------

enum class CaseTag { WrPWrP, WrPIntrans, WrPWr2, Wr2Wr2, Wr2Intrans, IntransIntrans };

inline const char *case_tag_name(CaseTag t) {
  switch (t) {
  case CaseTag::WrPWrP: return "WrPWrP";
  case CaseTag::WrPIntrans: return "WrPIntrans";
  case CaseTag::WrPWr2: return "WrPWr2";
  case CaseTag::Wr2Wr2: return "Wr2Wr2";
  case CaseTag::Wr2Intrans: return "Wr2Intrans";
  default: return "IntransIntrans";
  }
}

/// a[i-1] = a_i, b[i-1] = b_i for i = 1..k+1; a_1 = b_1, a_{k+1} = b_{k+1}.
struct BlockChain {
  std::vector<int> a, b;
  std::size_t k() const { return a.size() - 1; }
  int a_(std::size_t i) const { return a.at(i - 1); }
  int b_(std::size_t i) const { return b.at(i - 1); }
};

/// Chain through the alternating cycle of two perfect matchings (given as
/// partner maps, 1-based, index 0 unused) starting at a1 with a2 its
/// partner in the first and b2 its partner in the second.
inline BlockChain build_block_chain(const std::vector<int> &partner_a,
                                    const std::vector<int> &partner_b, int a1) {
  BlockChain c;
  int a2 = partner_a.at(a1), b2 = partner_b.at(a1);
  if (a2 == b2) throw std::invalid_argument("blocks of a1 coincide");
  c.a = {a1, a2};
  c.b = {a1, b2};
  for (;;) {
    std::size_t i = c.a.size();
    int an = partner_a.at(c.b_(i)), bn = partner_b.at(c.a_(i));
    c.a.push_back(an);
    c.b.push_back(bn);
    if (an == bn) break;
    if (c.a.size() > partner_a.size())
      throw std::logic_error("block chain does not close");
  }
  return c;
}

/// Checks that the listed pairs are blocks of the two systems and the points
/// are distinct apart from the forced coincidences.
inline void validate_block_chain(const BlockChain &c,
                                 const std::vector<int> &partner_a,
                                 const std::vector<int> &partner_b) {
  std::size_t k = c.k();
  if (k < 2 || c.b.size() != c.a.size() || c.a_(1) != c.b_(1) ||
      c.a_(k + 1) != c.b_(k + 1))
    throw std::invalid_argument("malformed block chain");
  std::set<int> seen;
  for (std::size_t i = 1; i <= k + 1; ++i) seen.insert(c.a_(i));
  for (std::size_t i = 2; i <= k; ++i) seen.insert(c.b_(i));
  if (seen.size() != 2 * k) throw std::invalid_argument("block chain repeats a point");
  if (partner_a.at(c.a_(1)) != c.a_(2)) throw std::invalid_argument("bad first A block");
  if (partner_b.at(c.a_(1)) != c.b_(2)) throw std::invalid_argument("bad first B block");
  for (std::size_t i = 2; i <= k; ++i) {
    if (partner_a.at(c.b_(i)) != c.a_(i + 1))
      throw std::invalid_argument("bad A block {b_i, a_i+1}");
    if (partner_b.at(c.a_(i)) != c.b_(i + 1))
      throw std::invalid_argument("bad B block {a_i, b_i+1}");
  }
}

/// The element gamma of the block-chain argument, with the name of the
/// formula used ("k=2", "k=3", "odd", "even").
inline std::pair<Permutation, std::string> case4_gamma_formula(const BlockChain &c,
                                                               std::size_t n) {
  std::size_t k = c.k();
  if (k < 2 || c.a.size() != k + 1 || c.b.size() != k + 1)
    throw std::invalid_argument("malformed block chain");
  std::vector<int> c1, c2;
  std::string f;
  if (k == 2) {
    c1 = {c.a_(1), c.a_(3)};
    c2 = {c.a_(2), c.b_(2)};
    f = "k=2";
  } else if (k == 3) {
    c1 = {c.a_(1), c.a_(3), c.b_(3)};
    c2 = {c.a_(2), c.b_(2), c.a_(4)};
    f = "k=3";
  } else if (k % 2 == 1) {
    for (std::size_t i = 1; i <= k; i += 2) c1.push_back(c.a_(i));
    for (std::size_t i = k; i >= 3; i -= 2) c1.push_back(c.b_(i));
    c2.push_back(c.a_(2));
    for (std::size_t i = 2; i <= k - 1; i += 2) c2.push_back(c.b_(i));
    for (std::size_t i = k + 1; i >= 4; i -= 2) c2.push_back(c.a_(i));
    f = "odd";
  } else {
    for (std::size_t i = 1; i <= k + 1; i += 2) c1.push_back(c.a_(i));
    for (std::size_t i = k - 1; i >= 3; i -= 2) c1.push_back(c.b_(i));
    c2.push_back(c.a_(2));
    for (std::size_t i = 2; i <= k; i += 2) c2.push_back(c.b_(i));
    for (std::size_t i = k; i >= 4; i -= 2) c2.push_back(c.a_(i));
    f = "even";
  }
  return {from_cycles(n, {c1, c2}), f};
}

inline Permutation case4_gamma(const BlockChain &c, std::size_t n) {
  return case4_gamma_formula(c, n).first;
}

struct Bullet {
  /// Symbolic form as printed, e.g. "(ij)(lt)".
  std::string printed;
  Permutation w;
  /// "AB-C", "AC-B" or "BC-A" in the proof's naming of A and B.
  std::string role;
  bool ok = false;
  std::string failure;
};

struct ConstructionCase {
  std::size_t n = 0;
  int case_number = 0;
  CaseTag tag = CaseTag::WrPWrP;
  /// Sub-branch id, e.g. "2a"; see third_subgroup_branches().
  std::string branch;
  /// True when the inputs were exchanged to match the proof's orientation.
  bool swapped = false;
  std::vector<std::pair<std::string, int>> points;
  /// Inputs and C, as subgroups of S_n.
  MaximalSubgroupDescriptor A, B, C;
  std::vector<Bullet> bullets;
  std::optional<BlockChain> chain;
  std::string gamma_formula;
  /// For {A cap A_n, B cap A_n, C cap A_n} in input order.
  IrredundanceCertificate certificate;
  bool valid = false;

  Family family() const {
    PermGroup An = alternating_group(n);
    return Family(An, {{intersect_with_An(A.group), A.label(), std::nullopt},
                       {intersect_with_An(B.group), B.label(), std::nullopt},
                       {intersect_with_An(C.group), C.label(), std::nullopt}});
  }
};

/// Every sub-branch id the construction can take.
inline std::vector<std::string> third_subgroup_branches() {
  return {"1",  "2a", "2b", "3a", "3b", "4a", "4b",      "5a",
          "5b", "5c", "6a", "6b", "4:gamma:k=2", "4:gamma:k=3",
          "4:gamma:odd", "4:gamma:even"};
}

namespace detail {

enum class TKind { WrP, Wr2, Intrans };

struct TInput {
  TKind kind;
  std::vector<std::vector<int>> blocks; // WrP / Wr2
  std::vector<int> small;               // Intrans: side of size < p
};

inline TInput classify_input(const MaximalSubgroupDescriptor &d, std::size_t p) {
  std::size_t n = 2 * p;
  if (d.degree != n) throw std::invalid_argument("descriptor degree is not 2p");
  TInput t;
  if (auto *s = std::get_if<Intransitive>(&d.kind)) {
    t.kind = TKind::Intrans;
    if (s->set.size() < p) {
      t.small = s->set;
    } else {
      for (std::size_t x = 1; x <= n; ++x)
        if (!std::binary_search(s->set.begin(), s->set.end(), static_cast<int>(x)))
          t.small.push_back(static_cast<int>(x));
    }
    return t;
  }
  if (auto *m = std::get_if<Imprimitive>(&d.kind)) {
    t.blocks = m->blocks;
    if (m->blocks.front().size() == p) t.kind = TKind::WrP;
    else if (m->blocks.front().size() == 2) t.kind = TKind::Wr2;
    else throw std::invalid_argument("imprimitive input must have blocks of size p or 2");
    return t;
  }
  throw std::invalid_argument("primitive inputs are not allowed (none exist at "
                              "this degree)");
}

class PointSet {
public:
  explicit PointSet(std::size_t n) : in_(n + 1, 0) {}
  PointSet(std::size_t n, const std::vector<int> &v) : in_(n + 1, 0) {
    for (int x : v) in_[x] = 1;
  }
  bool has(int x) const { return in_[x] != 0; }
  std::size_t n() const { return in_.size() - 1; }
  PointSet complement() const {
    PointSet c(n());
    for (std::size_t x = 1; x <= n(); ++x) c.in_[x] = !in_[x];
    return c;
  }
  std::vector<int> points() const {
    std::vector<int> v;
    for (std::size_t x = 1; x <= n(); ++x)
      if (in_[x]) v.push_back(static_cast<int>(x));
    return v;
  }
  std::size_t size() const { return points().size(); }
  PointSet meet(const PointSet &o) const {
    PointSet r(n());
    for (std::size_t x = 1; x <= n(); ++x) r.in_[x] = in_[x] && o.in_[x];
    return r;
  }
  PointSet minus(const PointSet &o) const {
    PointSet r(n());
    for (std::size_t x = 1; x <= n(); ++x) r.in_[x] = in_[x] && !o.in_[x];
    return r;
  }
  bool subset_of(const PointSet &o) const { return minus(o).size() == 0; }
  /// The i-th smallest point (0-based); throws if too few.
  int nth(std::size_t i) const {
    auto v = points();
    if (i >= v.size()) throw std::logic_error("point selection: set too small");
    return v[i];
  }

private:
  std::vector<char> in_;
};

inline std::vector<int> partner_map(std::size_t n,
                                    const std::vector<std::vector<int>> &blocks) {
  std::vector<int> pm(n + 1, 0);
  for (const auto &b : blocks) {
    pm[b[0]] = b[1];
    pm[b[1]] = b[0];
  }
  return pm;
}

/// The S_n form of an intransitive or imprimitive descriptor.
inline MaximalSubgroupDescriptor sym_form(const MaximalSubgroupDescriptor &d) {
  if (d.ambient == Ambient::SymmetricN) return d;
  if (auto *s = std::get_if<Intransitive>(&d.kind))
    return intransitive_subgroup(d.degree, s->set, Ambient::SymmetricN);
  return imprimitive_subgroup(d.degree, std::get<Imprimitive>(d.kind).blocks,
                              Ambient::SymmetricN);
}

} // namespace detail

/// Given maximal subgroups A != B of S_{2p} (p prime >= 7) of the allowed
/// kinds, builds C and the three witnesses of the matching proof case.
inline ConstructionCase third_subgroup_2p(const MaximalSubgroupDescriptor &Ain,
                                          const MaximalSubgroupDescriptor &Bin,
                                          std::size_t n) {
  using detail::PointSet;
  using detail::TKind;
  if (n % 2) throw std::invalid_argument("n must be 2p");
  std::size_t p = n / 2;
  if (p < 7 || !is_prime(p))
    throw std::invalid_argument("n = 2p needs p prime >= 7");
  auto ti = detail::classify_input(Ain, p);
  auto tj = detail::classify_input(Bin, p);
  if (detail::sym_form(Ain).group.same_group(detail::sym_form(Bin).group))
    throw std::invalid_argument("A and B coincide");

  ConstructionCase cc;
  cc.n = n;
  auto rank = [](TKind k) { return k == TKind::WrP ? 0 : k == TKind::Wr2 ? 1 : 2; };
  cc.swapped = rank(tj.kind) < rank(ti.kind);
  const auto &P = cc.swapped ? tj : ti; // the proof's A
  const auto &Q = cc.swapped ? ti : tj; // the proof's B
  std::vector<std::pair<std::string, int>> &pts = cc.points;
  auto cyc = [&](std::vector<std::vector<int>> cs) { return from_cycles(n, cs); };
  std::vector<int> cset;
  struct Raw {
    std::string printed;
    Permutation w;
    std::string role;
  };
  std::vector<Raw> raw;
  auto set_of_side = [&](const detail::TInput &t) { return PointSet(n, t.small); };
  auto name = [&](const char *s, int x) { pts.emplace_back(s, x); return x; };

  if (P.kind == TKind::WrP && Q.kind == TKind::WrP) {
    cc.case_number = 1;
    cc.tag = CaseTag::WrPWrP;
    cc.branch = "1";
    PointSet SA(n, P.blocks[0]), SB(n, Q.blocks[0]);
    if (SA.meet(SB).size() < (p + 1) / 2) SA = SA.complement();
    PointSet out = SA.complement().meet(SB.complement());
    int a = name("a", SA.minus(SB).nth(0));
    int i = name("i", SA.meet(SB).nth(0)), j = name("j", SA.meet(SB).nth(1));
    int b = name("b", SB.minus(SA).nth(0));
    int l = name("l", out.nth(0)), t = name("t", out.nth(1)), s = name("s", out.nth(2));
    cset = {b, i, l};
    raw = {{"(ij)(lt)", cyc({{i, j}, {l, t}}), "AB-C"},
           {"(aj)(ts)", cyc({{a, j}, {t, s}}), "AC-B"},
           {"(bi)(ts)", cyc({{b, i}, {t, s}}), "BC-A"}};
  } else if (P.kind == TKind::WrP && Q.kind == TKind::Intrans) {
    cc.case_number = 2;
    cc.tag = CaseTag::WrPIntrans;
    PointSet SB = set_of_side(Q).complement(); // the side larger than p
    std::optional<PointSet> inside;
    for (const auto &blk : P.blocks)
      if (PointSet(n, blk).subset_of(SB)) {
        inside = PointSet(n, blk);
        break;
      }
    if (inside) {
      cc.branch = "2a";
      PointSet SA = *inside;
      int a = name("a", SA.nth(0)), x = name("x", SA.nth(1));
      int r = name("r", SA.nth(2)), s = name("s", SA.nth(3));
      int b = name("b", SB.minus(SA).nth(0));
      int c = name("c", SB.complement().nth(0));
      cset = {a, b, c};
      raw = {{"(ax)(rs)", cyc({{a, x}, {r, s}}), "AB-C"},
             {"(bc)(rs)", cyc({{b, c}, {r, s}}), "AC-B"},
             {"(ab)(rs)", cyc({{a, b}, {r, s}}), "BC-A"}};
    } else {
      cc.branch = "2b";
      PointSet SA(n, P.blocks[0]);
      if (SA.meet(SB).size() < (p + 1) / 2) SA = SA.complement();
      int a = name("a", SA.minus(SB).nth(0));
      int b = name("b", SB.minus(SA).nth(0)), x = name("x", SB.minus(SA).nth(1));
      PointSet I = SA.meet(SB);
      int i = name("i", I.nth(0)), j = name("j", I.nth(1)), r = name("r", I.nth(2));
      cset = {a, b, i};
      raw = {{"(ir)(bx)", cyc({{i, r}, {b, x}}), "AB-C"},
             {"(ai)(jr)", cyc({{a, i}, {j, r}}), "AC-B"},
             {"(bi)(jr)", cyc({{b, i}, {j, r}}), "BC-A"}};
    }
  } else if (P.kind == TKind::WrP && Q.kind == TKind::Wr2) {
    cc.case_number = 3;
    cc.tag = CaseTag::WrPWr2;
    PointSet SA(n, P.blocks[0]);
    std::vector<std::vector<int>> one, in, out;
    for (const auto &blk : Q.blocks) {
      int c = SA.has(blk[0]) + SA.has(blk[1]);
      (c == 1 ? one : c == 2 ? in : out).push_back(blk);
    }
    if (in.empty()) {
      cc.branch = "3a";
      // B_i = {alpha_i, beta_i}, alpha_i in the A block, ordered by alpha_i
      std::vector<std::pair<int, int>> ab;
      for (const auto &blk : one)
        ab.emplace_back(SA.has(blk[0]) ? blk[0] : blk[1],
                        SA.has(blk[0]) ? blk[1] : blk[0]);
      std::sort(ab.begin(), ab.end());
      std::vector<int> al, be;
      for (auto [x, y] : ab) {
        al.push_back(x);
        be.push_back(y);
      }
      for (std::size_t k = 0; k < 4; ++k) {
        pts.emplace_back("alpha" + std::to_string(k + 1), al[k]);
        pts.emplace_back("beta" + std::to_string(k + 1), be[k]);
      }
      cset = {al[0], al[1], be[0]};
      raw = {{"(1...p)(p+1...2p)", cyc({al, be}), "AB-C"},
             {"(1 p+1)(3 p+3)", cyc({{al[0], be[0]}, {al[2], be[2]}}), "BC-A"},
             {"(12)(34)", cyc({{al[0], al[1]}, {al[2], al[3]}}), "AC-B"}};
    } else {
      cc.branch = "3b";
      const auto &B1 = one.at(0);
      int r = name("r", in.at(0)[0]), s = name("s", in.at(0)[1]);
      int y = name("y", out.at(0)[0]), z = name("z", out.at(0)[1]);
      int x = name("x", SA.has(B1[0]) ? B1[1] : B1[0]);
      int t = name("t", SA.has(B1[0]) ? B1[0] : B1[1]);
      cset = {x, y, t};
      raw = {{"(yz)(rs)", cyc({{y, z}, {r, s}}), "AB-C"},
             {"(xy)(rs)", cyc({{x, y}, {r, s}}), "AC-B"},
             {"(xt)(rs)", cyc({{x, t}, {r, s}}), "BC-A"}};
    }
  } else if (P.kind == TKind::Wr2 && Q.kind == TKind::Wr2) {
    cc.case_number = 4;
    cc.tag = CaseTag::Wr2Wr2;
    auto pa = detail::partner_map(n, P.blocks), pb = detail::partner_map(n, Q.blocks);
    int a1 = 0;
    for (std::size_t u = 1; u <= n; ++u)
      if (pa[u] != pb[u]) {
        a1 = static_cast<int>(u);
        break;
      }
    int a2 = pa[a1], b2 = pb[a1];
    name("1", a1);
    name("2", a2);
    name("3", b2);
    int x = name("x", pa[b2]), y = name("y", pb[a2]);
    cset = {a1};
    BlockChain chain = build_block_chain(pa, pb, a1);
    validate_block_chain(chain, pa, pb);
    auto [gamma, formula] = case4_gamma_formula(chain, n);
    cc.chain = chain;
    cc.gamma_formula = formula;
    raw.push_back({"gamma", gamma, "AB-C"});
    if (x != y) {
      cc.branch = "4a";
      int z = name("z", pa[y]), w = name("w", pb[x]);
      raw.push_back({"(3x)(yz)", cyc({{b2, x}, {y, z}}), "AC-B"});
      raw.push_back({"(2y)(xw)", cyc({{a2, y}, {x, w}}), "BC-A"});
    } else {
      cc.branch = "4b";
      PointSet used(n, {a1, a2, b2, x});
      auto fresh = [&](const std::vector<std::vector<int>> &bl) {
        for (const auto &blk : bl)
          if (!used.has(blk[0]) && !used.has(blk[1])) return blk;
        throw std::logic_error("no fresh block");
      };
      auto ab = fresh(P.blocks), gd = fresh(Q.blocks);
      name("alpha", ab[0]);
      name("beta", ab[1]);
      name("gamma", gd[0]);
      name("delta", gd[1]);
      raw.push_back({"(34)(alpha beta)", cyc({{b2, x}, {ab[0], ab[1]}}), "AC-B"});
      raw.push_back({"(24)(gamma delta)", cyc({{a2, x}, {gd[0], gd[1]}}), "BC-A"});
    }
  } else if (P.kind == TKind::Wr2 && Q.kind == TKind::Intrans) {
    cc.case_number = 5;
    cc.tag = CaseTag::Wr2Intrans;
    PointSet SB = set_of_side(Q).complement();
    std::vector<std::vector<int>> full, half, none;
    for (const auto &blk : P.blocks) {
      int c = SB.has(blk[0]) + SB.has(blk[1]);
      (c == 2 ? full : c == 1 ? half : none).push_back(blk);
    }
    auto orient = [&](const std::vector<int> &blk) {
      return SB.has(blk[0]) ? std::pair{blk[0], blk[1]} : std::pair{blk[1], blk[0]};
    };
    if (half.size() >= 2) {
      cc.branch = "5a";
      int x = name("x", full.at(0)[0]), y = name("y", full.at(0)[1]);
      auto [a, b] = orient(half[0]);
      auto [z, w] = orient(half[1]);
      name("a", a);
      name("b", b);
      name("z", z);
      name("w", w);
      cset = {y, z, w};
      raw = {{"(az)(bw)", cyc({{a, z}, {b, w}}), "AB-C"},
             {"(ab)(wz)", cyc({{a, b}, {w, z}}), "AC-B"},
             {"(ax)(yz)", cyc({{a, x}, {y, z}}), "BC-A"}};
    } else if (half.size() == 1) {
      cc.branch = "5b";
      int x = name("x", full.at(0)[0]), y = name("y", full.at(0)[1]);
      int a = name("a", full.at(1)[0]), b = name("b", full.at(1)[1]);
      auto [z, w] = orient(half[0]);
      name("z", z);
      name("w", w);
      cset = {y, z, w};
      raw = {{"(ax)(by)", cyc({{a, x}, {b, y}}), "AB-C"},
             {"(ab)(wz)", cyc({{a, b}, {w, z}}), "AC-B"},
             {"(abx)", cyc({{a, b, x}}), "BC-A"}};
    } else {
      cc.branch = "5c";
      int x = name("x", full.at(0)[0]), y = name("y", full.at(0)[1]);
      int a = name("a", full.at(1)[0]), b = name("b", full.at(1)[1]);
      int t = name("t", none.at(0)[0]), w = name("w", none.at(0)[1]);
      cset = {x, t};
      raw = {{"(xy)(tw)", cyc({{x, y}, {t, w}}), "AB-C"},
             {"(yw)(xt)", cyc({{y, w}, {x, t}}), "AC-B"},
             {"(yab)", cyc({{y, a, b}}), "BC-A"}};
    }
  } else {
    cc.case_number = 6;
    cc.tag = CaseTag::IntransIntrans;
    PointSet SA = set_of_side(P), SB = set_of_side(Q);
    std::vector<PointSet> sidesA{SA, SA.complement()}, sidesB{SB, SB.complement()};
    // 6a: a side X of one group inside a side Y of the other, |X| >= 3.
    std::optional<std::tuple<PointSet, PointSet, bool>> nest; // X, Y, X from B
    for (int from_b = 0; from_b < 2 && !nest; ++from_b) {
      const auto &xs = from_b ? sidesB : sidesA;
      const auto &ys = from_b ? sidesA : sidesB;
      for (const auto &X : xs) {
        for (const auto &Y : ys)
          if (X.size() >= 3 && X.subset_of(Y) && Y.minus(X).size() > 0) {
            nest.emplace(X, Y, from_b == 1);
            break;
          }
        if (nest) break;
      }
    }
    if (nest) {
      cc.branch = "6a";
      auto &[X, Y, from_b] = *nest;
      if (from_b) cc.swapped = !cc.swapped;
      int a = name("a", X.nth(0)), x = name("x", X.nth(1)), y = name("y", X.nth(2));
      int b = name("b", Y.minus(X).nth(0));
      int z = name("z", Y.complement().nth(0));
      cset = {b, y, z};
      raw = {{"(axy)", cyc({{a, x, y}}), "AB-C"},
             {"(ax)(bz)", cyc({{a, x}, {b, z}}), "AC-B"},
             {"(ax)(by)", cyc({{a, x}, {b, y}}), "BC-A"}};
    } else {
      cc.branch = "6b";
      std::optional<std::pair<PointSet, PointSet>> pick;
      for (const auto &X : sidesA)
        for (const auto &Y : sidesB) {
          if (pick) break;
          if (X.minus(Y).size() && Y.minus(X).size() &&
              X.meet(Y).size() >= (p + 1) / 2)
            pick.emplace(X, Y);
        }
      if (!pick) throw std::logic_error("case 6: no admissible complement choice");
      auto &[X, Y] = *pick;
      int a = name("a", X.minus(Y).nth(0)), b = name("b", Y.minus(X).nth(0));
      PointSet I = X.meet(Y);
      int x = name("x", I.nth(0)), y = name("y", I.nth(1)), z = name("z", I.nth(2));
      cset = {a, b, x};
      raw = {{"(xyz)", cyc({{x, y, z}}), "AB-C"},
             {"(ax)(yz)", cyc({{a, x}, {y, z}}), "AC-B"},
             {"(xb)(yz)", cyc({{x, b}, {y, z}}), "BC-A"}};
    }
  }

  cc.A = detail::sym_form(Ain);
  cc.B = detail::sym_form(Bin);
  cc.C = intransitive_subgroup(n, cset, Ambient::SymmetricN);

  // Proof letters A, B refer to (P, Q); map to the inputs.
  const PermGroup &GA = cc.swapped ? cc.B.group : cc.A.group;
  const PermGroup &GB = cc.swapped ? cc.A.group : cc.B.group;
  const PermGroup &GC = cc.C.group;
  auto group_for = [&](char c) -> const PermGroup & {
    return c == 'A' ? GA : c == 'B' ? GB : GC;
  };
  cc.valid = true;
  std::map<std::string, Permutation> by_role;
  for (auto &r : raw) {
    Bullet bl{r.printed, r.w, r.role, true, ""};
    auto fail = [&](const std::string &s) {
      bl.ok = false;
      if (!bl.failure.empty()) bl.failure += "; ";
      bl.failure += s;
    };
    if (!is_even(r.w)) fail("odd permutation");
    if (!group_for(r.role[0]).contains(r.w)) fail(std::string("not in ") + r.role[0]);
    if (!group_for(r.role[1]).contains(r.w)) fail(std::string("not in ") + r.role[1]);
    if (group_for(r.role[3]).contains(r.w)) fail(std::string("lies in ") + r.role[3]);
    if (!bl.ok) cc.valid = false;
    by_role[r.role] = r.w;
    cc.bullets.push_back(std::move(bl));
  }
  // Certificate order: member dropped = input A, input B, C.
  const std::string dropA = cc.swapped ? "AC-B" : "BC-A";
  const std::string dropB = cc.swapped ? "BC-A" : "AC-B";
  cc.certificate.witnesses = {by_role.at(dropA), by_role.at(dropB),
                              by_role.at("AB-C")};
  if (cc.valid) cc.valid = validate_certificate(cc.family(), cc.certificate).ok;
  return cc;
}

/// Branch ids executed by a construction (including the gamma formula).
inline std::vector<std::string> branches_of(const ConstructionCase &cc) {
  std::vector<std::string> v{cc.branch};
  if (cc.case_number == 4) v.push_back("4:gamma:" + cc.gamma_formula);
  return v;
}

// Dispatch -------------------------------------------------------------------------

/// A maximal irredundant family of size Mindim(A_n).
inline WitnessFamily witness_family(std::size_t n, std::uint64_t seed = 1) {
  auto cls = mindim_theorem(n);
  if (cls.value == 2) {
    auto r = size2_witness(n, seed);
    if (!r.witness) throw ConstructiveGap(r.explanation);
    return *r.witness;
  }
  if (n == 7 || n == 11) {
    TripleSearchOptions o;
    o.seed = seed;
    return exceptional_witness(n, o);
  }
  if (n == 8) {
    TripleSearchOptions o;
    o.seed = seed;
    return triple_search_8(o);
  }
  return dihedral_triple(n);
}

} // namespace mindim
