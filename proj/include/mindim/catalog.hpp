#pragma once

// Maximal subgroups of S_n and A_n: descriptors, per-degree class lists,
// conjugate enumeration, and the embedded primitive catalog.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "json.hpp"

#include "classifier.hpp"
#include "constructions.hpp"
#include "group.hpp"
#include "mindim/primitive_catalog_data.hpp"

namespace mindim {

enum class Ambient { SymmetricN, AlternatingN };

inline const char *ambient_name(Ambient a) {
  return a == Ambient::SymmetricN ? "sn" : "an";
}

inline Ambient parse_ambient(const std::string &s) {
  if (s == "sn" || s == "S") return Ambient::SymmetricN;
  if (s == "an" || s == "A") return Ambient::AlternatingN;
  throw std::invalid_argument("unknown ambient '" + s + "' (expected an|sn)");
}

inline PermGroup ambient_group(std::size_t n, Ambient a) {
  return a == Ambient::SymmetricN ? symmetric_group(n) : alternating_group(n);
}

// Descriptor kinds (points 1-based, canonical ordering) ----------------------

struct Intransitive {
  std::vector<int> set; // sorted
  friend bool operator==(const Intransitive &, const Intransitive &) = default;
};

struct Imprimitive {
  std::vector<std::vector<int>> blocks; // each sorted, ordered by minimum
  friend bool operator==(const Imprimitive &, const Imprimitive &) = default;
};

struct Primitive {
  std::string catalog_id;
  Permutation conjugator; // member = catalog group ^ conjugator
  friend bool operator==(const Primitive &, const Primitive &) = default;
};

using SubgroupKind = std::variant<Intransitive, Imprimitive, Primitive>;

struct MaximalSubgroupDescriptor {
  std::size_t degree = 0;
  Ambient ambient = Ambient::AlternatingN;
  SubgroupKind kind;
  PermGroup group;
  /// 2 if the S_n-form contains odd permutations and was halved, else 1.
  unsigned an_index = 1;

  std::string kind_name() const {
    switch (kind.index()) {
    case 0: return "intransitive";
    case 1: return "imprimitive";
    default: return "primitive";
    }
  }

  /// Text form, e.g. "intransitive:{1,2,3}", "imprimitive:{1,2|3,4}",
  /// "primitive:A11.M11.a".
  std::string label() const;
};

namespace detail {

inline std::string join_points(const std::vector<int> &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

} // namespace detail

inline std::string MaximalSubgroupDescriptor::label() const {
  if (auto *t = std::get_if<Intransitive>(&kind))
    return "intransitive:{" + detail::join_points(t->set) + "}";
  if (auto *m = std::get_if<Imprimitive>(&kind)) {
    std::string s = "imprimitive:{";
    for (std::size_t i = 0; i < m->blocks.size(); ++i) {
      if (i) s += '|';
      s += detail::join_points(m->blocks[i]);
    }
    return s + "}";
  }
  const auto &p = std::get<Primitive>(kind);
  std::string s = "primitive:" + p.catalog_id;
  if (!p.conjugator.is_identity()) s += "^" + format_cycles(p.conjugator);
  return s;
}

// Primitive catalog ----------------------------------------------------------

struct PrimitiveCatalogEntry {
  std::string catalog_id;
  std::size_t degree = 0;
  Ambient ambient = Ambient::AlternatingN;
  std::vector<std::string> generators;
  std::uint64_t order = 0;
  std::string tag;
  std::string source;
  PermGroup group;
};

/// Parses and validates catalog JSON: exact order, transitivity,
/// primitivity, containment in the ambient group. Throws on any failure.
inline std::vector<PrimitiveCatalogEntry>
load_primitive_catalog(const std::string &json_text) {
  auto doc = nlohmann::json::parse(json_text);
  std::vector<PrimitiveCatalogEntry> out;
  for (const auto &e : doc.at("entries")) {
    PrimitiveCatalogEntry c;
    c.catalog_id = e.at("catalog_id").get<std::string>();
    c.degree = e.at("degree").get<std::size_t>();
    c.ambient = parse_ambient(e.at("ambient").get<std::string>());
    c.generators = e.at("generators").get<std::vector<std::string>>();
    c.order = e.at("order").get<std::uint64_t>();
    c.tag = e.value("tag", "");
    c.source = e.value("source", "");
    std::vector<Permutation> gens;
    for (const auto &g : c.generators)
      gens.push_back(parse_cycles(g, c.degree));
    c.group = PermGroup(c.degree, std::move(gens));
    auto fail = [&](const std::string &why) {
      throw std::runtime_error("catalog entry " + c.catalog_id + ": " + why);
    };
    if (c.group.order() != c.order)
      fail("order " + c.group.order().str() + " != expected " +
           std::to_string(c.order));
    if (!is_transitive(c.group)) fail("not transitive");
    if (!is_primitive(c.group)) fail("not primitive");
    if (c.ambient == Ambient::AlternatingN)
      for (const auto &g : c.group.generators())
        if (!is_even(g)) fail("odd generator in an A_n entry");
    out.push_back(std::move(c));
  }
  return out;
}

inline const std::vector<PrimitiveCatalogEntry> &primitive_catalog() {
  static const std::vector<PrimitiveCatalogEntry> cat =
      load_primitive_catalog(std::string(kPrimitiveCatalogJson));
  return cat;
}

inline const PrimitiveCatalogEntry &catalog_entry(const std::string &id) {
  for (const auto &e : primitive_catalog())
    if (e.catalog_id == id) return e;
  throw std::invalid_argument("unknown catalog id '" + id + "'");
}

// Constructors ---------------------------------------------------------------

namespace detail {

inline void finish_for_ambient(MaximalSubgroupDescriptor &d, PermGroup sym_form) {
  if (d.ambient == Ambient::AlternatingN) {
    BigInt before = sym_form.order();
    d.group = intersect_with_An(sym_form);
    BigInt after = d.group.order();
    if (before == after)
      d.an_index = 1;
    else if (before == 2 * after)
      d.an_index = 2;
    else
      throw std::logic_error("A_n intersection index not in {1,2}");
  } else {
    d.group = std::move(sym_form);
  }
}

} // namespace detail

/// Setwise stabilizer of S (and its complement), intersected with A_n for
/// AlternatingN. Rejects |S| in {0, n/2, n}.
inline MaximalSubgroupDescriptor
intransitive_subgroup(std::size_t n, std::vector<int> S, Ambient ambient) {
  std::sort(S.begin(), S.end());
  if (std::adjacent_find(S.begin(), S.end()) != S.end())
    throw std::invalid_argument("repeated point in intransitive set");
  for (int x : S)
    if (x < 1 || static_cast<std::size_t>(x) > n)
      throw std::invalid_argument("point out of range in intransitive set");
  if (S.empty() || S.size() >= n)
    throw std::invalid_argument("intransitive set must be nonempty and proper");
  if (2 * S.size() == n)
    throw std::invalid_argument(
        "set of size n/2: its stabilizer is not maximal (contained in the "
        "two-block wreath product)");
  MaximalSubgroupDescriptor d;
  d.degree = n;
  d.ambient = ambient;
  d.kind = Intransitive{S};
  detail::finish_for_ambient(d, set_stabilizer_sym(n, S));
  return d;
}

inline MaximalSubgroupDescriptor point_stabilizer(std::size_t n, int point,
                                                  Ambient ambient) {
  if (point < 1 || static_cast<std::size_t>(point) > n)
    throw std::invalid_argument("point out of range");
  return intransitive_subgroup(n, {point}, ambient);
}

inline std::vector<std::vector<int>>
canonical_blocks(std::size_t n, std::vector<std::vector<int>> blocks) {
  if (blocks.size() < 2)
    throw std::invalid_argument("partition needs at least two blocks");
  std::size_t k = blocks.front().size();
  if (k < 2) throw std::invalid_argument("blocks must have size >= 2");
  std::vector<bool> seen(n, false);
  std::size_t total = 0;
  for (auto &b : blocks) {
    if (b.size() != k) throw std::invalid_argument("unequal block sizes");
    std::sort(b.begin(), b.end());
    for (int x : b) {
      if (x < 1 || static_cast<std::size_t>(x) > n)
        throw std::invalid_argument("point out of range in partition");
      if (seen[x - 1]) throw std::invalid_argument("overlapping blocks");
      seen[x - 1] = true;
      ++total;
    }
  }
  if (total != n) throw std::invalid_argument("blocks do not cover 1..n");
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

inline MaximalSubgroupDescriptor
imprimitive_subgroup(std::size_t n, std::vector<std::vector<int>> blocks,
                     Ambient ambient) {
  blocks = canonical_blocks(n, std::move(blocks));
  MaximalSubgroupDescriptor d;
  d.degree = n;
  d.ambient = ambient;
  d.kind = Imprimitive{blocks};
  detail::finish_for_ambient(d, partition_stabilizer_sym(n, blocks));
  return d;
}

/// Blocks {1..k}, {k+1..2k}, ...
inline std::vector<std::vector<int>> consecutive_blocks(std::size_t n,
                                                        std::size_t k) {
  std::vector<std::vector<int>> b(n / k);
  for (std::size_t i = 0; i < n; ++i)
    b[i / k].push_back(static_cast<int>(i + 1));
  return b;
}

inline MaximalSubgroupDescriptor
primitive_subgroup(const std::string &catalog_id,
                   std::optional<Permutation> conjugator = std::nullopt) {
  const auto &e = catalog_entry(catalog_id);
  MaximalSubgroupDescriptor d;
  d.degree = e.degree;
  d.ambient = e.ambient;
  Permutation g = conjugator.value_or(Permutation(e.degree));
  d.kind = Primitive{catalog_id, g};
  d.group = g.is_identity() ? e.group : conjugate_group(e.group, g);
  return d;
}

/// Primitive subgroups built outside the catalog carry ids "constructed:<name>".
inline bool is_constructed_id(const std::string &id) {
  return id.rfind("constructed:", 0) == 0;
}

/// Descriptor for a primitive group given by generators (not catalog-backed).
/// For AlternatingN the group is intersected with A_n.
inline MaximalSubgroupDescriptor
constructed_primitive(const std::string &name, const PermGroup &sym_form,
                      Ambient ambient) {
  MaximalSubgroupDescriptor d;
  d.degree = sym_form.degree();
  d.ambient = ambient;
  d.kind = Primitive{"constructed:" + name, Permutation(sym_form.degree())};
  detail::finish_for_ambient(d, sym_form);
  return d;
}

/// Parses "intransitive:{1,2,3}", "imprimitive:{1,2|3,4|5,6}" or
/// "primitive:<catalog id>[^<conjugator cycles>]".
inline MaximalSubgroupDescriptor parse_descriptor(const std::string &text,
                                                  std::size_t n,
                                                  Ambient ambient) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("descriptor needs 'kind:' prefix: " + text);
  std::string kind = text.substr(0, colon), body = text.substr(colon + 1);
  if (kind == "primitive") {
    auto caret = body.find('^');
    if (caret == std::string::npos) return primitive_subgroup(body);
    std::string id = body.substr(0, caret);
    return primitive_subgroup(id, parse_cycles(body.substr(caret + 1),
                                               catalog_entry(id).degree));
  }
  if (body.size() < 2 || body.front() != '{' || body.back() != '}')
    throw std::invalid_argument("descriptor body must be braced: " + text);
  body = body.substr(1, body.size() - 2);
  auto parse_list = [](const std::string &s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok.erase(0, tok.find_first_not_of(' '));
      tok.erase(tok.find_last_not_of(' ') + 1);
      if (tok.empty()) continue;
      std::size_t pos = 0;
      int x = std::stoi(tok, &pos);
      if (pos != tok.size())
        throw std::invalid_argument("bad point '" + tok + "'");
      v.push_back(x);
    }
    return v;
  };
  if (kind == "intransitive")
    return intransitive_subgroup(n, parse_list(body), ambient);
  if (kind == "imprimitive") {
    std::vector<std::vector<int>> blocks;
    std::stringstream ss(body);
    std::string blk;
    while (std::getline(ss, blk, '|')) blocks.push_back(parse_list(blk));
    return imprimitive_subgroup(n, std::move(blocks), ambient);
  }
  throw std::invalid_argument("unknown descriptor kind '" + kind + "'");
}

// Class lists ----------------------------------------------------------------

struct ClassList {
  std::size_t n = 0;
  Ambient ambient = Ambient::AlternatingN;
  std::vector<MaximalSubgroupDescriptor> classes;
  /// True when every primitive maximal class is present (embedded data for
  /// n <= 12, or none exist for the degree).
  bool primitive_complete = false;
  std::string note;
};

/// One representative per conjugacy class of maximal subgroups (A_n itself
/// excluded for SymmetricN). Order: intransitive by ascending set size,
/// imprimitive by ascending block size, then catalog primitives.
inline ClassList maximal_classes(std::size_t n, Ambient ambient) {
  if (n < 4) throw std::invalid_argument("maximal_classes requires n >= 4");
  ClassList cl;
  cl.n = n;
  cl.ambient = ambient;
  for (std::size_t k = 1; 2 * k < n; ++k) {
    std::vector<int> S(k);
    std::iota(S.begin(), S.end(), 1);
    cl.classes.push_back(intransitive_subgroup(n, S, ambient));
  }
  for (std::size_t k = 2; k <= n / 2; ++k) {
    if (n % k) continue;
    // (S_2 wr S_4) cap A_8 lies in (S_4 wr S_2) cap A_8.
    if (ambient == Ambient::AlternatingN && n == 8 && k == 2) continue;
    cl.classes.push_back(
        imprimitive_subgroup(n, consecutive_blocks(n, k), ambient));
  }
  if (n <= 12) {
    for (const auto &e : primitive_catalog())
      if (e.degree == n && e.ambient == ambient)
        cl.classes.push_back(primitive_subgroup(e.catalog_id));
    cl.primitive_complete = true;
    cl.note = "complete (embedded catalog)";
  } else if (n % 2 == 0 && n / 2 != 11 && is_prime(n / 2) &&
             !has_primitive_maximal_2p(n / 2).first) {
    cl.primitive_complete = true;
    cl.note = "complete: n=2p with 2p-1 not a prime power has no primitive "
              "maximal subgroups";
  } else {
    cl.primitive_complete = false;
    cl.note = "primitive classes omitted";
  }
  return cl;
}

// Conjugate enumeration ------------------------------------------------------

/// All conjugates of a class representative under an ambient group, each
/// listed exactly once with a conjugator g (member = rep^g). Intransitive
/// and imprimitive conjugates are enumerated directly as sets/partitions;
/// primitive conjugates by breadth-first search keyed on a
/// conjugation-equivariant element set that generates the representative.
class ConjugateSet {
public:
  ConjugateSet(const PermGroup &ambient, const MaximalSubgroupDescriptor &rep,
               std::uint64_t cap = kDefaultEnumerationCap)
      : ambient_(ambient), rep_(rep), n_(rep.degree) {
    if (auto *t = std::get_if<Intransitive>(&rep.kind))
      init_intransitive(t->set, cap);
    else if (auto *m = std::get_if<Imprimitive>(&rep.kind))
      init_imprimitive(m->blocks, cap);
    else
      init_primitive(cap);
  }

  std::size_t size() const { return conjugators_.size(); }
  const Permutation &conjugator(std::size_t i) const { return conjugators_[i]; }
  const MaximalSubgroupDescriptor &representative() const { return rep_; }

  /// Canonical key of rep^g.
  std::string key_of(const Permutation &g) const {
    switch (rep_.kind.index()) {
    case 0: return set_key(g);
    case 1: return partition_key(g);
    default: return element_set_key(g);
    }
  }

  std::optional<std::size_t> index_of_key(const std::string &key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Index of (member i)^a.
  std::size_t act(std::size_t i, const Permutation &a) const {
    auto idx = index_of_key(key_of(conjugators_[i] * a));
    if (!idx) throw std::logic_error("conjugate image not found");
    return *idx;
  }

  /// Realized descriptor of member i.
  MaximalSubgroupDescriptor member(std::size_t i) const {
    const Permutation &g = conjugators_[i];
    switch (rep_.kind.index()) {
    case 0: {
      std::vector<int> T;
      for (int x : std::get<Intransitive>(rep_.kind).set)
        T.push_back(g[x - 1] + 1);
      return intransitive_subgroup(n_, T, rep_.ambient);
    }
    case 1: {
      std::vector<std::vector<int>> B;
      for (const auto &blk : std::get<Imprimitive>(rep_.kind).blocks) {
        std::vector<int> b;
        for (int x : blk) b.push_back(g[x - 1] + 1);
        B.push_back(std::move(b));
      }
      return imprimitive_subgroup(n_, std::move(B), rep_.ambient);
    }
    default: {
      const auto &p = std::get<Primitive>(rep_.kind);
      if (is_constructed_id(p.catalog_id)) {
        MaximalSubgroupDescriptor d = rep_;
        d.kind = Primitive{p.catalog_id, p.conjugator * g};
        d.group = rep_.group.conjugated(g);
        return d;
      }
      return primitive_subgroup(p.catalog_id, p.conjugator * g);
    }
    }
  }

private:
  std::string set_key(const Permutation &g) const {
    std::string key(n_, '0');
    for (int x : std::get<Intransitive>(rep_.kind).set) key[g[x - 1]] = '1';
    return key;
  }

  std::string partition_key(const Permutation &g) const {
    // V4 is normal in A4: all three pairings give the same subgroup.
    if (n_ == 4 && rep_.ambient == Ambient::AlternatingN) return "V4";
    std::vector<int> blk_of(n_);
    const auto &B = std::get<Imprimitive>(rep_.kind).blocks;
    for (std::size_t j = 0; j < B.size(); ++j)
      for (int x : B[j]) blk_of[g[x - 1]] = static_cast<int>(j);
    // relabel blocks by first occurrence
    std::vector<int> relabel(B.size(), -1);
    int next = 0;
    std::string key(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      int &r = relabel[blk_of[i]];
      if (r < 0) r = next++;
      key[i] = static_cast<char>(r);
    }
    return key;
  }

  std::string element_set_key(const Permutation &g) const {
    std::vector<std::string> parts;
    parts.reserve(tau_set_.size());
    for (const auto &x : tau_set_) {
      Permutation y = conjugate(x, g);
      std::string s(n_, 0);
      for (std::size_t i = 0; i < n_; ++i) s[i] = static_cast<char>(y[i]);
      parts.push_back(std::move(s));
    }
    std::sort(parts.begin(), parts.end());
    std::string key;
    key.reserve(parts.size() * n_);
    for (auto &p : parts) key += p;
    return key;
  }

  void add(std::string key, Permutation g, std::uint64_t cap) {
    if (conjugators_.size() >= cap)
      throw BudgetExceeded("conjugate enumeration exceeds cap " +
                           std::to_string(cap));
    index_.emplace(std::move(key), conjugators_.size());
    conjugators_.push_back(std::move(g));
  }

  /// An element of the ambient mapping the i-th listed source point to the
  /// i-th target point, adjusted to be even when the ambient is A_n. The
  /// adjusting transposition swaps two points of one target class.
  Permutation mapping(const std::vector<int> &src, const std::vector<int> &dst,
                      const std::vector<std::pair<int, int>> &swaps) const {
    std::vector<Point> img(n_);
    for (std::size_t i = 0; i < n_; ++i)
      img[src[i] - 1] = static_cast<Point>(dst[i] - 1);
    Permutation g = Permutation::from_images0(std::move(img));
    if (rep_.ambient == Ambient::AlternatingN && !is_even(g)) {
      for (auto [a, b] : swaps) {
        if (a == b) continue;
        Permutation id(n_);
        auto t = id.images0();
        std::swap(t[a - 1], t[b - 1]);
        return g * Permutation::from_images0(t);
      }
      throw std::logic_error("no parity-adjusting transposition");
    }
    return g;
  }

  void init_intransitive(const std::vector<int> &S, std::uint64_t cap) {
    std::size_t k = S.size();
    std::vector<int> src = S, comp_src;
    for (std::size_t x = 1; x <= n_; ++x)
      if (!std::binary_search(S.begin(), S.end(), static_cast<int>(x)))
        comp_src.push_back(static_cast<int>(x));
    src.insert(src.end(), comp_src.begin(), comp_src.end());
    std::vector<int> T(k);
    std::iota(T.begin(), T.end(), 1);
    for (;;) {
      std::vector<int> dst = T, comp;
      for (std::size_t x = 1; x <= n_; ++x)
        if (!std::binary_search(T.begin(), T.end(), static_cast<int>(x)))
          comp.push_back(static_cast<int>(x));
      dst.insert(dst.end(), comp.begin(), comp.end());
      std::vector<std::pair<int, int>> swaps;
      if (k >= 2) swaps.emplace_back(T[0], T[1]);
      if (comp.size() >= 2) swaps.emplace_back(comp[0], comp[1]);
      Permutation g = mapping(src, dst, swaps);
      std::string key = set_key(g);
      add(std::move(key), std::move(g), cap);
      // next k-subset in lexicographic order
      std::size_t i = k;
      while (i > 0 && T[i - 1] == static_cast<int>(n_ - k + i)) --i;
      if (i == 0) break;
      ++T[i - 1];
      for (std::size_t j = i; j < k; ++j) T[j] = T[j - 1] + 1;
    }
  }

  void init_imprimitive(const std::vector<std::vector<int>> &B,
                        std::uint64_t cap) {
    std::size_t k = B.front().size();
    std::vector<int> src;
    for (const auto &b : B) src.insert(src.end(), b.begin(), b.end());
    std::vector<bool> used(n_ + 1, false);
    std::vector<std::vector<int>> cur;
    // Recursive enumeration: each new block starts with the least unused
    // point, remaining points chosen in increasing order.
    std::function<void()> rec = [&]() {
      int first = -1;
      for (std::size_t x = 1; x <= n_; ++x)
        if (!used[x]) {
          first = static_cast<int>(x);
          break;
        }
      if (first < 0) {
        std::vector<int> dst;
        for (const auto &b : cur) dst.insert(dst.end(), b.begin(), b.end());
        std::vector<std::pair<int, int>> swaps{{cur[0][0], cur[0][1]}};
        Permutation g = mapping(src, dst, swaps);
        std::string key = partition_key(g);
        if (!index_.count(key)) add(std::move(key), std::move(g), cap);
        return;
      }
      std::vector<int> blk{first};
      used[first] = true;
      std::function<void(int)> choose = [&](int from) {
        if (blk.size() == k) {
          cur.push_back(blk);
          rec();
          cur.pop_back();
          return;
        }
        for (int x = from; x <= static_cast<int>(n_); ++x) {
          if (used[x]) continue;
          used[x] = true;
          blk.push_back(x);
          choose(x + 1);
          blk.pop_back();
          used[x] = false;
        }
      };
      choose(first + 1);
      used[first] = false;
    };
    rec();
  }

  void init_primitive(std::uint64_t cap) {
    const PermGroup &H = rep_.group;
    // Group elements by cycle type; pick the rarest type whose elements
    // generate H, so the set determines the conjugate.
    std::map<std::vector<std::size_t>, std::vector<Permutation>> by_type;
    H.for_each_element([&](const Permutation &x) {
      if (!x.is_identity()) by_type[cycle_type(x)].push_back(x);
    });
    std::vector<const std::vector<Permutation> *> cands;
    for (auto &[t, v] : by_type) cands.push_back(&v);
    std::stable_sort(cands.begin(), cands.end(),
                     [](auto *a, auto *b) { return a->size() < b->size(); });
    for (auto *c : cands) {
      if (PermGroup(n_, *c).order() == H.order()) {
        tau_set_ = *c;
        break;
      }
    }
    if (tau_set_.empty()) {
      for (auto *c : cands) tau_set_.insert(tau_set_.end(), c->begin(), c->end());
    }
    Permutation id(n_);
    add(element_set_key(id), id, cap);
    for (std::size_t i = 0; i < conjugators_.size(); ++i) {
      for (const auto &s : ambient_.generators()) {
        Permutation g = conjugators_[i] * s;
        std::string key = element_set_key(g);
        if (index_.count(key)) continue;
        add(std::move(key), std::move(g), cap);
      }
    }
  }

  PermGroup ambient_;
  MaximalSubgroupDescriptor rep_;
  std::size_t n_;
  std::vector<Permutation> tau_set_;
  std::vector<Permutation> conjugators_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Locates G among the maximal subgroups of the ambient: the class index and
/// the index of the matching conjugate, if G is one of them.
struct ClassMatch {
  std::size_t class_index = 0;
  std::size_t conjugate_index = 0;
  Permutation conjugator;
};

inline std::optional<ClassMatch> match_maximal_class(const ClassList &cl,
                                                     const PermGroup &G) {
  PermGroup ambient = ambient_group(cl.n, cl.ambient);
  for (std::size_t c = 0; c < cl.classes.size(); ++c) {
    const PermGroup &R = cl.classes[c].group;
    if (R.order() != G.order()) continue;
    ConjugateSet cs(ambient, cl.classes[c]);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      // G <= R^g  iff  g x g^-1 in R for every generator x of G
      Permutation ginv = cs.conjugator(i).inverse();
      bool all = true;
      for (const auto &x : G.generators())
        if (!R.contains(conjugate(x, ginv))) {
          all = false;
          break;
        }
      if (all) return ClassMatch{c, i, cs.conjugator(i)};
    }
  }
  return std::nullopt;
}

inline ConjugateSet enumerate_conjugates(const PermGroup &ambient,
                                         const MaximalSubgroupDescriptor &rep,
                                         std::uint64_t cap =
                                             kDefaultEnumerationCap) {
  return ConjugateSet(ambient, rep, cap);
}

} // namespace mindim
