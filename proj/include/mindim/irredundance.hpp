#pragma once

// Families of maximal subgroups: irredundance certificates, extension and
// maximality tests.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "intersect.hpp"

namespace mindim {

struct FamilyMember {
  PermGroup group;
  std::string label;
  std::optional<MaximalSubgroupDescriptor> descriptor;
};

/// Ordered list of pairwise distinct proper subgroups of an ambient group.
class Family {
public:
  Family(PermGroup ambient, std::vector<FamilyMember> members)
      : ambient_(std::move(ambient)), members_(std::move(members)) {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const PermGroup &M = members_[i].group;
      if (M.degree() != ambient_.degree())
        throw std::invalid_argument("family member degree mismatch");
      if (!ambient_.contains_group(M))
        throw std::invalid_argument("member " + std::to_string(i) +
                                    " is not contained in the ambient group");
      if (M.order() == ambient_.order())
        throw std::invalid_argument("member " + std::to_string(i) +
                                    " is not a proper subgroup");
      for (std::size_t j = 0; j < i; ++j)
        if (members_[j].group.same_group(M))
          throw std::invalid_argument("members " + std::to_string(j) +
                                      " and " + std::to_string(i) +
                                      " are the same subgroup");
      if (members_[i].label.empty() && members_[i].descriptor)
        members_[i].label = members_[i].descriptor->label();
    }
  }

  static Family
  of_descriptors(PermGroup ambient,
                 const std::vector<MaximalSubgroupDescriptor> &ds) {
    std::vector<FamilyMember> ms;
    for (const auto &d : ds) ms.push_back({d.group, d.label(), d});
    return Family(std::move(ambient), std::move(ms));
  }

  const PermGroup &ambient() const { return ambient_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const PermGroup &group(std::size_t i) const { return members_[i].group; }
  const FamilyMember &member(std::size_t i) const { return members_[i]; }
  const std::vector<FamilyMember> &members() const { return members_; }

  Family with(FamilyMember m) const {
    auto ms = members_;
    ms.push_back(std::move(m));
    return Family(ambient_, std::move(ms));
  }

  Family without(std::size_t i) const {
    auto ms = members_;
    ms.erase(ms.begin() + static_cast<std::ptrdiff_t>(i));
    return Family(ambient_, std::move(ms));
  }

private:
  PermGroup ambient_;
  std::vector<FamilyMember> members_;
};

inline PermGroup intersect_family(const Family &F,
                                  const IntersectOptions &opt = {}) {
  if (F.empty()) throw std::invalid_argument("empty family");
  PermGroup K = F.group(0);
  for (std::size_t i = 1; i < F.size() && !K.is_trivial(); ++i)
    K = intersect(K, F.group(i), opt);
  return K;
}

/// w_i lies in every member except member i, and not in member i.
struct IrredundanceCertificate {
  std::vector<Permutation> witnesses;
};

namespace detail {

/// Intersections of all members but one, via prefix and suffix folds. The
/// drop-one intersection of a singleton family is the ambient group.
inline std::vector<PermGroup> drop_one_intersections(const Family &F,
                                                     const IntersectOptions &opt) {
  std::size_t m = F.size();
  std::vector<PermGroup> pre(m + 1, F.ambient()), suf(m + 1, F.ambient());
  for (std::size_t i = 0; i < m; ++i)
    pre[i + 1] = i == 0 ? F.group(0) : intersect(pre[i], F.group(i), opt);
  for (std::size_t i = m; i-- > 0;)
    suf[i] = i + 1 == m ? F.group(i) : intersect(suf[i + 1], F.group(i), opt);
  std::vector<PermGroup> out;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == 0) out.push_back(suf[1]);
    else if (i + 1 == m) out.push_back(pre[i]);
    else out.push_back(intersect(pre[i], suf[i + 1], opt));
  }
  return out;
}

/// A generator of D outside M, if any. D is contained in M iff none exists.
inline std::optional<Permutation> generator_outside(const PermGroup &D,
                                                    const PermGroup &M) {
  for (const auto &g : D.generators())
    if (!M.contains(g)) return g;
  return std::nullopt;
}

} // namespace detail

inline std::optional<IrredundanceCertificate>
irredundance_certificate(const Family &F, const IntersectOptions &opt = {}) {
  if (F.empty()) throw std::invalid_argument("empty family");
  auto drops = detail::drop_one_intersections(F, opt);
  IrredundanceCertificate cert;
  for (std::size_t i = 0; i < F.size(); ++i) {
    auto w = detail::generator_outside(drops[i], F.group(i));
    if (!w) return std::nullopt;
    cert.witnesses.push_back(std::move(*w));
  }
  return cert;
}

inline bool is_irredundant(const Family &F, const IntersectOptions &opt = {}) {
  return irredundance_certificate(F, opt).has_value();
}

struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Re-checks a certificate with membership tests only.
inline CertificateCheck validate_certificate(const Family &F,
                                             const IrredundanceCertificate &c) {
  CertificateCheck r;
  auto fail = [&](std::string s) {
    r.ok = false;
    r.failures.push_back(std::move(s));
  };
  if (c.witnesses.size() != F.size()) {
    fail("certificate has " + std::to_string(c.witnesses.size()) +
         " witnesses for a family of size " + std::to_string(F.size()));
    return r;
  }
  for (std::size_t i = 0; i < F.size(); ++i) {
    const Permutation &w = c.witnesses[i];
    if (w.degree() != F.ambient().degree()) {
      fail("witness " + std::to_string(i) + " has wrong degree");
      continue;
    }
    if (!F.ambient().contains(w))
      fail("witness " + std::to_string(i) + " is not in the ambient group");
    for (std::size_t j = 0; j < F.size(); ++j) {
      bool in = F.group(j).contains(w);
      if (j == i && in)
        fail("witness " + std::to_string(i) + " lies in member " +
             std::to_string(j));
      if (j != i && !in)
        fail("witness " + std::to_string(i) + " is not in member " +
             std::to_string(j));
    }
  }
  return r;
}

inline bool is_extension_irredundant(const Family &F, const PermGroup &C,
                                     const IntersectOptions &opt = {}) {
  for (const auto &m : F.members())
    if (m.group.same_group(C))
      throw std::invalid_argument("C is already a member of the family");
  return is_irredundant(F.with({C, "C", std::nullopt}), opt);
}

// Maximality -----------------------------------------------------------------

/// Extension test against precomputed data: F + {C} is irredundant iff the
/// full intersection I is not inside C and, for every member j, the drop-j
/// intersection meet C is not inside member j.
class ExtensionTester {
public:
  ExtensionTester(const Family &F, IntersectOptions opt = {})
      : F_(F), opt_(opt), I_(intersect_family(F, opt)),
        drops_(detail::drop_one_intersections(F, opt)) {}

  const PermGroup &intersection() const { return I_; }

  /// Witnesses for the new family, in member order with C last, or nullopt.
  std::optional<IrredundanceCertificate> extend(const PermGroup &C) const {
    auto wc = detail::generator_outside(I_, C);
    if (!wc) return std::nullopt;
    IrredundanceCertificate cert;
    for (std::size_t j = 0; j < F_.size(); ++j) {
      if (!detail::generator_outside(drops_[j], F_.group(j))) return std::nullopt;
      PermGroup D = intersect(drops_[j], C, opt_);
      auto w = detail::generator_outside(D, F_.group(j));
      if (!w) return std::nullopt;
      cert.witnesses.push_back(std::move(*w));
    }
    cert.witnesses.push_back(std::move(*wc));
    return cert;
  }

private:
  const Family &F_;
  IntersectOptions opt_;
  PermGroup I_;
  std::vector<PermGroup> drops_;
};

struct ClassScan {
  std::size_t class_index = 0;
  std::string label;
  std::uint64_t conjugates = 0;
  std::uint64_t scanned = 0;
  bool completed = false;
};

struct MaximalityResult {
  bool maximal = false;
  bool trivial_intersection = false;
  /// An extender when not maximal.
  std::optional<std::size_t> extender_class;
  std::optional<Permutation> extender_conjugator;
  std::optional<IrredundanceCertificate> extension_certificate;
  std::vector<ClassScan> log;
};

/// Scans every maximal subgroup of the ambient (all conjugates of every
/// class) for an extension of F. Requires a complete class list.
inline MaximalityResult is_maximal_irredundant(const Family &F,
                                               Ambient ambient,
                                               const IntersectOptions &opt = {},
                                               std::uint64_t conjugate_cap =
                                                   kDefaultEnumerationCap) {
  MaximalityResult r;
  if (intersect_family(F, opt).is_trivial()) {
    r.maximal = true;
    r.trivial_intersection = true;
    return r;
  }
  std::size_t n = F.ambient().degree();
  ClassList cl = maximal_classes(n, ambient);
  if (!cl.primitive_complete)
    throw std::invalid_argument("maximal subgroup classes of degree " +
                                std::to_string(n) +
                                " are not fully available: " + cl.note);
  ExtensionTester tester(F, opt);
  for (std::size_t c = 0; c < cl.classes.size(); ++c) {
    ConjugateSet cs(F.ambient(), cl.classes[c], conjugate_cap);
    ClassScan scan{c, cl.classes[c].label(), cs.size(), 0, false};
    for (std::size_t i = 0; i < cs.size(); ++i) {
      PermGroup C = cl.classes[c].group.conjugated(cs.conjugator(i));
      ++scan.scanned;
      bool member = false;
      for (const auto &m : F.members())
        if (m.group.order() == C.order() && m.group.same_group(C)) member = true;
      if (member) continue;
      if (auto cert = tester.extend(C)) {
        r.log.push_back(scan);
        r.maximal = false;
        r.extender_class = c;
        r.extender_conjugator = cs.conjugator(i);
        r.extension_certificate = std::move(cert);
        return r;
      }
    }
    scan.completed = true;
    r.log.push_back(scan);
  }
  r.maximal = true;
  return r;
}

} // namespace mindim
