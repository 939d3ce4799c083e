#pragma once

// Certificate files: JSON records of families, brute-force results and
// six-case constructions, and a verifier that re-checks every membership
// claim from the stored permutations.

#include <algorithm>

#include "bruteforce.hpp"
#include "witness.hpp"

#ifndef MINDIM_VERSION
#define MINDIM_VERSION "0.0.0"
#endif

namespace mindim {

inline const char *toolkit_version() { return MINDIM_VERSION; }

// Encoding ---------------------------------------------------------------------

/// Groups are stored by generators; `descriptor` is included when the text
/// form can be parsed back (everything except constructed primitives).
inline json subgroup_to_json(const PermGroup &G, const std::string &label,
                             const std::optional<MaximalSubgroupDescriptor> &d) {
  std::vector<Permutation> gens;
  for (const auto &g : G.generators())
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  json j = {{"label", label},
            {"order", bigint_to_json(G.order())},
            {"generators", perms_to_json(gens)}};
  if (d) {
    bool parseable = true;
    if (auto *p = std::get_if<Primitive>(&d->kind))
      parseable = !is_constructed_id(p->catalog_id);
    if (parseable) j["descriptor"] = d->label();
  }
  return j;
}

inline json descriptor_to_json(const MaximalSubgroupDescriptor &d) {
  json j = subgroup_to_json(d.group, d.label(), d);
  j["ambient"] = ambient_name(d.ambient);
  return j;
}

inline json certificate_to_json(const IrredundanceCertificate &c) {
  return perms_to_json(c.witnesses);
}

inline json family_to_json(const Family &F) {
  json a = json::array();
  for (const auto &m : F.members())
    a.push_back(subgroup_to_json(m.group, m.label, m.descriptor));
  return a;
}

inline json witness_to_json(const WitnessFamily &w) {
  return {{"schema_version", kSchemaVersion},
          {"kind", "witness"},
          {"toolkit_version", toolkit_version()},
          {"n", w.n},
          {"ambient", "an"},
          {"provenance", w.provenance},
          {"maximality", w.maximality},
          {"trivial_intersection", w.trivial_intersection},
          {"members", family_to_json(w.family())},
          {"certificate", certificate_to_json(w.certificate)}};
}

inline json mindim_result_to_json(const MinDimResult &r) {
  json classes = json::array();
  for (std::size_t c = 0; c < r.class_labels.size(); ++c)
    classes.push_back({{"label", r.class_labels[c]}, {"conjugates", r.class_sizes[c]}});
  json pairs = json::array();
  for (const auto &p : r.pairs) pairs.push_back(pair_record_to_json(p));
  json fam = json::array();
  for (const auto &m : r.family) fam.push_back(detail::class_member_to_json(m));
  json j = {{"schema_version", kSchemaVersion},
            {"kind", "bruteforce"},
            {"toolkit_version", toolkit_version()},
            {"n", r.n},
            {"ambient", "an"},
            {"value", r.value},
            {"complete", r.complete},
            {"note", r.note},
            {"classes", classes},
            {"tasks_total", r.tasks_total},
            {"tasks_resumed", r.tasks_resumed},
            {"pairs", pairs},
            {"family", fam}};
  if (r.family_certificate) j["certificate"] = certificate_to_json(*r.family_certificate);
  return j;
}

inline json construction_to_json(const ConstructionCase &cc) {
  json pts = json::array();
  for (const auto &[name, x] : cc.points) pts.push_back({{"name", name}, {"point", x}});
  json bullets = json::array();
  for (const auto &b : cc.bullets) {
    json e = {{"printed", b.printed},
              {"role", b.role},
              {"witness", perm_to_json(b.w)},
              {"ok", b.ok}};
    if (!b.failure.empty()) e["failure"] = b.failure;
    bullets.push_back(e);
  }
  json j = {{"schema_version", kSchemaVersion},
            {"kind", "third_subgroup"},
            {"toolkit_version", toolkit_version()},
            {"n", cc.n},
            {"case", cc.case_number},
            {"tag", case_tag_name(cc.tag)},
            {"branch", cc.branch},
            {"branches", branches_of(cc)},
            {"swapped", cc.swapped},
            {"points", pts},
            {"A", descriptor_to_json(cc.A)},
            {"B", descriptor_to_json(cc.B)},
            {"C", descriptor_to_json(cc.C)},
            {"bullets", bullets},
            {"certificate", certificate_to_json(cc.certificate)},
            {"valid", cc.valid}};
  if (cc.chain) {
    j["chain"] = {{"k", cc.chain->k()}, {"a", cc.chain->a}, {"b", cc.chain->b}};
    j["gamma_formula"] = cc.gamma_formula;
  }
  return j;
}

// Verification -------------------------------------------------------------------

struct VerifyReport {
  bool ok = true;
  std::uint64_t checks = 0;
  std::vector<std::string> failures;
  /// Claims the verifier does not re-establish (e.g. exhaustive scans).
  std::vector<std::string> notes;

  void expect(bool cond, const std::string &what) {
    ++checks;
    if (!cond) {
      ok = false;
      failures.push_back(what);
    }
  }
};

namespace detail {

/// Rebuilds a stored subgroup and checks its stated order, its descriptor
/// (when present) and containment in the ambient group.
inline PermGroup load_subgroup(const json &j, std::size_t n, const PermGroup &ambient,
                               Ambient amb, const std::string &where,
                               VerifyReport &rep) {
  PermGroup G(n, perms_from_json(j.at("generators")));
  rep.expect(G.order().str() == j.at("order").get<std::string>(),
             where + ": order " + G.order().str() + " differs from the stated " +
                 j.at("order").get<std::string>());
  rep.expect(ambient.contains_group(G), where + ": not contained in the ambient group");
  if (j.contains("descriptor")) {
    try {
      auto d = parse_descriptor(j.at("descriptor").get<std::string>(), n, amb);
      rep.expect(d.group.same_group(G),
                 where + ": generators do not generate " +
                     j.at("descriptor").get<std::string>());
    } catch (const std::exception &e) {
      rep.expect(false, where + ": bad descriptor: " + e.what());
    }
  }
  return G;
}

inline void check_certificate(const Family &F, const json &cert, const std::string &where,
                              VerifyReport &rep) {
  IrredundanceCertificate c{perms_from_json(cert)};
  auto chk = validate_certificate(F, c);
  ++rep.checks;
  for (const auto &f : chk.failures) rep.expect(false, where + ": " + f);
}

inline void verify_witness(const json &j, VerifyReport &rep) {
  auto n = j.at("n").get<std::size_t>();
  PermGroup A = alternating_group(n);
  std::vector<FamilyMember> ms;
  std::size_t i = 0;
  for (const auto &m : j.at("members"))
    ms.push_back({load_subgroup(m, n, A, Ambient::AlternatingN,
                                "member " + std::to_string(i++), rep),
                  m.at("label").get<std::string>(), std::nullopt});
  Family F(A, std::move(ms));
  check_certificate(F, j.at("certificate"), "certificate", rep);
  if (j.value("trivial_intersection", false))
    rep.expect(intersect_family(F).is_trivial(), "intersection is not trivial");
  else
    rep.notes.push_back("maximality not re-established (intersection not trivial)");
  rep.expect(F.size() == static_cast<std::size_t>(mindim_theorem(n).value),
             "family size " + std::to_string(F.size()) +
                 " differs from the classified value");
}

inline void verify_bruteforce(const json &j, VerifyReport &rep) {
  auto n = j.at("n").get<std::size_t>();
  PermGroup An = alternating_group(n);
  ClassList cl = maximal_classes(n, Ambient::AlternatingN);
  const auto &classes = j.at("classes");
  rep.expect(classes.size() == cl.classes.size(), "class count differs");
  if (classes.size() != cl.classes.size()) return;
  for (std::size_t c = 0; c < cl.classes.size(); ++c)
    rep.expect(classes[c].at("label").get<std::string>() == cl.classes[c].label(),
               "class " + std::to_string(c) + " label differs");
  auto member = [&](const json &m) {
    auto c = m.at("class").get<std::size_t>();
    if (c >= cl.classes.size()) throw std::invalid_argument("class index out of range");
    return cl.classes[c].group.conjugated(perm_from_json(m.at("conjugator")));
  };
  std::uint64_t unchecked = 0;
  std::size_t k = 0;
  for (const auto &p : j.at("pairs")) {
    std::string where = "pair " + std::to_string(k++);
    auto ac = p.at("a_class").get<std::size_t>();
    if (ac >= cl.classes.size()) {
      rep.expect(false, where + ": class index out of range");
      continue;
    }
    const PermGroup &A = cl.classes[ac].group;
    PermGroup B = member(p.at("b"));
    rep.expect(!A.same_group(B), where + ": A = B");
    auto status = parse_pair_status(p.at("status").get<std::string>());
    if (status == PairStatus::Trivial) {
      rep.expect(intersect(A, B).is_trivial(), where + ": intersection is not trivial");
    } else if (status == PairStatus::Extended) {
      PermGroup C = member(p.at("c"));
      auto w = perms_from_json(p.at("witnesses"));
      if (w.size() != 3) {
        rep.expect(false, where + ": expected three witnesses");
        continue;
      }
      rep.expect(A.contains(w[0]) && B.contains(w[0]) && !C.contains(w[0]),
                 where + ": w1 not in (A cap B) - C");
      rep.expect(A.contains(w[1]) && C.contains(w[1]) && !B.contains(w[1]),
                 where + ": w2 not in (A cap C) - B");
      rep.expect(B.contains(w[2]) && C.contains(w[2]) && !A.contains(w[2]),
                 where + ": w3 not in (B cap C) - A");
    } else {
      ++unchecked;
    }
  }
  if (unchecked)
    rep.notes.push_back(std::to_string(unchecked) +
                        " not-extendable pair(s): the full scan is not repeated");
  if (!j.at("family").empty()) {
    rep.expect(j.at("family").size() == static_cast<std::size_t>(j.at("value").get<int>()),
               "family size differs from the stated value");
    std::vector<FamilyMember> ms;
    for (const auto &m : j.at("family")) ms.push_back({member(m), "", std::nullopt});
    Family F(An, std::move(ms));
    check_certificate(F, j.at("certificate"), "family certificate", rep);
    if (j.at("value").get<int>() == 3)
      rep.expect(intersect_family(F).is_trivial(),
                 "size-3 family intersection is not trivial");
  }
}

inline void verify_construction(const json &j, VerifyReport &rep) {
  auto n = j.at("n").get<std::size_t>();
  PermGroup Sn = symmetric_group(n), An = alternating_group(n);
  PermGroup A = load_subgroup(j.at("A"), n, Sn, Ambient::SymmetricN, "A", rep);
  PermGroup B = load_subgroup(j.at("B"), n, Sn, Ambient::SymmetricN, "B", rep);
  PermGroup C = load_subgroup(j.at("C"), n, Sn, Ambient::SymmetricN, "C", rep);
  bool swapped = j.at("swapped").get<bool>();
  auto group_for = [&](char c) -> const PermGroup & {
    if (c == 'C') return C;
    return (c == 'A') != swapped ? A : B;
  };
  for (const auto &b : j.at("bullets")) {
    auto role = b.at("role").get<std::string>();
    auto w = perm_from_json(b.at("witness"));
    std::string where = "bullet " + b.at("printed").get<std::string>() + " (" + role + ")";
    if (role.size() != 4 || role[2] != '-') {
      rep.expect(false, where + ": malformed role");
      continue;
    }
    rep.expect(is_even(w), where + ": odd permutation");
    rep.expect(group_for(role[0]).contains(w), where + ": not in " + role.substr(0, 1));
    rep.expect(group_for(role[1]).contains(w), where + ": not in " + role.substr(1, 1));
    rep.expect(!group_for(role[3]).contains(w), where + ": lies in " + role.substr(3, 1));
  }
  Family F(An, {{intersect_with_An(A), "A", std::nullopt},
                {intersect_with_An(B), "B", std::nullopt},
                {intersect_with_An(C), "C", std::nullopt}});
  check_certificate(F, j.at("certificate"), "certificate", rep);
}

} // namespace detail

/// Re-checks a certificate document. Malformed input is reported as a
/// failure, not thrown.
inline VerifyReport verify_certificate_json(const json &j) {
  VerifyReport rep;
  try {
    rep.expect(j.at("schema_version").get<int>() == kSchemaVersion,
               "unsupported schema_version");
    auto kind = j.at("kind").get<std::string>();
    if (kind == "witness") detail::verify_witness(j, rep);
    else if (kind == "bruteforce") detail::verify_bruteforce(j, rep);
    else if (kind == "third_subgroup") detail::verify_construction(j, rep);
    else rep.expect(false, "unknown certificate kind '" + kind + "'");
  } catch (const std::exception &e) {
    rep.expect(false, std::string("malformed certificate: ") + e.what());
  }
  return rep;
}

} // namespace mindim
