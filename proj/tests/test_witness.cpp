#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mindim/witness.hpp"

using namespace mindim;

namespace {

BigInt fact(std::size_t k) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

bool matches_catalog(const MaximalSubgroupDescriptor &d) {
  auto cl = maximal_classes(d.degree, Ambient::AlternatingN);
  return match_maximal_class(cl, d.group).has_value();
}

// Three witnesses checked against the printed bullets with plain contains
// calls on the S_n forms and parity.
void expect_bullets(const ConstructionCase &cc) {
  ASSERT_EQ(cc.bullets.size(), 3u);
  const PermGroup *Ain = &cc.A.group, *Bin = &cc.B.group;
  // Roles are named after the proof's orientation.
  const PermGroup *PA = cc.swapped ? Bin : Ain, *PB = cc.swapped ? Ain : Bin;
  std::set<std::string> roles;
  for (const auto &b : cc.bullets) {
    roles.insert(b.role);
    EXPECT_TRUE(is_even(b.w)) << b.printed;
    bool a = PA->contains(b.w), bb = PB->contains(b.w), c = cc.C.group.contains(b.w);
    if (b.role == "AB-C") EXPECT_TRUE(a && bb && !c) << cc.branch << " " << b.printed;
    if (b.role == "AC-B") EXPECT_TRUE(a && c && !bb) << cc.branch << " " << b.printed;
    if (b.role == "BC-A") EXPECT_TRUE(bb && c && !a) << cc.branch << " " << b.printed;
  }
  EXPECT_EQ(roles, (std::set<std::string>{"AB-C", "AC-B", "BC-A"}));
  EXPECT_TRUE(validate_certificate(cc.family(), cc.certificate).ok);
  EXPECT_TRUE(cc.valid);
}

enum class Kind { WrP, Wr2, Intrans };

MaximalSubgroupDescriptor random_input(Kind k, std::size_t n, std::mt19937_64 &rng) {
  std::vector<int> pts(n);
  std::iota(pts.begin(), pts.end(), 1);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::size_t p = n / 2;
  if (k == Kind::Intrans) {
    std::size_t s = 1 + rng() % (p - 1);
    return intransitive_subgroup(n, std::vector<int>(pts.begin(), pts.begin() + s),
                                 Ambient::SymmetricN);
  }
  std::size_t bs = k == Kind::WrP ? p : 2;
  std::vector<std::vector<int>> blocks;
  for (std::size_t i = 0; i < n; i += bs)
    blocks.emplace_back(pts.begin() + i, pts.begin() + i + bs);
  return imprimitive_subgroup(n, blocks, Ambient::SymmetricN);
}

} // namespace

TEST(Dihedral, RegularActionAndBlocks) {
  for (std::size_t n : {6u, 8u, 10u, 14u}) {
    auto D = dihedral_right_regular(n);
    EXPECT_EQ(D.order(), n);
    for (int j : {0, 1}) {
      auto bl = dihedral_reflection_blocks(n, j);
      EXPECT_EQ(bl.size(), n / 2);
      std::set<int> seen;
      for (const auto &b : bl) seen.insert(b.begin(), b.end());
      EXPECT_EQ(seen.size(), n);
    }
  }
  EXPECT_THROW(dihedral_triple(7), std::invalid_argument);
  EXPECT_THROW(dihedral_triple(4), std::invalid_argument);
}

TEST(DihedralProperty, TrivialIntersectionEvenDegrees) {
  for (std::size_t n = 6; n <= 20; n += 2) {
    auto w = dihedral_triple(n);
    ASSERT_EQ(w.descriptors.size(), 3u);
    EXPECT_TRUE(w.trivial_intersection) << n;
    EXPECT_TRUE(intersect_family(w.family()).is_trivial()) << n;
    EXPECT_TRUE(validate_certificate(w.family(), w.certificate).ok) << n;
  }
}

TEST(Dihedral, MembersMatchCatalog) {
  for (std::size_t n : {6u, 10u, 12u}) {
    auto w = dihedral_triple(n);
    for (const auto &d : w.descriptors) EXPECT_TRUE(matches_catalog(d)) << n << d.label();
    EXPECT_TRUE(is_maximal_irredundant(w.family(), Ambient::AlternatingN).maximal) << n;
  }
  // At n = 8 the block-size-2 members are not maximal in A_8.
  auto w8 = dihedral_triple(8);
  EXPECT_FALSE(matches_catalog(w8.descriptors[0]));
  EXPECT_NE(w8.maximality.find("not maximal"), std::string::npos);
}

TEST(Dihedral, N14FirstMemberOrder) {
  auto w = dihedral_triple(14);
  BigInt o = BigInt(128) * fact(7) / 2;
  EXPECT_EQ(w.descriptors[0].group.order(), o);
}

TEST(Exceptional, Seven) {
  auto w = exceptional_witness(7);
  EXPECT_TRUE(w.trivial_intersection);
  EXPECT_EQ(w.descriptors[1].group.order(), 72); // {1,2,5}: 3! 4! / 2
  EXPECT_TRUE(is_maximal_irredundant(w.family(), Ambient::AlternatingN).maximal);
}

TEST(Exceptional, ElevenM11Triple) {
  auto w = exceptional_witness(11);
  ASSERT_EQ(w.descriptors.size(), 3u);
  EXPECT_TRUE(w.trivial_intersection);
  for (const auto &d : w.descriptors) EXPECT_EQ(d.group.order(), 7920);
  auto F = w.family();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < i; ++j)
      EXPECT_FALSE(intersect(F.group(i), F.group(j)).is_trivial());
  EXPECT_TRUE(validate_certificate(F, w.certificate).ok);
  EXPECT_THROW(exceptional_witness(9), std::invalid_argument);
}

TEST(Exceptional, EightBySearch) {
  auto w = triple_search_8();
  EXPECT_TRUE(w.trivial_intersection);
  EXPECT_TRUE(is_maximal_irredundant(w.family(), Ambient::AlternatingN).maximal);
}

TEST(Size2, SmallDegrees) {
  for (std::size_t n : {5u, 9u, 14u}) {
    auto r = size2_witness(n);
    ASSERT_TRUE(r.witness) << n << " " << r.explanation;
    EXPECT_EQ(r.witness->descriptors.size(), 2u);
    EXPECT_TRUE(r.witness->trivial_intersection);
    EXPECT_TRUE(validate_certificate(r.witness->family(), r.witness->certificate).ok);
  }
  auto r5 = size2_witness(5);
  EXPECT_EQ(r5.witness->descriptors[0].label(), "intransitive:{1,2}");
  EXPECT_EQ(r5.witness->descriptors[1].label(), "intransitive:{1,3}");
  EXPECT_THROW(size2_witness(6), std::invalid_argument);
}

TEST(Size2, MaximalForCatalogDegrees) {
  for (std::size_t n : {5u, 9u, 10u}) {
    auto r = size2_witness(n);
    ASSERT_TRUE(r.witness);
    EXPECT_TRUE(is_maximal_irredundant(r.witness->family(), Ambient::AlternatingN).maximal);
  }
}

TEST(ConjugateSearch, PointStabilizerHasNone) {
  for (std::size_t n : {5u, 7u}) {
    auto H = point_stabilizer(n, 1, Ambient::AlternatingN);
    auto r = find_trivial_intersection_conjugate(alternating_group(n), H);
    EXPECT_FALSE(r.conjugator);
    EXPECT_TRUE(r.exhaustive_completed);
    EXPECT_EQ(r.conjugates_checked, n);
  }
}

TEST(ConjugateSearch, ASL23InA9) {
  auto H = primitive_subgroup("A9.ASL2_3");
  auto r = find_trivial_intersection_conjugate(alternating_group(9), H);
  ASSERT_TRUE(r.conjugator);
  EXPECT_TRUE(intersect(H.group, H.group.conjugated(*r.conjugator)).is_trivial());
}

TEST(Gamma, SmallChains) {
  // A blocks {1,2},{3,4},...; B blocks {1,3},{2,5},{4,6}: chain k = 2 closes
  // at a3 = b3.
  std::size_t n = 6;
  std::vector<std::vector<int>> A{{1, 2}, {3, 4}, {5, 6}}, B{{1, 3}, {2, 4}, {5, 6}};
  auto pa = detail::partner_map(n, A), pb = detail::partner_map(n, B);
  auto c = build_block_chain(pa, pb, 1);
  validate_block_chain(c, pa, pb);
  ASSERT_EQ(c.k(), 2u);
  auto [g, f] = case4_gamma_formula(c, n);
  EXPECT_EQ(f, "k=2");
  EXPECT_EQ(g, from_cycles(n, {{c.a_(1), c.a_(3)}, {c.a_(2), c.b_(2)}}));

  std::vector<std::vector<int>> B3{{1, 3}, {2, 5}, {4, 6}};
  pb = detail::partner_map(n, B3);
  auto c3 = build_block_chain(pa, pb, 1);
  ASSERT_EQ(c3.k(), 3u);
  auto [g3, f3] = case4_gamma_formula(c3, n);
  EXPECT_EQ(f3, "k=3");
  EXPECT_EQ(g3, from_cycles(n, {{c3.a_(1), c3.a_(3), c3.b_(3)},
                                {c3.a_(2), c3.b_(2), c3.a_(4)}}));
}

// gamma preserves both block systems, moves a1 and is a product of two
// k-cycles, for random pairs of perfect matchings.
TEST(GammaProperty, RandomMatchings) {
  std::mt19937_64 rng(51);
  std::set<std::string> formulas;
  for (int t = 0; t < 400; ++t) {
    std::size_t n = 2 * (3 + rng() % 10);
    auto A = random_input(Kind::Wr2, n, rng), B = random_input(Kind::Wr2, n, rng);
    auto pa = detail::partner_map(n, std::get<Imprimitive>(A.kind).blocks);
    auto pb = detail::partner_map(n, std::get<Imprimitive>(B.kind).blocks);
    int a1 = 0;
    for (std::size_t u = 1; u <= n && !a1; ++u)
      if (pa[u] != pb[u]) a1 = static_cast<int>(u);
    if (!a1) continue;
    auto c = build_block_chain(pa, pb, a1);
    validate_block_chain(c, pa, pb);
    auto [g, f] = case4_gamma_formula(c, n);
    formulas.insert(f);
    EXPECT_TRUE(A.group.contains(g) && B.group.contains(g));
    EXPECT_NE(g.image(a1), a1);
    auto ct = cycle_type(g);
    std::size_t k = c.k();
    EXPECT_EQ(std::count(ct.begin(), ct.end(), k), k == 1 ? 0 : 2) << f;
    EXPECT_EQ(std::count_if(ct.begin(), ct.end(), [](std::size_t x) { return x > 1; }), 2);
    EXPECT_TRUE(is_even(g));
  }
  EXPECT_EQ(formulas, (std::set<std::string>{"k=2", "k=3", "odd", "even"}));
  EXPECT_THROW(case4_gamma(BlockChain{{1, 2}, {1, 2}}, 4), std::invalid_argument);
}

TEST(ThirdSubgroup, CaseOneExample) {
  auto A = imprimitive_subgroup(14, {{1, 2, 3, 4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14}},
                                Ambient::SymmetricN);
  auto B = imprimitive_subgroup(14, {{4, 5, 6, 7, 8, 9, 10}, {1, 2, 3, 11, 12, 13, 14}},
                                Ambient::SymmetricN);
  auto cc = third_subgroup_2p(A, B, 14);
  EXPECT_EQ(cc.case_number, 1);
  EXPECT_TRUE(std::holds_alternative<Intransitive>(cc.C.kind));
  EXPECT_EQ(std::get<Intransitive>(cc.C.kind).set.size(), 3u);
  expect_bullets(cc);
}

TEST(ThirdSubgroup, CaseThreeOnePointPerBlock) {
  auto A = imprimitive_subgroup(14, {{1, 2, 3, 4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14}},
                                Ambient::SymmetricN);
  std::vector<std::vector<int>> bl;
  for (int i = 1; i <= 7; ++i) bl.push_back({i, i + 7});
  auto B = imprimitive_subgroup(14, bl, Ambient::SymmetricN);
  auto cc = third_subgroup_2p(A, B, 14);
  EXPECT_EQ(cc.branch, "3a");
  EXPECT_EQ(cc.C.label(), "intransitive:{1,2,8}");
  auto rot = from_cycles(14, {{1, 2, 3, 4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14}});
  bool found = false;
  for (const auto &b : cc.bullets) found |= b.w == rot && b.role == "AB-C";
  EXPECT_TRUE(found);
  expect_bullets(cc);
  // Same inputs the other way round.
  auto cs = third_subgroup_2p(B, A, 14);
  EXPECT_TRUE(cs.swapped);
  expect_bullets(cs);
}

TEST(ThirdSubgroup, CaseSixContainment) {
  auto A = intransitive_subgroup(14, {1, 2, 3}, Ambient::SymmetricN);
  auto B = intransitive_subgroup(14, {1, 2, 3, 4, 5}, Ambient::SymmetricN);
  auto cc = third_subgroup_2p(A, B, 14);
  EXPECT_EQ(cc.branch, "6a");
  std::vector<std::string> printed;
  for (const auto &b : cc.bullets) printed.push_back(b.printed);
  EXPECT_EQ(printed, (std::vector<std::string>{"(axy)", "(ax)(bz)", "(ax)(by)"}));
  expect_bullets(cc);
}

TEST(ThirdSubgroup, RejectsBadInputs) {
  auto A = intransitive_subgroup(14, {1, 2}, Ambient::SymmetricN);
  EXPECT_THROW(third_subgroup_2p(A, A, 14), std::invalid_argument);
  // Same subgroup given by the complementary side.
  std::vector<int> rest;
  for (int i = 3; i <= 14; ++i) rest.push_back(i);
  EXPECT_THROW(third_subgroup_2p(A, intransitive_subgroup(14, rest, Ambient::SymmetricN), 14),
               std::invalid_argument);
  auto P = constructed_primitive("PGL2_13", pgl2_projective(13), Ambient::SymmetricN);
  EXPECT_THROW(third_subgroup_2p(A, P, 14), std::invalid_argument);
  auto A10 = intransitive_subgroup(10, {1, 2}, Ambient::SymmetricN);
  auto B10 = intransitive_subgroup(10, {1, 3}, Ambient::SymmetricN);
  EXPECT_THROW(third_subgroup_2p(A10, B10, 10), std::invalid_argument);
}

// Every ordered pair of kinds, 50 seeded random conjugate pairs each; all
// certificates validate and every branch id is reached.
TEST(ThirdSubgroupProperty, N14AllKindsAndBranches) {
  std::mt19937_64 rng(14);
  std::set<std::string> hit;
  const Kind kinds[] = {Kind::WrP, Kind::Wr2, Kind::Intrans};
  for (Kind ka : kinds)
    for (Kind kb : kinds)
      for (int t = 0; t < 50; ++t) {
        auto A = random_input(ka, 14, rng), B = random_input(kb, 14, rng);
        if (A.group.same_group(B.group)) continue;
        auto cc = third_subgroup_2p(A, B, 14);
        expect_bullets(cc);
        for (const auto &b : branches_of(cc)) hit.insert(b);
      }
  // Targeted inputs for the rarer branches.
  auto W = [](std::vector<std::vector<int>> b) {
    return imprimitive_subgroup(14, b, Ambient::SymmetricN);
  };
  auto I = [](std::vector<int> s) { return intransitive_subgroup(14, s, Ambient::SymmetricN); };
  std::vector<std::vector<int>> half{{1, 2, 3, 4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14}};
  std::vector<std::pair<MaximalSubgroupDescriptor, MaximalSubgroupDescriptor>> targeted{
      {W(half), I({1, 2})},
      {W(half), I({1, 8})},
      {I({1, 2, 3}), I({1, 2, 3, 4, 5})},
      {I({1, 2, 3}), I({3, 4, 5})},
  };
  for (auto &[a, b] : targeted) {
    auto cc = third_subgroup_2p(a, b, 14);
    expect_bullets(cc);
    for (const auto &x : branches_of(cc)) hit.insert(x);
  }
  std::set<std::string> all;
  for (const auto &b : third_subgroup_branches()) all.insert(b);
  for (const auto &b : all) EXPECT_TRUE(hit.count(b)) << "branch not reached: " << b;
}

TEST(ThirdSubgroupProperty, OtherDegrees) {
  std::mt19937_64 rng(22);
  const Kind kinds[] = {Kind::WrP, Kind::Wr2, Kind::Intrans};
  for (std::size_t n : {22u, 26u})
    for (int t = 0; t < 40; ++t) {
      auto A = random_input(kinds[rng() % 3], n, rng), B = random_input(kinds[rng() % 3], n, rng);
      if (A.group.same_group(B.group)) continue;
      expect_bullets(third_subgroup_2p(A, B, n));
    }
}

TEST(WitnessFamily, Dispatch) {
  for (std::size_t n = 4; n <= 16; ++n) {
    auto w = witness_family(n);
    EXPECT_EQ(static_cast<int>(w.descriptors.size()), mindim_theorem(n).value) << n;
    EXPECT_TRUE(validate_certificate(w.family(), w.certificate).ok) << n;
  }
  EXPECT_EQ(witness_family(34).provenance, "dihedral_triple");
}
