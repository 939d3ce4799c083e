#include <gtest/gtest.h>

#include <random>

#include "mindim/catalog.hpp"
#include "mindim/intersect.hpp"

using namespace mindim;

namespace {

Permutation random_perm(std::size_t n, std::mt19937_64 &rng) {
  std::vector<Point> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation::from_images0(v);
}

} // namespace

TEST(Intersect, Examples) {
  auto a = intransitive_subgroup(7, {1, 2, 3}, Ambient::AlternatingN);
  auto b = intransitive_subgroup(7, {1, 2, 5}, Ambient::AlternatingN);
  // Stabilizer of the parts {1,2}, {3}, {5}, {4,6,7}: 2 * 6 / 2.
  EXPECT_EQ(intersect(a.group, b.group).order(), 6);
  auto s12 = intransitive_subgroup(5, {1, 2}, Ambient::AlternatingN);
  auto s13 = intransitive_subgroup(5, {1, 3}, Ambient::AlternatingN);
  EXPECT_TRUE(intersect(s12.group, s13.group).is_trivial());
  PermGroup A6 = alternating_group(6);
  EXPECT_TRUE(intersect(A6, A6).same_group(A6));
  EXPECT_THROW(intersect(A6, alternating_group(7)), std::invalid_argument);
}

// Backtrack against the enumeration oracle on catalog pairs, n <= 8.
TEST(IntersectProperty, CatalogPairsMatchEnumeration) {
  std::mt19937_64 rng(31);
  for (std::size_t n = 4; n <= 8; ++n)
    for (auto amb : {Ambient::AlternatingN, Ambient::SymmetricN}) {
      auto cl = maximal_classes(n, amb);
      PermGroup G = ambient_group(n, amb);
      for (const auto &a : cl.classes)
        for (const auto &b : cl.classes)
          for (int t = 0; t < 4; ++t) {
            PermGroup B = b.group.conjugated(G.random_element(rng));
            IntersectStats st;
            PermGroup K = intersect(a.group, B, {}, &st);
            PermGroup E = intersect_by_enumeration(a.group, B);
            ASSERT_TRUE(K.same_group(E)) << n << " " << a.label() << " " << b.label();
            for (const auto &x : K.generators())
              ASSERT_TRUE(a.group.contains(x) && B.contains(x));
          }
    }
}

TEST(IntersectProperty, RandomSubgroupsMatchEnumeration) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 150; ++t) {
    std::size_t n = 4 + rng() % 6;
    PermGroup A(n, {random_perm(n, rng), random_perm(n, rng)});
    PermGroup B(n, {random_perm(n, rng), random_perm(n, rng)});
    if (A.order() > 50000 && B.order() > 50000) continue;
    ASSERT_TRUE(intersect(A, B).same_group(intersect_by_enumeration(A, B)));
  }
}

TEST(IntersectProperty, Symmetric) {
  std::mt19937_64 rng(33);
  auto a = imprimitive_subgroup(9, consecutive_blocks(9, 3), Ambient::AlternatingN);
  auto b = primitive_subgroup("A9.ASL2_3");
  for (int t = 0; t < 20; ++t) {
    PermGroup B = b.group.conjugated(alternating_group(9).random_element(rng));
    EXPECT_TRUE(intersect(a.group, B).same_group(intersect(B, a.group)));
  }
}

TEST(Intersect, BudgetFallbackAndExhaustion) {
  auto a = intransitive_subgroup(8, {1, 2, 3}, Ambient::AlternatingN);
  auto b = imprimitive_subgroup(8, {{1, 4, 6, 8}, {2, 3, 5, 7}}, Ambient::AlternatingN);
  IntersectOptions tiny;
  tiny.node_budget = 1;
  PermGroup K = intersect(a.group, b.group, tiny);
  EXPECT_TRUE(K.same_group(intersect(a.group, b.group)));
  tiny.enumeration_cap = 10;
  EXPECT_THROW(intersect(a.group, b.group, tiny), BudgetExceeded);
}

TEST(Intersect, LargeDegree) {
  // Stabilizers of {1..10} and {6..15} in S_30: S_5 x S_5 x S_5 x S_15.
  auto a = intransitive_subgroup(30, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, Ambient::SymmetricN);
  auto b = intransitive_subgroup(30, {6, 7, 8, 9, 10, 11, 12, 13, 14, 15},
                                 Ambient::SymmetricN);
  BigInt f5 = 120, f15 = 1;
  for (int i = 2; i <= 15; ++i) f15 *= i;
  EXPECT_EQ(intersect(a.group, b.group).order(), f5 * f5 * f5 * f15);
}
