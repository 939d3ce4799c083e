#include <gtest/gtest.h>

#include "mindim/constructions.hpp"

using namespace mindim;

namespace {

BigInt gl_order(unsigned d, unsigned q) {
  BigInt o = 1, qd = 1;
  for (unsigned i = 0; i < d; ++i) qd *= q;
  BigInt qi = 1;
  for (unsigned i = 0; i < d; ++i) {
    o *= qd - qi;
    qi *= q;
  }
  return o;
}

} // namespace

TEST(Field, AxiomsOnSmallFields) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 32u}) {
    FiniteField F(q);
    for (unsigned a = 0; a < q; ++a) {
      EXPECT_EQ(F.add(a, F.neg(a)), 0u);
      if (a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
      for (unsigned b = 0; b < q; ++b) {
        EXPECT_EQ(F.add(a, b), F.add(b, a));
        EXPECT_EQ(F.mul(a, b), F.mul(b, a));
        for (unsigned c = 0; c < q; c += 3)
          EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      }
    }
    EXPECT_EQ(F.multiplicative_order(F.primitive_element()), q - 1);
  }
  EXPECT_THROW(FiniteField(6), std::invalid_argument);
}

TEST(Constructions, ProjectiveOrders) {
  for (unsigned q : {4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 17u, 25u, 27u}) {
    BigInt pgl = BigInt(q) * (BigInt(q) * q - 1);
    auto w = prime_power(q);
    EXPECT_EQ(pgl2_projective(q).order(), pgl) << q;
    EXPECT_EQ(psl2_projective(q).order(), q % 2 ? pgl / 2 : pgl) << q;
    EXPECT_EQ(pgammal2_projective(q).order(), pgl * w.exponent) << q;
    EXPECT_TRUE(is_primitive(pgl2_projective(q))) << q;
  }
}

TEST(Constructions, Criterion5Arithmetic) {
  auto G = pgl2_projective(13);
  auto g = projective_diagonal(13);
  EXPECT_TRUE(G.contains(g));
  EXPECT_EQ(cycle_type(g), (std::vector<std::size_t>{12, 1, 1}));
  EXPECT_FALSE(is_even(g));
  auto H = intersect_with_An(G);
  EXPECT_EQ(H.order(), 1092);
  EXPECT_EQ(G.order(), 2 * H.order());
  EXPECT_TRUE(H.same_group(psl2_projective(13)));
}

TEST(Constructions, AffineOrders) {
  for (auto [d, p] : std::vector<std::pair<unsigned, unsigned>>{
           {1, 5}, {1, 7}, {1, 13}, {2, 3}, {2, 5}, {3, 2}, {4, 2}, {2, 7}}) {
    BigInt pd = 1;
    for (unsigned i = 0; i < d; ++i) pd *= p;
    auto G = affine_group(d, p, LinearPart::GL);
    EXPECT_EQ(G.order(), pd * gl_order(d, p)) << d << "," << p;
    auto S = affine_group(d, p, LinearPart::SL);
    EXPECT_EQ(S.order(), pd * gl_order(d, p) / (p - 1)) << d << "," << p;
    EXPECT_TRUE(is_primitive(G));
  }
}

TEST(Constructions, Sporadic) {
  EXPECT_EQ(mathieu11().order(), 7920);
  EXPECT_EQ(mathieu12().order(), 95040);
  EXPECT_EQ(mathieu22().order(), 443520);
  EXPECT_EQ(mathieu23().order(), 10200960);
  for (const auto &G : {mathieu11(), mathieu12(), mathieu22(), mathieu23()}) {
    EXPECT_TRUE(is_primitive(G));
    for (const auto &x : G.generators()) EXPECT_TRUE(is_even(x));
  }
  auto P = projective_space_2(4);
  EXPECT_EQ(P.degree(), 15u);
  EXPECT_EQ(P.order(), 20160);
  EXPECT_TRUE(is_primitive(P));
}

TEST(Constructions, StabilizerOrders) {
  auto S = set_stabilizer_sym(9, {1, 2, 3});
  EXPECT_EQ(S.order(), 6 * 720);
  auto W = partition_stabilizer_sym(8, {{1, 2}, {3, 4}, {5, 6}, {7, 8}});
  EXPECT_EQ(W.order(), 16 * 24);
  auto W2 = partition_stabilizer_sym(14, {{1, 2, 3, 4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14}});
  EXPECT_EQ(W2.order(), BigInt(5040) * 5040 * 2);
  EXPECT_EQ(intersect_with_An(W2).order(), W2.order() / 2);
}
