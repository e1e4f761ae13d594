#include <gtest/gtest.h>

#include "manypoints/manypoints.hpp"

using namespace manypoints::serre;
using manypoints::Error;

namespace {

// Direct evaluation of (a + b y) / c at an affine point of E(F_2), or -1 if
// the denominator vanishes there.
int eval_at(const Function& f, int x, int y) {
  auto ev = [x](Poly2 p) {
    int v = 0;
    for (int i = 0; i <= deg2(p); ++i)
      if ((p >> i) & 1) v ^= (i == 0 ? 1 : x);
    return v;
  };
  if (ev(f.c) == 0) return -1;
  return ev(f.a) ^ (ev(f.b) & y);
}

}  // namespace

TEST(Serre, ChordTangentLaw) {
  EXPECT_EQ(chord_tangent_add(1, 1), 2);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(chord_tangent_add(0, i), i);
  EXPECT_TRUE(verify_phi_isomorphism());
}

TEST(Serre, PrincipalityCriterion) {
  EXPECT_TRUE(is_principal(kD1));
  EXPECT_TRUE(is_principal(kD2));
  EXPECT_FALSE(is_principal({1, -1, 0, 0, 0}));
  EXPECT_FALSE(is_principal({1, 0, 0, 0, 0}));
}

TEST(Serre, CriterionMatchesFunctionSearch) {
  int total = 0, principal = 0;
  for (int a0 = -8; a0 <= 8; ++a0)
    for (int a1 = -8; a1 <= 8; ++a1)
      for (int a2 = -8; a2 <= 8; ++a2)
        for (int a3 = -8; a3 <= 8; ++a3)
          for (int a4 = -8; a4 <= 8; ++a4) {
            const SerreDivisor D{a0, a1, a2, a3, a4};
            int weight = 0;
            for (int v : D) weight += std::abs(v);
            if (weight > 8) continue;
            ++total;
            const bool found = !find_functions(D).empty();
            EXPECT_EQ(is_principal(D), found) << to_string(D);
            principal += found;
          }
  EXPECT_GT(total, 10000);
  EXPECT_GT(principal, 100);
}

TEST(Serre, FoundFunctionsHaveTheRequestedDivisor) {
  for (const auto& D : {kD1, kD2}) {
    const auto fs = find_functions(D);
    ASSERT_FALSE(fs.empty());
    for (const auto& f : fs) {
      EXPECT_EQ(divisor_of(f), D);
      // zeros of f at affine points must evaluate to 0 there, units to 1
      for (int k = 0; k < 4; ++k) {
        const auto P = kAffinePoints[k];
        const int v = eval_at(f, P.x, P.y);
        if (D[k + 1] > 0 && v >= 0) { EXPECT_EQ(v, 0); }
        if (D[k + 1] == 0) { EXPECT_EQ(v, 1); }
      }
    }
  }
  EXPECT_THROW(find_function({1, -1, 0, 0, 0}), Error);
}

TEST(Serre, ArtinSchreierGenus) {
  EXPECT_EQ(artin_schreier_genus(1, {3, 1}), 4);
  EXPECT_EQ(artin_schreier_genus(1, {}), 1);
  EXPECT_EQ(artin_schreier_genus(1, {3, 3}), 5);
  EXPECT_THROW(artin_schreier_genus(1, {2}), Error);
}

TEST(Serre, Covers) {
  const Function f1 = find_function(kD1), f2 = find_function(kD2);
  const auto c1 = artin_schreier_cover(f1), c2 = artin_schreier_cover(f2);
  EXPECT_EQ(c1.genus, 4);
  EXPECT_EQ(c1.points, 8);
  EXPECT_EQ(c2.genus, 4);
  EXPECT_EQ(c2.points, 8);
  const auto fp = fibre_product(f1, f2);
  EXPECT_EQ(fp.genus, 11);
  EXPECT_EQ(fp.points, 14);
  EXPECT_LE(fp.points, manypoints::weil_interval(2, fp.genus).second);
}

TEST(Serre, CountsDoNotDependOnTheChosenFunction) {
  // every function with divisor D1 differs from another by a constant factor
  // (only 1 over F_2) or is the same up to w -> w + c; the counts agree
  for (const auto& D : {kD1, kD2})
    for (const auto& f : find_functions(D)) {
      auto c = artin_schreier_cover(f);
      EXPECT_EQ(c.genus, 4);
      EXPECT_EQ(c.points, 8);
    }
}

TEST(Serre, Report) {
  auto r = run_demo();
  EXPECT_TRUE(r.phi_ok);
  EXPECT_TRUE(r.d1_principal);
  EXPECT_TRUE(r.d2_principal);
  EXPECT_EQ(r.c1.points, 8);
  EXPECT_EQ(r.fibre.genus, 11);
  EXPECT_EQ(r.fibre.points, 14);
}
