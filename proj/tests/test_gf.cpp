#include <gtest/gtest.h>

#include <random>
#include <set>

#include "manypoints/gf.hpp"

using namespace manypoints;

namespace {

// Schoolbook F_p[T]/(m) product, independent of FieldElement.
std::vector<uint32_t> oracle_mul(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                                 const std::vector<uint32_t>& m, uint32_t p) {
  const size_t k = m.size() - 1;
  std::vector<uint64_t> prod(2 * k, 0);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + uint64_t{a[i]} * b[j]) % p;
  for (size_t d = 2 * k - 1; d >= k; --d) {
    const uint64_t c = prod[d];
    prod[d] = 0;
    for (size_t i = 0; i < k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - m[i]) * c) % p;
  }
  return {prod.begin(), prod.begin() + k};
}

std::vector<uint32_t> coeffs(const FieldElement& x) { return {x.coefficients().begin(), x.coefficients().end()}; }

bool has_root_mod_p(const std::vector<uint32_t>& c, uint32_t p) {
  for (uint32_t x = 0; x < p; ++x) {
    uint64_t v = 0;
    for (size_t i = c.size(); i-- > 0;) v = (v * x + c[i]) % p;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace

TEST(Gf, PrimeFieldConvention) {
  Field f = build_extension(7, 1);
  EXPECT_EQ(f->size, 7u);
  EXPECT_EQ(f->modulus, (std::vector<uint32_t>{0, 1}));
  EXPECT_EQ(f, prime_field(7));
}

TEST(Gf, QuadraticOverTwoIsUnique) {
  EXPECT_EQ(build_extension(2, 2)->modulus, (std::vector<uint32_t>{1, 1, 1}));
}

TEST(Gf, CubicOverSevenIsSmallestIrreducible) {
  // scan T^3 + c2 T^2 + c1 T + c0 with c2 most significant; cubics are
  // irreducible iff rootless
  std::vector<uint32_t> expect;
  for (uint32_t n = 0; n < 343 && expect.empty(); ++n) {
    std::vector<uint32_t> c{n % 7, (n / 7) % 7, n / 49, 1};
    if (!has_root_mod_p(c, 7)) expect = c;
  }
  EXPECT_EQ(build_extension(7, 3)->modulus, expect);
  EXPECT_EQ(build_extension(7, 3), build_extension(7, 3));
}

TEST(Gf, NonPrimeCharacteristicRejected) {
  try {
    build_extension(9, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidField);
  }
  EXPECT_THROW(build_extension(7, 7), Error);
}

TEST(Gf, SmallExamples) {
  Field f7 = prime_field(7);
  EXPECT_EQ(FieldElement(f7, 3).inverse(), FieldElement(f7, 5));
  Field f4 = build_extension(2, 2);
  auto T = FieldElement::generator(f4);
  EXPECT_EQ(T * T, T + FieldElement::one(f4));
  EXPECT_EQ(T.frobenius(), T + FieldElement::one(f4));
  EXPECT_TRUE(FieldElement(prime_field(13), 2).pow(12).is_one());
  EXPECT_EQ(FieldElement(f7, -1), FieldElement(f7, 6));
}

TEST(Gf, Errors) {
  Field f7 = prime_field(7);
  try {
    FieldElement::zero(f7).inverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
  }
  try {
    (void)(FieldElement::one(f7) + FieldElement::one(prime_field(5)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FieldMismatch);
  }
}

TEST(Gf, MultiplicationMatchesSchoolbook) {
  std::mt19937_64 rng(1);
  for (auto [p, k] : std::vector<std::pair<uint32_t, int>>{{2, 5}, {3, 4}, {7, 3}, {13, 2}, {19, 3}, {5, 6}}) {
    Field f = build_extension(p, k);
    for (int it = 0; it < 300; ++it) {
      auto a = FieldElement::from_index(f, rng() % f->size);
      auto b = FieldElement::from_index(f, rng() % f->size);
      EXPECT_EQ(coeffs(a * b), oracle_mul(coeffs(a), coeffs(b), f->modulus, p));
    }
  }
}

TEST(Gf, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(2);
  for (auto [p, k] : std::vector<std::pair<uint32_t, int>>{{2, 3}, {5, 2}, {7, 3}, {11, 2}, {3, 5}}) {
    Field f = build_extension(p, k);
    for (int it = 0; it < 200; ++it) {
      auto a = FieldElement::from_index(f, rng() % f->size);
      auto b = FieldElement::from_index(f, rng() % f->size);
      auto c = FieldElement::from_index(f, rng() % f->size);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a - b + b, a);
      if (!a.is_zero()) { EXPECT_TRUE((a * a.inverse()).is_one()); }
    }
  }
}

TEST(Gf, EveryElementIsFixedByQPower) {
  for (auto [p, k] : std::vector<std::pair<uint32_t, int>>{{2, 3}, {3, 3}, {5, 2}, {7, 3}, {13, 2}, {19, 1}}) {
    Field f = build_extension(p, k);
    uint64_t fixed = 0;
    std::set<uint64_t> seen;
    for (uint64_t i = 0; i < f->size; ++i) {
      auto x = FieldElement::from_index(f, i);
      EXPECT_EQ(x.index(), i);
      seen.insert(x.index());
      if (x.pow(f->size) == x) ++fixed;
    }
    EXPECT_EQ(fixed, f->size);
    EXPECT_EQ(seen.size(), f->size);
  }
}

TEST(Gf, FrobeniusOrder) {
  std::mt19937_64 rng(3);
  Field f = build_extension(7, 3);
  for (int it = 0; it < 50; ++it) {
    auto x = FieldElement::from_index(f, rng() % f->size);
    EXPECT_EQ(x.frobenius().frobenius().frobenius(), x);
    EXPECT_EQ(x.frobenius() == x, x.in_prime_field());
  }
  EXPECT_EQ(FieldElement(prime_field(7), 4).frobenius(), FieldElement(prime_field(7), 4));
}

TEST(Gf, SquareRoots) {
  for (auto [p, k] : std::vector<std::pair<uint32_t, int>>{{2, 3}, {7, 2}, {13, 1}, {5, 3}}) {
    Field f = build_extension(p, k);
    uint64_t squares = 0;
    for (uint64_t i = 0; i < f->size; ++i) {
      auto x = FieldElement::from_index(f, i);
      FieldElement r = FieldElement::zero(f);
      if (x.sqrt(r)) {
        EXPECT_EQ(r * r, x);
        ++squares;
      }
    }
    EXPECT_EQ(squares, p == 2 ? f->size : (f->size + 1) / 2);
  }
}

TEST(Gf, RootExamples) {
  Field f2 = prime_field(2), f7 = prime_field(7), f5 = prime_field(5);
  EXPECT_TRUE(poly_roots(Poly::from_ints(f2, {1, 1, 1})).empty());
  auto r = poly_roots(Poly::from_ints(f7, {-1, 0, 0, 1}));
  EXPECT_EQ(r, (std::vector<FieldElement>{FieldElement(f7, 1), FieldElement(f7, 2), FieldElement(f7, 4)}));
  EXPECT_EQ(poly_roots(Poly::from_ints(f5, {0, 0, 1})), std::vector<FieldElement>{FieldElement(f5, 0)});
  try {
    poly_roots(Poly(f5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Gf, RootsMatchExhaustiveEvaluation) {
  std::mt19937_64 rng(4);
  for (auto [p, k] : std::vector<std::pair<uint32_t, int>>{{3, 6}, {7, 4}, {11, 3}, {13, 4}, {17, 2}, {2, 6}}) {
    Field f = build_extension(p, k);
    for (int it = 0; it < 6; ++it) {
      // a few planted linear factors times a random cofactor, degree <= 8
      Poly g = Poly::from_ints(f, {1});
      const int planted = static_cast<int>(rng() % 5);
      for (int i = 0; i < planted; ++i) g = g * Poly::linear_root(FieldElement::from_index(f, rng() % f->size));
      const int extra = static_cast<int>(rng() % (9 - planted));
      std::vector<FieldElement> c;
      for (int i = 0; i <= extra; ++i) c.push_back(FieldElement::from_index(f, rng() % f->size));
      c.back() = FieldElement::one(f);
      g = g * Poly(f, c);
      std::vector<FieldElement> brute;
      for (uint64_t i = 0; i < f->size; ++i) {
        auto x = FieldElement::from_index(f, i);
        if (g.evaluate(x).is_zero()) brute.push_back(x);
      }
      std::sort(brute.begin(), brute.end());
      EXPECT_EQ(poly_roots(g), brute) << "p=" << p << " k=" << k << " f=" << g.to_string();
    }
  }
}

TEST(Gf, EmbeddingIntoExtension) {
  Field f7 = prime_field(7), f49 = build_extension(7, 2);
  auto x = FieldElement(f7, 3).embed(f49);
  EXPECT_TRUE(x.in_prime_field());
  EXPECT_EQ(x * x, FieldElement(f7, 2).embed(f49));
  // T^2 + 1 has no root in F_7 but two in F_49
  auto g = Poly::from_ints(f7, {1, 0, 1});
  EXPECT_TRUE(poly_roots(g).empty());
  EXPECT_EQ(poly_roots_in(g, f49).size(), 2u);
}
