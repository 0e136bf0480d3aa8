#include <gtest/gtest.h>

#include <algorithm>

#include "nefcert/cohomology.hpp"
#include "nefcert/jacobian.hpp"

using namespace nefcert;

namespace {

Curve make_curve(const FieldPtr& F, std::vector<int64_t> f) {
  return Curve::create(F, Poly::from_ints(F.get(), f));
}

Curve random_curve(const FieldPtr& F, Rng& rng) {
  for (;;) {
    Poly f = random_poly(F.get(), 5, rng, true);
    if (is_squarefree(f)) return Curve::create(F, f);
  }
}

// Every reduced pair (u, v): u monic, deg u <= 2, deg v < deg u, u | f - v^2.
std::vector<MumfordClass> enumerate_pairs(const Curve& c) {
  const FiniteField* F = c.field();
  uint64_t q = F->q();
  std::vector<MumfordClass> out;
  out.push_back({Poly::constant(F->one()), Poly(F)});
  for (int du = 1; du <= 2; ++du) {
    uint64_t nu = du == 1 ? q : q * q;
    for (uint64_t iu = 0; iu < nu; ++iu) {
      std::vector<Fq> uc;
      uint64_t t = iu;
      for (int i = 0; i < du; ++i, t /= q) uc.push_back(F->from_index(t % q));
      uc.push_back(F->one());
      Poly u(F, uc);
      uint64_t nv = du == 1 ? q : q * q;
      for (uint64_t iv = 0; iv < nv; ++iv) {
        std::vector<Fq> vc;
        uint64_t s = iv;
        for (int i = 0; i < du; ++i, s /= q) vc.push_back(F->from_index(s % q));
        Poly v(F, vc);
        if (((c.f() - v * v) % u).is_zero()) out.push_back({u, v});
      }
    }
  }
  return out;
}

}  // namespace

TEST(Jacobian, OrderMatchesExhaustiveEnumeration) {
  auto F3 = FiniteField::create(3, 1);
  for (auto coeffs : {std::vector<int64_t>{1, 0, 0, 0, 0, 1}, std::vector<int64_t>{0, 1, 0, 0, 0, 1}}) {
    Curve c = make_curve(F3, coeffs);
    auto pairs = enumerate_pairs(c);
    EXPECT_EQ(jacobian_order(c), pairs.size());
    for (const auto& d : pairs) EXPECT_TRUE(is_valid_class(c, d));
  }
  Rng rng(3);
  for (auto [p, k] : {std::pair{5, 1}, std::pair{3, 2}, std::pair{7, 1}}) {
    auto F = FiniteField::create(p, k);
    for (int it = 0; it < 3; ++it) {
      Curve c = random_curve(F, rng);
      EXPECT_EQ(jacobian_order(c), enumerate_pairs(c).size());
    }
  }
}

TEST(Jacobian, FrobeniusDataConsistent) {
  auto F = FiniteField::create(3, 1);
  Curve c = make_curve(F, {1, 0, 0, 0, 0, 1});
  FrobeniusData fd = frobenius_data(c);
  EXPECT_EQ(fd.n1, 4u);
  EXPECT_EQ(fd.a1, 0);
  int64_t at1 = 0;
  for (auto co : fd.charpoly) at1 += co;
  EXPECT_EQ(static_cast<uint64_t>(at1), fd.jacobian_order);
  EXPECT_EQ(fd.charpoly.back(), 1);
}

TEST(Jacobian, GroupAxiomsProperty) {
  Rng rng(99);
  for (auto [p, k] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{3, 3}, std::pair{11, 1}}) {
    auto F = FiniteField::create(p, k);
    Curve c = random_curve(F, rng);
    MumfordClass zero = jac_identity(c);
    for (int it = 0; it < 150; ++it) {
      MumfordClass a = random_class(c, rng), b = random_class(c, rng), d = random_class(c, rng);
      ASSERT_TRUE(is_valid_class(c, a));
      EXPECT_EQ(cantor_add(c, a, zero), a);
      EXPECT_TRUE(cantor_add(c, a, cantor_neg(c, a)).is_zero());
      EXPECT_EQ(cantor_add(c, a, b), cantor_add(c, b, a));
      EXPECT_EQ(cantor_add(c, cantor_add(c, a, b), d), cantor_add(c, a, cantor_add(c, b, d)));
      EXPECT_TRUE(is_valid_class(c, cantor_add(c, a, b)));
    }
  }
}

TEST(Jacobian, ScalarMultiplication) {
  Rng rng(5);
  auto F = FiniteField::create(7, 1);
  Curve c = random_curve(F, rng);
  uint64_t n = jacobian_order(c);
  for (int it = 0; it < 100; ++it) {
    MumfordClass d = random_class(c, rng);
    EXPECT_TRUE(cantor_mul(c, d, 0).is_zero());
    EXPECT_EQ(cantor_mul(c, d, 2), cantor_add(c, d, d));
    int64_t m = static_cast<int64_t>(rng() % 200) - 100, k = static_cast<int64_t>(rng() % 200) - 100;
    EXPECT_EQ(cantor_mul(c, d, m + k), cantor_add(c, cantor_mul(c, d, m), cantor_mul(c, d, k)));
    EXPECT_EQ(cantor_mul(c, d, -m), cantor_neg(c, cantor_mul(c, d, m)));
    EXPECT_TRUE(cantor_mul(c, d, static_cast<int64_t>(n)).is_zero());
  }
}

TEST(Jacobian, ClassOrderIsExact) {
  Rng rng(6);
  auto F = FiniteField::create(5, 2);
  Curve c = random_curve(F, rng);
  uint64_t n = jacobian_order(c);
  EXPECT_EQ(class_order(c, jac_identity(c)), 1u);
  for (int it = 0; it < 30; ++it) {
    MumfordClass d = random_class(c, rng);
    uint64_t o = class_order(c, d);
    EXPECT_EQ(n % o, 0u);
    EXPECT_TRUE(cantor_mul(c, d, static_cast<int64_t>(o)).is_zero());
    for (uint64_t l : prime_factors(o)) EXPECT_FALSE(cantor_mul(c, d, static_cast<int64_t>(o / l)).is_zero());
  }
}

TEST(Jacobian, DivisorClassesOfPrincipalDivisorsVanish) {
  Rng rng(8);
  auto F = FiniteField::create(7, 1);
  Curve c = random_curve(F, rng);
  for (int it = 0; it < 20; ++it) {
    Poly a = random_poly(F.get(), 3, rng, false), b = random_poly(F.get(), 2, rng, false);
    if (a.is_zero()) continue;
    FunctionElement g(c, a, b, Poly::constant(F->one()));
    EXPECT_TRUE(divisor_class(c, divisor_of_function(g)).is_zero());
    MumfordClass d = random_class(c, rng);
    EXPECT_EQ(divisor_class(c, mumford_divisor(c, d)), d);
  }
}

TEST(Jacobian, NonOrdinaryRejected) {
  auto F = FiniteField::create(3, 1);
  Curve c = make_curve(F, {1, 0, 0, 0, 0, 1});
  try {
    find_p_torsion(c, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "expected ordinary");
  }
}

TEST(Jacobian, PTorsionAgainstEnumeration) {
  Rng rng(12);
  int with_torsion = 0, empty = 0;
  for (int k : {1, 2}) {
    auto F = FiniteField::create(3, k);
    for (int it = 0; it < 40; ++it) {
      Curve c = random_curve(F, rng);
      if (!cartier_manin(c).ordinary) continue;
      auto sub = p_torsion_subgroup(c, 17);
      size_t brute = 0;
      for (const auto& d : enumerate_pairs(c))
        if (!d.is_zero() && cantor_mul(c, d, 3).is_zero()) ++brute;
      EXPECT_EQ(sub.size(), brute);
      auto found = find_p_torsion(c, 17);
      for (const auto& t : found) {
        EXPECT_FALSE(t.is_zero());
        EXPECT_TRUE(cantor_mul(c, t, 3).is_zero());
        EXPECT_EQ(class_order(c, t), 3u);
      }
      if (jacobian_order(c) % 3 != 0) {
        EXPECT_TRUE(found.empty());
        ++empty;
      } else {
        ++with_torsion;
      }
    }
  }
  EXPECT_GT(with_torsion, 0);
  EXPECT_GT(empty, 0);
}

TEST(Jacobian, FullPTorsionIsClosedGroupOfOrderPSquared) {
  Rng rng(31);
  bool seen = false;
  for (int it = 0; it < 600 && !seen; ++it) {
    auto F = FiniteField::create(3, 2 + it % 2);
    Curve c = random_curve(F, rng);
    if (!cartier_manin(c).ordinary || jacobian_order(c) % 9 != 0) continue;
    auto sub = p_torsion_subgroup(c, 5);
    ASSERT_LE(sub.size(), 8u);
    if (sub.size() != 8) continue;
    seen = true;
    sub.push_back(jac_identity(c));
    for (const auto& a : sub)
      for (const auto& b : sub) EXPECT_NE(std::find(sub.begin(), sub.end(), cantor_add(c, a, b)), sub.end());
  }
  EXPECT_TRUE(seen);
}
