#include <gtest/gtest.h>

#include "nefcert/curve.hpp"
#include "nefcert/local.hpp"

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

FunctionElement random_function(const Curve& c, Rng& rng, int deg) {
  const FiniteField* f = c.field();
  Poly a = random_poly(f, static_cast<int>(rng() % (deg + 1)), rng, false);
  Poly b = random_poly(f, static_cast<int>(rng() % (deg + 1)) - 1, rng, false);
  Poly d = random_poly(f, static_cast<int>(rng() % 3), rng, true);
  if (a.is_zero() && b.is_zero()) a = Poly::constant(f->one());
  return FunctionElement(c, a, b, d);
}

// Count over F_{p^2} with an independently constructed field.
uint64_t count_over_extension(const Curve& c, int k) {
  const FiniteField* base = c.field();
  auto E = FiniteField::create(base->p(), k);
  uint64_t n = 1;
  for (uint64_t i = 0; i < E->q(); ++i) {
    Fq x = E->from_index(i);
    Fq v = E->zero();
    for (int j = 5; j >= 0; --j) v = v * x + E->from_int(static_cast<int64_t>(c.f().coeff(j).index()));
    n += v.is_zero() ? 1 : (E->is_square(v) ? 2 : 0);
  }
  return n;
}

}  // namespace

TEST(Curve, RejectsBadModels) {
  auto F = FiniteField::create(5, 1);
  EXPECT_THROW(make_curve(F, {1, 0, 0, 1}), Error);
  EXPECT_THROW(make_curve(F, {0, 0, 1, 0, 0, 1}), Error);  // x^2 divides f
  try {
    make_curve(F, {0, 0, 1, 0, 0, 1});
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "singular model");
  }
  try {
    make_curve(F, {1, 0, 0, 1});
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "unsupported degree");
  }
}

TEST(Curve, PointCountExample) {
  auto F = FiniteField::create(3, 1);
  Curve c = make_curve(F, {1, 0, 0, 0, 0, 1});
  EXPECT_EQ(point_count(c, 1), 4u);
  EXPECT_EQ(c.rational_places().size(), 4u);
}

TEST(Curve, PointCountsAgreeWithIndependentFields) {
  Rng rng(21);
  for (uint64_t p : {3ull, 5ull, 7ull}) {
    auto F = FiniteField::create(p, 1);
    for (int it = 0; it < 4; ++it) {
      Curve c = random_curve(F, rng);
      EXPECT_EQ(point_count(c, 1), count_over_extension(c, 1));
      EXPECT_EQ(point_count(c, 2), count_over_extension(c, 2));
      EXPECT_EQ(point_count(c, 3), count_over_extension(c, 3));
      uint64_t deg1 = c.rational_places().size();
      EXPECT_EQ(deg1, point_count(c, 1));
      // N2 = #deg1 + 2 #deg2 places
      uint64_t deg2 = c.places_of_degree(2).size();
      EXPECT_EQ(point_count(c, 2), deg1 + 2 * deg2);
    }
  }
}

TEST(Curve, PlacesAreValid) {
  Rng rng(4);
  auto F = FiniteField::create(3, 2);
  Curve c = random_curve(F, rng);
  for (int it = 0; it < 50; ++it) {
    Place p = c.random_place(rng, 3);
    EXPECT_NO_THROW(c.check_place(p));
    EXPECT_LE(p.degree(), 3);
  }
}

TEST(Divisors, KnownPrincipalDivisors) {
  auto F = FiniteField::create(5, 1);
  Curve c = make_curve(F, {1, 2, 0, 0, 0, 1});
  Divisor dy = divisor_of_function(FunctionElement::y(c));
  Divisor expect;
  for (const auto& p : c.weierstrass_places()) expect.add(p, p.is_infinite() ? -5 : 1);
  EXPECT_EQ(dy, expect);
  Divisor dx = divisor_of_function(FunctionElement::x(c));
  EXPECT_EQ(dx[Place::infinity()], -2);
  EXPECT_EQ(dx.degree(), 0);
  Divisor dxdiff = divisor_of_differential(Differential::dx(c));
  EXPECT_EQ(dxdiff, dx_divisor(c));
  Differential k = Differential(FunctionElement::y(c).inverse());
  EXPECT_EQ(divisor_of_differential(k), canonical_divisor(c));
}

TEST(Divisors, MultiplicativityProperty) {
  Rng rng(77);
  for (auto [p, k] : {std::pair{3, 2}, std::pair{5, 1}, std::pair{7, 1}}) {
    auto F = FiniteField::create(p, k);
    for (int it = 0; it < 6; ++it) {
      Curve c = random_curve(F, rng);
      FunctionElement g = random_function(c, rng, 4), h = random_function(c, rng, 3);
      Divisor dg = divisor_of_function(g), dh = divisor_of_function(h);
      EXPECT_EQ(dg.degree(), 0);
      EXPECT_EQ(divisor_of_function(g * h), dg + dh);
      EXPECT_EQ(divisor_of_function(g.inverse()), -dg);
      // Norm valuations split over conjugate places.
      for (const auto& [pl, n] : dg.entries()) {
        if (pl.kind != PlaceKind::Split) continue;
        Place other{PlaceKind::Split, pl.u, (-pl.v) % pl.u};
        long nn = valuation(pl, g) + valuation(other, g);
        EXPECT_EQ(nn, ord(g.norm_numerator(), pl.u) - 2 * ord(g.C(), pl.u));
      }
    }
  }
}

TEST(Residues, ResidueTheoremProperty) {
  Rng rng(1234);
  for (auto [p, k] : {std::pair{3, 1}, std::pair{3, 3}, std::pair{5, 1}, std::pair{7, 1}, std::pair{11, 1}}) {
    auto F = FiniteField::create(p, k);
    for (int it = 0; it < 5; ++it) {
      Curve c = random_curve(F, rng);
      FunctionElement h = random_function(c, rng, 5) / random_function(c, rng, 2);
      Differential w(h);
      Divisor d = divisor_of_differential(w);
      Fq total = F->zero();
      for (const auto& pl : d.support()) total += residue(pl, w);
      EXPECT_TRUE(total.is_zero());
      // Exact differentials have no residues.
      Differential dg = Differential::of(h);
      for (const auto& pl : divisor_of_differential(dg).support()) EXPECT_TRUE(residue(pl, dg).is_zero());
    }
  }
}

TEST(Series, DerivativeMatchesTermwise) {
  Rng rng(55);
  auto F = FiniteField::create(5, 1);
  for (int it = 0; it < 10; ++it) {
    Curve c = random_curve(F, rng);
    FunctionElement g = random_function(c, rng, 4);
    FunctionElement dg = g.derivative();
    std::vector<Place> places{Place::infinity(), c.random_place(rng, 2), c.weierstrass_places()[0]};
    for (const auto& pl : places) {
      LocalExpansion le(c, pl);
      const SeriesOps& ops = le.ops();
      int top = 6;
      Series s = le.expand(g, top + 1);
      // d/dt termwise
      Series ds;
      ds.val = s.val - 1;
      for (size_t i = 0; i < s.c.size(); ++i)
        ds.c.push_back(le.field().scale(s.c[i], F->from_int(s.val + static_cast<int>(i))));
      Series rhs = ops.mul(le.expand(dg, top + 10), le.dx(top + 10));
      int compared = 0;
      for (int e = std::max(ds.val, rhs.val); e < std::min(ds.prec(), rhs.prec()); ++e, ++compared)
        EXPECT_EQ(ops.coeff(ds, e), ops.coeff(rhs, e)) << pl.to_string() << " e=" << e;
      EXPECT_GE(compared, 4);
    }
  }
}

TEST(Series, CurveEquationHoldsLocally) {
  Rng rng(8);
  auto F = FiniteField::create(3, 3);
  Curve c = random_curve(F, rng);
  std::vector<Place> places = c.weierstrass_places();
  places.push_back(c.random_place(rng, 3));
  places.push_back(c.random_place(rng, 2));
  for (const auto& pl : places) {
    LocalExpansion le(c, pl);
    const SeriesOps& ops = le.ops();
    int prec = 12;
    Series y = le.y(prec);
    Series lhs = ops.mul(y, y);
    Series rhs = le.poly_at_x(c.f(), prec + 20);
    int compared = 0;
    for (int e = std::max(lhs.val, rhs.val); e < std::min(lhs.prec(), rhs.prec()); ++e, ++compared)
      EXPECT_EQ(ops.coeff(lhs, e), ops.coeff(rhs, e)) << pl.to_string();
    EXPECT_GE(compared, 8);
  }
}
