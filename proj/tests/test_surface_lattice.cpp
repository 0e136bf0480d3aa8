#include <gtest/gtest.h>

#include <random>

#include "nefcert/surface_lattice.hpp"

using namespace nefcert;

namespace {

LatticeClass combo(const SurfaceLattice& lat, std::vector<std::pair<int, long>> terms) {
  LatticeClass c{std::vector<long>(lat.rank, 0)};
  for (auto [i, n] : terms) c.coords[i] += n;
  return c;
}

// exact determinant by elimination
Rational det(RatMatrix m) {
  size_t n = m.size();
  Rational d = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      d = -d;
    }
    d *= m[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      Rational f = m[i][k] / m[k][k];
      for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return d;
}

}  // namespace

TEST(Lattice, GramConventions) {
  SurfaceLattice a = blowup_lattice(SurfaceBase::P1xP1, 0);
  EXPECT_EQ(a.gram, (std::vector<std::vector<long>>{{0, 1}, {1, 0}}));
  SurfaceLattice b = blowup_lattice(SurfaceBase::P1xP1, 12);
  EXPECT_EQ(b.rank, 14);
  EXPECT_EQ(hodge_signature(b), (Signature{1, 13, 0}));
  SurfaceLattice p = blowup_lattice(SurfaceBase::P2, 7);
  EXPECT_EQ(p.rank, 8);
  EXPECT_EQ(intersect(b, basis_class(b, 0), basis_class(b, 1)), 1);
  for (int i = 1; i <= 12; ++i)
    for (int j = 1; j <= 12; ++j)
      EXPECT_EQ(intersect(b, exceptional_class(b, i), exceptional_class(b, j)), i == j ? -1 : 0);
  std::vector<std::pair<int, long>> t{{0, 2}, {1, 3}};
  for (int i = 2; i < 14; ++i) t.push_back({i, -1});
  LatticeClass c = combo(b, t);
  EXPECT_EQ(intersect(b, c, c), 0);
  EXPECT_THROW(intersect(b, c, LatticeClass{{1, 0}}), Error);
}

TEST(Lattice, HodgeIndexAllSmallD) {
  for (int d = 0; d <= 50; ++d) {
    EXPECT_EQ(hodge_signature(blowup_lattice(SurfaceBase::P1xP1, d)), (Signature{1, d + 1, 0}));
    EXPECT_EQ(hodge_signature(blowup_lattice(SurfaceBase::P2, d)), (Signature{1, d, 0}));
  }
}

// inertia against a determinant oracle: random rational congruences B^T D B preserve inertia
TEST(Lattice, InertiaMatchesCongruenceProperty) {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 200; ++it) {
    int n = 1 + static_cast<int>(rng() % 6);
    int plus = static_cast<int>(rng() % (n + 1));
    int minus = static_cast<int>(rng() % (n - plus + 1));
    RatMatrix d(n, RatVec(n));
    for (int i = 0; i < n; ++i) d[i][i] = i < plus ? Rational(1 + rng() % 3) : i < plus + minus ? Rational(-1 - static_cast<long>(rng() % 3)) : 0;
    RatMatrix b(n, RatVec(n));
    do {
      for (auto& row : b)
        for (auto& x : row) x = static_cast<long>(rng() % 7) - 3;
    } while (det(b) == 0);
    RatMatrix m(n, RatVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m[i][j] += b[k][i] * d[k][k] * b[k][j];
    EXPECT_EQ(inertia(m), (Signature{plus, minus, n - plus - minus}));
  }
}

TEST(Lattice, RestrictedFormsNegativeDefinite) {
  auto cfg = ruling_configuration(5);
  QuotientForm q = orthogonal_quotient(cfg.lat, cfg.l);
  EXPECT_EQ(q.gram.size(), static_cast<size_t>(cfg.lat.rank - 2));
  EXPECT_EQ(inertia(q.gram).plus, cfg.lat.rank - 2);
  auto pl = plane_configuration(4);
  QuotientForm r = orthogonal_quotient(pl.lat, pl.l);
  EXPECT_EQ(r.gram.size(), static_cast<size_t>(pl.lat.rank - 1));
  EXPECT_EQ(inertia(r.gram).plus, pl.lat.rank - 1);
  EXPECT_THROW(q.coordinates(basis_class(cfg.lat, 0)), Error);
}

TEST(Rankin, SmallConfigurations) {
  std::vector<RatVec> cross{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  auto r = rankin_check(2, cross, false);
  EXPECT_TRUE(r.within);
  EXPECT_EQ(r.size, 4u);
  EXPECT_EQ(r.bound, 4u);
  EXPECT_THROW(rankin_check(2, cross, true), Error);
  // an obtuse triangle stands in for three unit vectors at 120 degrees
  std::vector<RatVec> tri{{1, 0}, {-1, 1}, {-1, -2}};
  auto s = rankin_check(2, tri, true);
  EXPECT_TRUE(s.within);
  EXPECT_EQ(s.size, s.bound);
  try {
    rankin_check(2, {{1, 0}, {1, 1}}, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("(0, 1)"), std::string::npos);
  }
}

TEST(Rankin, BruteForceNeverExceedsBounds) {
  for (int dim = 1; dim <= 3; ++dim)
    for (int radius = 1; radius <= (dim == 3 ? 2 : 4); ++radius) {
      EXPECT_LE(rankin_extremal(dim, radius, false), static_cast<size_t>(2 * dim));
      EXPECT_LE(rankin_extremal(dim, radius, true), static_cast<size_t>(dim + 1));
    }
  EXPECT_EQ(rankin_extremal(2, 2, false), 4u);
  EXPECT_EQ(rankin_extremal(3, 1, false), 6u);
  EXPECT_EQ(rankin_extremal(2, 2, true), 3u);
  EXPECT_EQ(rankin_extremal(3, 1, true), 4u);
}

TEST(Exceptional, RulingExampleAttainsBound) {
  for (int d = 1; d <= 6; ++d) {
    auto cfg = ruling_configuration(d);
    EXPECT_EQ(cfg.lat.rank, d + 2);
    ExceptionalSet ex = exceptional_curves(cfg.lat, cfg.l, cfg.curves);
    EXPECT_EQ(ex.negative.size(), static_cast<size_t>(2 * d));
    EXPECT_EQ(ex.bound, static_cast<size_t>(2 * d));
    EXPECT_EQ(ex.ray.size(), 1u);
    for (size_t i : ex.negative) EXPECT_EQ(intersect(cfg.lat, cfg.curves[i], cfg.curves[i]), -1);
    EXPECT_TRUE(ex.rankin.within);
  }
}

TEST(Exceptional, PlaneExampleAndAmple) {
  for (int d = 1; d <= 6; ++d) {
    auto cfg = plane_configuration(d);
    ExceptionalSet ex = exceptional_curves(cfg.lat, cfg.l, cfg.curves);
    EXPECT_EQ(ex.negative.size(), static_cast<size_t>(d));
    EXPECT_EQ(ex.bound, static_cast<size_t>(cfg.lat.rank - 1));
  }
  // ample on P1xP1 blown up at one point: 2 f1 + 2 f2 - e
  SurfaceLattice lat = blowup_lattice(SurfaceBase::P1xP1, 1);
  LatticeClass amp = combo(lat, {{0, 2}, {1, 2}, {2, -1}});
  std::vector<LatticeClass> curves{combo(lat, {{2, 1}}), combo(lat, {{0, 1}, {2, -1}}), combo(lat, {{1, 1}, {2, -1}})};
  EXPECT_TRUE(exceptional_curves(lat, amp, curves).negative.empty());
  // not nef against a listed curve
  try {
    exceptional_curves(lat, combo(lat, {{0, 1}, {2, 1}}), curves);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("curve 0"), std::string::npos);
  }
}

TEST(Exceptional, RayControlledModeTightensBound) {
  auto cfg = ruling_configuration(3);
  EXPECT_THROW(exceptional_curves(cfg.lat, cfg.l, cfg.curves, RayCase::RayControlled), Error);
  // only the exceptional curves: d <= rho - 2
  std::vector<LatticeClass> exc;
  for (int i = 1; i <= 3; ++i) exc.push_back(exceptional_class(cfg.lat, i));
  auto ex = exceptional_curves(cfg.lat, cfg.l, exc, RayCase::RayControlled);
  EXPECT_EQ(ex.negative.size(), 3u);
  EXPECT_EQ(ex.bound, 3u);
}

// Random subsets of the ruling example stay within bounds and feed Rankin valid data.
TEST(Exceptional, RandomSubconfigurationsProperty) {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 100; ++it) {
    int d = 1 + static_cast<int>(rng() % 8);
    auto cfg = ruling_configuration(d);
    std::vector<LatticeClass> sub;
    for (const auto& c : cfg.curves)
      if (rng() % 2) sub.push_back(c);
    auto ex = exceptional_curves(cfg.lat, cfg.l, sub);
    EXPECT_LE(ex.negative.size(), ex.bound);
    for (size_t a : ex.negative)
      for (size_t b : ex.negative)
        if (a != b) EXPECT_GE(intersect(cfg.lat, sub[a], sub[b]), 0);
  }
}

TEST(LEquivalence, ChainBounds) {
  auto cfg = ruling_configuration(4);
  std::vector<LatticeClass> fibers;
  for (int i = 0; i < 4; ++i) fibers.push_back(cfg.curves[i]);
  // fibers through distinct points are disjoint
  EXPECT_EQ(l_equivalence_bound(cfg.lat, fibers), 1);
  // fiber, its exceptional curve: a chain of two
  std::vector<LatticeClass> pair{cfg.curves[0], cfg.curves[4]};
  EXPECT_EQ(l_equivalence_bound(cfg.lat, pair), 2);
  // an abstract chain A1.A2 = A2.A3 = 1
  SurfaceLattice lat{SurfaceBase::P2, 2, 3, {{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}}};
  std::vector<LatticeClass> chain{{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}};
  EXPECT_EQ(l_equivalence_bound(lat, chain), 3);
  // monotone under adding curves, and never above the number of curves
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    auto c = ruling_configuration(1 + static_cast<int>(rng() % 6));
    std::vector<LatticeClass> s;
    long prev = 0;
    for (size_t i = 0; i < 2 * static_cast<size_t>(c.lat.d); ++i) {
      s.push_back(c.curves[i]);
      long b = l_equivalence_bound(c.lat, s);
      EXPECT_GE(b, prev);
      EXPECT_LE(b, static_cast<long>(s.size()));
      prev = b;
    }
  }
}
