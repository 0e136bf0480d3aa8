#include "nefcert/jacobian.hpp"

#include <algorithm>
#include <cmath>

#include "nefcert/cohomology.hpp"

namespace nefcert {

MumfordClass jac_identity(const Curve& c) {
  return {Poly::constant(c.field()->one()), Poly(c.field())};
}

bool is_valid_class(const Curve& c, const MumfordClass& d) {
  if (d.u.field() != c.field() || !d.u.is_monic() || d.u.degree() > 2) return false;
  if (d.v.degree() >= d.u.degree()) return false;
  return ((c.f() - d.v * d.v) % d.u).is_zero();
}

MumfordClass cantor_reduce(const Curve& c, Poly u, Poly v) {
  const Poly& f = c.f();
  v = v % u;
  while (u.degree() > 2) {
    Poly nu = (f - v * v) / u;
    v = (-v) % nu;
    u = nu;
  }
  u = u.monic();
  v = v % u;
  return {u, v};
}

MumfordClass cantor_add(const Curve& c, const MumfordClass& a, const MumfordClass& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const Poly& f = c.f();
  XGcd g1 = xgcd(a.u, b.u);
  XGcd g2 = xgcd(g1.g, a.v + b.v);
  const Poly& d = g2.g;
  Poly s1 = g2.s * g1.s, s2 = g2.s * g1.t, s3 = g2.t;
  Poly u = (a.u * b.u) / (d * d);
  Poly v = (s1 * a.u * b.v + s2 * b.u * a.v + s3 * (a.v * b.v + f)) / d;
  return cantor_reduce(c, u, v % u);
}

MumfordClass cantor_neg(const Curve& c, const MumfordClass& a) { return {a.u, (-a.v) % a.u}; }

MumfordClass cantor_mul(const Curve& c, const MumfordClass& a, int64_t n) {
  if (n < 0) return cantor_mul(c, cantor_neg(c, a), -n);
  MumfordClass r = jac_identity(c), b = a;
  while (n) {
    if (n & 1) r = cantor_add(c, r, b);
    n >>= 1;
    if (n) b = cantor_add(c, b, b);
  }
  return r;
}

namespace {

MumfordClass place_class(const Curve& c, const Place& p) {
  switch (p.kind) {
    case PlaceKind::Split:
      return cantor_reduce(c, p.u, p.v);
    case PlaceKind::Ramified:
      return cantor_reduce(c, p.u, Poly(c.field()));
    default:
      return jac_identity(c);
  }
}

}  // namespace

MumfordClass random_class(const Curve& c, Rng& rng) {
  MumfordClass r = jac_identity(c);
  for (int i = 0; i < 2; ++i) {
    Place p = c.random_place(rng, 2);
    r = cantor_add(c, r, place_class(c, p));
  }
  return r;
}

MumfordClass divisor_class(const Curve& c, const Divisor& d) {
  MumfordClass r = jac_identity(c);
  for (const auto& [p, n] : d.entries()) r = cantor_add(c, r, cantor_mul(c, place_class(c, p), n));
  return r;
}

Divisor mumford_support(const Curve& c, const MumfordClass& d) {
  Divisor out;
  for (const auto& fa : factor(d.u)) {
    Poly w = fa.poly;
    Poly vw = d.v % w;
    if ((c.f() % w).is_zero())
      out.add(Place{PlaceKind::Ramified, w, Poly(c.field())}, fa.mult);
    else
      out.add(Place{PlaceKind::Split, w, vw}, fa.mult);
  }
  return out;
}

Divisor mumford_divisor(const Curve& c, const MumfordClass& d) {
  Divisor out = mumford_support(c, d);
  out.add(Place::infinity(), -d.u.degree());
  return out;
}

FrobeniusData frobenius_data(const Curve& c) {
  FrobeniusData fd;
  uint64_t q = c.field()->q();
  fd.q = q;
  fd.n1 = point_count(c, 1);
  fd.n2 = point_count(c, 2);
  int64_t qi = static_cast<int64_t>(q);
  int64_t s1 = qi + 1 - static_cast<int64_t>(fd.n1);
  int64_t s2 = qi * qi + 1 - static_cast<int64_t>(fd.n2);
  if ((s1 * s1 - s2) % 2 != 0) throw Error("inconsistent point counts");
  fd.a1 = s1;
  fd.a2 = (s1 * s1 - s2) / 2;
  fd.charpoly = {qi * qi, -qi * s1, fd.a2, -s1, 1};
  // |a1| <= 4 sqrt(q), 2 sqrt(q)|a1| - 2q <= a2 <= a1^2/4 + 2q
  long double sq = std::sqrt(static_cast<long double>(q));
  if (s1 * s1 > 16 * qi) throw Error("Weil bound violated");
  if (static_cast<long double>(fd.a2) < 2 * sq * std::fabs(static_cast<long double>(s1)) - 2 * qi - 1e-9 ||
      4 * fd.a2 > s1 * s1 + 8 * qi)
    throw Error("Weil bound violated");
  int64_t order = 0;
  for (auto co : fd.charpoly) order += co;
  fd.jacobian_order = static_cast<uint64_t>(order);
  int64_t n1 = static_cast<int64_t>(fd.n1), n2 = static_cast<int64_t>(fd.n2);
  if (order != (n1 * n1 + n2) / 2 - qi) throw Error("inconsistent jacobian order");
  return fd;
}

uint64_t jacobian_order(const Curve& c) { return frobenius_data(c).jacobian_order; }

uint64_t class_order(const Curve& c, const MumfordClass& d) {
  uint64_t n = jacobian_order(c);
  if (!cantor_mul(c, d, static_cast<int64_t>(n)).is_zero()) throw Error("class order does not divide group order");
  for (uint64_t l : prime_factors(n)) {
    while (n % l == 0 && cantor_mul(c, d, static_cast<int64_t>(n / l)).is_zero()) n /= l;
  }
  return n;
}

bool class_less(const MumfordClass& a, const MumfordClass& b) {
  if (a.u != b.u) return poly_less(a.u, b.u);
  return poly_less(a.v, b.v);
}

std::vector<MumfordClass> find_p_torsion(const Curve& c, uint64_t seed) {
  if (!cartier_manin(c).ordinary) throw Error("expected ordinary");
  uint64_t p = c.field()->p();
  uint64_t n = jacobian_order(c);
  std::vector<MumfordClass> out;
  if (n % p != 0) return out;
  uint64_t m = n;
  while (m % p == 0) m /= p;
  Rng rng(seed);
  for (int trial = 0; trial < 48; ++trial) {
    MumfordClass t = cantor_mul(c, random_class(c, rng), static_cast<int64_t>(m));
    if (t.is_zero()) continue;
    for (;;) {
      MumfordClass next = cantor_mul(c, t, static_cast<int64_t>(p));
      if (next.is_zero()) break;
      t = next;
    }
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  std::sort(out.begin(), out.end(), class_less);
  return out;
}

std::vector<MumfordClass> p_torsion_subgroup(const Curve& c, uint64_t seed) {
  auto gens = find_p_torsion(c, seed);
  std::vector<MumfordClass> group{jac_identity(c)};
  for (const auto& g : gens) {
    if (std::find(group.begin(), group.end(), g) != group.end()) continue;
    std::vector<MumfordClass> next;
    for (const auto& h : group) {
      MumfordClass cur = h;
      for (uint64_t i = 0; i < c.field()->p(); ++i) {
        next.push_back(cur);
        cur = cantor_add(c, cur, g);
      }
    }
    group = std::move(next);
  }
  std::vector<MumfordClass> out;
  for (auto& g : group)
    if (!g.is_zero()) out.push_back(g);
  std::sort(out.begin(), out.end(), class_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace nefcert
