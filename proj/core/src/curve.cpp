#include "nefcert/curve.hpp"

#include <algorithm>
#include <sstream>

#include "nefcert/local.hpp"

namespace nefcert {

int Place::degree() const {
  switch (kind) {
    case PlaceKind::Infinite:
      return 1;
    case PlaceKind::Inert:
      return 2 * u.degree();
    default:
      return u.degree();
  }
}

int Place::ramification() const {
  return (kind == PlaceKind::Infinite || kind == PlaceKind::Ramified) ? 2 : 1;
}

bool Place::operator==(const Place& o) const {
  if (kind != o.kind) return false;
  if (kind == PlaceKind::Infinite) return true;
  return u == o.u && v == o.v;
}

std::string Place::to_string() const {
  switch (kind) {
    case PlaceKind::Infinite:
      return "inf";
    case PlaceKind::Split:
      return "S(" + u.to_string() + "; y=" + v.to_string() + ")";
    case PlaceKind::Ramified:
      return "R(" + u.to_string() + ")";
    case PlaceKind::Inert:
      return "I(" + u.to_string() + ")";
  }
  return "?";
}

bool PlaceLess::operator()(const Place& a, const Place& b) const {
  bool ai = a.is_infinite(), bi = b.is_infinite();
  if (ai || bi) return ai && !bi;
  if (a.u != b.u) return poly_less(a.u, b.u);
  if (a.kind != b.kind) return a.kind < b.kind;
  return poly_less(a.v, b.v);
}

Divisor Divisor::of(const Place& p, long n) {
  Divisor d;
  d.add(p, n);
  return d;
}

void Divisor::add(const Place& p, long n) {
  if (n == 0) return;
  auto it = m_.find(p);
  if (it == m_.end()) {
    m_.emplace(p, n);
  } else {
    it->second += n;
    if (it->second == 0) m_.erase(it);
  }
}

long Divisor::operator[](const Place& p) const {
  auto it = m_.find(p);
  return it == m_.end() ? 0 : it->second;
}

long Divisor::degree() const {
  long d = 0;
  for (const auto& [p, n] : m_) d += n * p.degree();
  return d;
}

bool Divisor::is_effective() const {
  for (const auto& kv : m_)
    if (kv.second < 0) return false;
  return true;
}

Divisor Divisor::positive_part() const {
  Divisor r;
  for (const auto& [p, n] : m_)
    if (n > 0) r.add(p, n);
  return r;
}

Divisor Divisor::negative_part() const {
  Divisor r;
  for (const auto& [p, n] : m_)
    if (n < 0) r.add(p, -n);
  return r;
}

std::vector<Place> Divisor::support() const {
  std::vector<Place> s;
  for (const auto& kv : m_) s.push_back(kv.first);
  return s;
}

Divisor Divisor::operator+(const Divisor& o) const {
  Divisor r = *this;
  for (const auto& [p, n] : o.m_) r.add(p, n);
  return r;
}

Divisor Divisor::operator-(const Divisor& o) const {
  Divisor r = *this;
  for (const auto& [p, n] : o.m_) r.add(p, -n);
  return r;
}

Divisor Divisor::operator-() const { return *this * -1; }

Divisor Divisor::operator*(long k) const {
  Divisor r;
  for (const auto& [p, n] : m_) r.add(p, n * k);
  return r;
}

bool Divisor::operator==(const Divisor& o) const {
  if (m_.size() != o.m_.size()) return false;
  auto a = m_.begin();
  auto b = o.m_.begin();
  for (; a != m_.end(); ++a, ++b)
    if (!(a->first == b->first) || a->second != b->second) return false;
  return true;
}

bool Divisor::operator>=(const Divisor& o) const { return (*this - o).is_effective(); }

std::string Divisor::to_string() const {
  if (m_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, n] : m_) {
    if (!first) os << " + ";
    first = false;
    os << n << "*" << p.to_string();
  }
  return os.str();
}

Curve Curve::create(const FieldPtr& field, const Poly& f) {
  if (f.field() != field.get()) throw Error("mixed fields");
  if (f.degree() != 5) throw Error("unsupported degree");
  if (!f.is_monic()) throw Error("non-monic model");
  if (!is_squarefree(f)) throw Error("singular model");
  Curve c;
  c.d_ = std::make_shared<CurveData>(CurveData{field, f});
  return c;
}

const FieldPtr& Curve::field_ptr() const { return d_->field; }
const FiniteField* Curve::field() const { return d_->field.get(); }
const Poly& Curve::f() const { return d_->f; }

bool Curve::operator==(const Curve& o) const {
  if (d_ == o.d_) return true;
  if (!d_ || !o.d_) return false;
  return d_->field == o.d_->field && d_->f == o.d_->f;
}

std::string Curve::to_string() const { return "y^2 = " + f().to_string() + " over " + field()->describe(); }

std::vector<Place> Curve::places_over(const Poly& u) const {
  if (u.degree() < 1 || !u.is_monic()) throw Error("place polynomial must be monic of positive degree");
  Poly r = f() % u;
  if (r.is_zero()) return {Place{PlaceKind::Ramified, u, Poly(field())}};
  auto s = sqrt_mod(r, u);
  if (!s) return {Place{PlaceKind::Inert, u, Poly(field())}};
  Poly v1 = *s, v2 = (-*s) % u;
  if (poly_less(v2, v1)) std::swap(v1, v2);
  return {Place{PlaceKind::Split, u, v1}, Place{PlaceKind::Split, u, v2}};
}

std::vector<Place> Curve::rational_places() const {
  std::vector<Place> out{Place::infinity()};
  const FiniteField* F = field();
  for (uint64_t i = 0; i < F->q(); ++i) {
    Poly u(F, std::vector<Fq>{-F->from_index(i), F->one()});
    for (auto& p : places_over(u))
      if (p.degree() == 1) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), PlaceLess());
  return out;
}

std::vector<Place> Curve::places_of_degree(int d) const {
  std::vector<Place> out;
  if (d == 1) return rational_places();
  const FiniteField* F = field();
  for (int e : {d, d / 2}) {
    if (e < 1 || (e == d / 2 && d % 2)) continue;
    uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= F->q();
    for (uint64_t idx = 0; idx < count; ++idx) {
      std::vector<Fq> c(e + 1);
      uint64_t t = idx;
      for (int i = 0; i < e; ++i) {
        c[i] = F->from_index(t % F->q());
        t /= F->q();
      }
      c[e] = F->one();
      Poly u(F, std::move(c));
      if (!is_irreducible(u)) continue;
      for (auto& p : places_over(u))
        if (p.degree() == d) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), PlaceLess());
  return out;
}

std::vector<Place> Curve::weierstrass_places() const {
  std::vector<Place> out;
  for (const auto& fa : factor(f())) out.push_back(Place{PlaceKind::Ramified, fa.poly, Poly(field())});
  out.push_back(Place::infinity());
  return out;
}

Place Curve::random_place(Rng& rng, int max_degree) const {
  const FiniteField* F = field();
  std::uniform_int_distribution<int> dd(1, max_degree);
  for (;;) {
    int d = dd(rng);
    if (d == 1) {
      std::uniform_int_distribution<uint64_t> pick(0, F->q());
      if (pick(rng) == 0) return Place::infinity();
    }
    Poly u = random_irreducible(F, d, rng);
    auto ps = places_over(u);
    std::uniform_int_distribution<size_t> pick(0, ps.size() - 1);
    Place p = ps[pick(rng)];
    if (p.degree() <= max_degree) return p;
  }
}

void Curve::check_place(const Place& p) const {
  if (p.is_infinite()) return;
  if (p.u.field() != field()) throw Error("place over a different field");
  if (!p.u.is_monic() || !is_irreducible(p.u)) throw Error("place polynomial not monic irreducible");
  Poly r = f() % p.u;
  switch (p.kind) {
    case PlaceKind::Ramified:
      if (!r.is_zero()) throw Error("not a ramified place");
      break;
    case PlaceKind::Split:
      if (r.is_zero() || ((p.v * p.v) % p.u) != r || p.v.degree() >= p.u.degree())
        throw Error("invalid split place");
      break;
    case PlaceKind::Inert:
      if (r.is_zero() || is_square_mod(r, p.u)) throw Error("not an inert place");
      break;
    default:
      break;
  }
}

// ---------------------------------------------------------------------------

FunctionElement::FunctionElement(const Curve& c, const Poly& a, const Poly& b, const Poly& den)
    : c_(c), a_(a), b_(b), den_(den) {
  if (den_.is_zero()) throw Error("zero denominator");
  normalize();
}

void FunctionElement::normalize() {
  const FiniteField* F = c_.field();
  if (a_.field() == nullptr) a_ = Poly(F);
  if (b_.field() == nullptr) b_ = Poly(F);
  if (a_.is_zero() && b_.is_zero()) {
    den_ = Poly::constant(F->one());
    return;
  }
  Poly g = gcd(gcd(a_, b_), den_);
  if (g.degree() > 0) {
    a_ = a_ / g;
    b_ = b_ / g;
    den_ = den_ / g;
  }
  Fq inv = den_.lead().inv();
  if (!inv.is_one()) {
    a_ = a_ * inv;
    b_ = b_ * inv;
    den_ = den_ * inv;
  }
}

FunctionElement FunctionElement::from_rational(const Curve& c, const RationalFunction& a, const RationalFunction& b) {
  Poly l = a.den() / gcd(a.den(), b.den()) * b.den();
  return FunctionElement(c, a.num() * (l / a.den()), b.num() * (l / b.den()), l);
}

FunctionElement FunctionElement::constant(const Curve& c, const Fq& v) {
  return FunctionElement(c, Poly::constant(v), Poly(c.field()), Poly::constant(c.field()->one()));
}

FunctionElement FunctionElement::from_poly(const Curve& c, const Poly& a) {
  return FunctionElement(c, a, Poly(c.field()), Poly::constant(c.field()->one()));
}

FunctionElement FunctionElement::x(const Curve& c) { return from_poly(c, Poly::x(c.field())); }

FunctionElement FunctionElement::y(const Curve& c) {
  return FunctionElement(c, Poly(c.field()), Poly::constant(c.field()->one()), Poly::constant(c.field()->one()));
}

FunctionElement FunctionElement::operator+(const FunctionElement& o) const {
  if (den_ == o.den_) return FunctionElement(c_, a_ + o.a_, b_ + o.b_, den_);
  Poly g = gcd(den_, o.den_);
  Poly m1 = o.den_ / g, m2 = den_ / g;
  return FunctionElement(c_, a_ * m1 + o.a_ * m2, b_ * m1 + o.b_ * m2, den_ * m1);
}

FunctionElement FunctionElement::operator-() const { return FunctionElement(c_, -a_, -b_, den_); }
FunctionElement FunctionElement::operator-(const FunctionElement& o) const { return *this + (-o); }

FunctionElement FunctionElement::operator*(const FunctionElement& o) const {
  const Poly& f = c_.f();
  Poly a = a_ * o.a_;
  if (!b_.is_zero() && !o.b_.is_zero()) a += b_ * o.b_ * f;
  Poly b = a_ * o.b_ + b_ * o.a_;
  return FunctionElement(c_, a, b, den_ * o.den_);
}

FunctionElement FunctionElement::operator*(const Fq& k) const { return FunctionElement(c_, a_ * k, b_ * k, den_); }

FunctionElement FunctionElement::inverse() const {
  if (is_zero()) throw Error("division by zero");
  Poly n = norm_numerator();
  return FunctionElement(c_, den_ * a_, -(den_ * b_), n);
}

FunctionElement FunctionElement::operator/(const FunctionElement& o) const { return *this * o.inverse(); }

FunctionElement FunctionElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FunctionElement r = constant(c_, c_.field()->one()), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

FunctionElement FunctionElement::derivative() const {
  const FiniteField* F = c_.field();
  const Poly& f = c_.f();
  RationalFunction ra = a(), rb = b();
  RationalFunction db = rb.derivative() + rb * RationalFunction(f.derivative(), f * F->from_int(2));
  return from_rational(c_, ra.derivative(), db);
}

FunctionElement FunctionElement::frobenius() const {
  unsigned p = static_cast<unsigned>(c_.field()->p());
  Poly fp = nefcert::pow(c_.f(), (p - 1) / 2);
  return FunctionElement(c_, nefcert::pow(a_, p), nefcert::pow(b_, p) * fp, nefcert::pow(den_, p));
}

FunctionElement FunctionElement::conjugate() const { return FunctionElement(c_, a_, -b_, den_); }

RationalFunction FunctionElement::norm() const { return RationalFunction(norm_numerator(), den_ * den_); }

std::string FunctionElement::to_string() const {
  std::ostringstream os;
  os << "(" << a_.to_string() << ")";
  if (!b_.is_zero()) os << " + (" << b_.to_string() << ")*y";
  if (den_.degree() > 0) os << " / (" << den_.to_string() << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

bool is_square_mod(const Poly& a, const Poly& u) {
  Poly r = a % u;
  if (r.is_zero()) return true;
  return u.field()->is_square(resultant(u, r));
}

std::optional<Poly> sqrt_mod(const Poly& a, const Poly& u) {
  const FiniteField* F = u.field();
  Poly r = a % u;
  if (r.is_zero()) return r;
  if (!is_square_mod(r, u)) return std::nullopt;
  if (u.degree() == 1) return Poly::constant(*F->sqrt(r.coeff(0)));
  BigInt Q = 1;
  for (int i = 0; i < u.degree(); ++i) Q *= F->q();
  BigInt t = Q - 1;
  int s = 0;
  while ((t & 1) == 0) {
    t >>= 1;
    ++s;
  }
  Poly one = Poly::constant(F->one());
  Poly z;
  Rng rng(0x510e527fade682d1ull);
  for (uint64_t i = 0;; ++i) {
    Poly cand = i < F->q() ? Poly::x(F) + Poly::constant(F->from_index(i)) : random_poly(F, u.degree() - 1, rng, false);
    cand = cand % u;
    if (!cand.is_zero() && !is_square_mod(cand, u)) {
      z = cand;
      break;
    }
  }
  int m = s;
  Poly c = pow_mod(z, t, u);
  Poly T = pow_mod(r, t, u);
  Poly R = pow_mod(r, BigInt((t + 1) / 2), u);
  while (!T.is_one()) {
    int i = 0;
    Poly tt = T;
    while (!tt.is_one()) {
      tt = mul_mod(tt, tt, u);
      ++i;
      if (i >= m) throw Error("square root failed");
    }
    Poly b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, u);
    m = i;
    c = mul_mod(b, b, u);
    T = mul_mod(T, c, u);
    R = mul_mod(R, b, u);
  }
  return R;
}

long valuation(const Place& p, const FunctionElement& g) { return LocalExpansion(g.curve(), p).valuation(g); }

long valuation(const Place& p, const Differential& w) {
  LocalExpansion le(w.coefficient().curve(), p);
  return le.valuation(w.coefficient()) + le.dx_valuation();
}

Divisor divisor_of_function(const FunctionElement& g) {
  if (g.is_zero()) throw Error("divisor of zero function");
  const Curve& c = g.curve();
  std::vector<Poly> us;
  auto collect = [&](const Poly& a) {
    for (const auto& fa : factor(a))
      if (std::find(us.begin(), us.end(), fa.poly) == us.end()) us.push_back(fa.poly);
  };
  collect(g.norm_numerator());
  collect(g.C());
  Divisor d;
  for (const auto& u : us)
    for (const auto& p : c.places_over(u)) d.add(p, LocalExpansion(c, p).valuation(g));
  d.add(Place::infinity(), LocalExpansion(c, Place::infinity()).valuation(g));
  if (d.degree() != 0) throw Error("principal divisor of nonzero degree");
  return d;
}

Divisor dx_divisor(const Curve& c) {
  Divisor d;
  for (const auto& p : c.weierstrass_places())
    if (!p.is_infinite()) d.add(p, 1);
  d.add(Place::infinity(), -3);
  return d;
}

Divisor canonical_divisor(const Curve& c) { return Divisor::of(Place::infinity(), 2); }

Divisor divisor_of_differential(const Differential& w) {
  return divisor_of_function(w.coefficient()) + dx_divisor(w.coefficient().curve());
}

Fq residue(const Place& p, const Differential& w) {
  return LocalExpansion(w.coefficient().curve(), p).residue(w.coefficient());
}

uint64_t point_count(const Curve& c, int m, uint64_t guard) {
  const FiniteField* F = c.field();
  if (m < 1) throw Error("extension degree must be positive");
  long double size = 1;
  for (int i = 0; i < m; ++i) size *= static_cast<long double>(F->q());
  if (size > static_cast<long double>(guard)) throw Error("point count guard exceeded");
  const Poly& f = c.f();
  uint64_t n = 1;
  if (m == 1) {
    for (uint64_t i = 0; i < F->q(); ++i) {
      Fq v = f.eval(F->from_index(i));
      n += v.is_zero() ? 1 : (F->is_square(v) ? 2 : 0);
    }
    return n;
  }
  if (m == 2) {
    // F_{q^2} = F_q(s), s^2 = nu.
    Fq nu = F->non_square();
    for (uint64_t i = 0; i < F->q(); ++i) {
      Fq a = F->from_index(i);
      for (uint64_t j = 0; j < F->q(); ++j) {
        Fq b = F->from_index(j);
        Fq z0 = F->zero(), z1 = F->zero();
        for (int k = 5; k >= 0; --k) {
          Fq t0 = F->add(F->mul(z0, a), F->mul(nu, F->mul(z1, b)));
          Fq t1 = F->add(F->mul(z0, b), F->mul(z1, a));
          z0 = F->add(t0, f.coeff(k));
          z1 = t1;
        }
        if (z0.is_zero() && z1.is_zero()) {
          n += 1;
          continue;
        }
        Fq norm = F->add(F->mul(z0, z0), F->neg(F->mul(nu, F->mul(z1, z1))));
        if (F->is_square(norm)) n += 2;
      }
    }
    return n;
  }
  Rng rng(0x1f83d9abfb41bd6bull ^ static_cast<uint64_t>(m));
  Poly u = random_irreducible(F, m, rng);
  ResidueField k(F, u);
  uint64_t total = 1;
  for (int i = 0; i < m; ++i) total *= F->q();
  uint64_t half = (total - 1) / 2;
  ResidueField::Elem one = k.one();
  for (uint64_t idx = 0; idx < total; ++idx) {
    ResidueField::Elem z = k.zero();
    uint64_t t = idx;
    for (int i = 0; i < m; ++i) {
      z[i] = F->from_index(t % F->q());
      t /= F->q();
    }
    ResidueField::Elem v = k.zero();
    for (int j = 5; j >= 0; --j) v = k.add(k.mul(v, z), k.from_base(f.coeff(j)));
    if (k.is_zero(v)) {
      n += 1;
      continue;
    }
    if (k.pow(v, half) == one) n += 2;
  }
  return n;
}

}  // namespace nefcert
