#include "nefcert/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace nefcert {

namespace {

void need_field(const Poly& a, const Poly& b) {
  if (a.field() != b.field()) throw Error("mixed fields");
}

}  // namespace

Poly::Poly(const FiniteField* f, std::vector<Fq> coeffs) : f_(f), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.field() != f_) throw Error("mixed fields");
  trim();
}

Poly::Poly(const FiniteField* f, std::initializer_list<int64_t> ints) : f_(f) {
  for (auto v : ints) c_.push_back(f->from_int(v));
  trim();
}

Poly Poly::from_ints(const FiniteField* f, const std::vector<int64_t>& ints) {
  Poly r(f);
  for (auto v : ints) r.c_.push_back(f->from_int(v));
  r.trim();
  return r;
}

Poly Poly::constant(const Fq& c) { return Poly(c.field(), std::vector<Fq>{c}); }

Poly Poly::x(const FiniteField* f) { return Poly(f, std::vector<Fq>{f->zero(), f->one()}); }

Poly Poly::monomial(const Fq& c, int deg) {
  std::vector<Fq> v(deg + 1, c.field()->zero());
  v[deg] = c;
  return Poly(c.field(), std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Fq Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return f_->zero();
  return c_[i];
}

Fq Poly::lead() const { return c_.empty() ? f_->zero() : c_.back(); }

void Poly::set_coeff(int i, const Fq& c) {
  if (i >= static_cast<int>(c_.size())) c_.resize(i + 1, f_->zero());
  c_[i] = c;
  trim();
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  Fq inv = f_->inv(c_.back());
  Poly r(*this);
  for (auto& c : r.c_) c = f_->mul(c, inv);
  return r;
}

Fq Poly::eval(const Fq& a) const {
  Fq r = f_->zero();
  for (size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, a), c_[i]);
  return r;
}

Poly Poly::derivative() const {
  Poly r(f_);
  for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(f_->mul(c_[i], f_->from_int(static_cast<int64_t>(i))));
  r.trim();
  return r;
}

Poly Poly::compose(const Poly& g) const {
  Poly r(f_);
  for (size_t i = c_.size(); i-- > 0;) r = r * g + Poly::constant(c_[i]);
  return r;
}

Poly Poly::shift(int n) const {
  if (c_.empty() || n == 0) return *this;
  Poly r(f_);
  r.c_.assign(n, f_->zero());
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::truncate(int n) const {
  Poly r(*this);
  if (static_cast<int>(r.c_.size()) > n) r.c_.resize(std::max(n, 0));
  r.trim();
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  need_field(*this, o);
  Poly r(f_);
  size_t n = std::max(c_.size(), o.c_.size());
  r.c_.resize(n, f_->zero());
  for (size_t i = 0; i < n; ++i) {
    Fq a = i < c_.size() ? c_[i] : f_->zero();
    Fq b = i < o.c_.size() ? o.c_[i] : f_->zero();
    r.c_[i] = f_->add(a, b);
  }
  r.trim();
  return r;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& c : r.c_) c = f_->neg(c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  need_field(*this, o);
  Poly r(f_);
  if (c_.empty() || o.c_.empty()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, f_->zero());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] = f_->add(r.c_[i + j], f_->mul(c_[i], o.c_[j]));
  }
  r.trim();
  return r;
}

Poly Poly::operator*(const Fq& c) const {
  Poly r(*this);
  for (auto& a : r.c_) a = f_->mul(a, c);
  r.trim();
  return r;
}

Poly Poly::operator/(const Poly& o) const { return divmod(*this, o).first; }
Poly Poly::operator%(const Poly& o) const { return divmod(*this, o).second; }

std::vector<uint64_t> Poly::indices() const {
  std::vector<uint64_t> v;
  for (const auto& c : c_) v.push_back(c.index());
  return v;
}

Poly Poly::from_indices(const FiniteField* f, const std::vector<uint64_t>& idx) {
  Poly r(f);
  for (auto i : idx) r.c_.push_back(f->from_index(i));
  r.trim();
  return r;
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << "+";
    first = false;
    std::string cs = f_->to_string(c_[i]);
    bool compound = f_->k() > 1 && cs.find('+') != std::string::npos;
    if (i == 0) {
      os << (compound ? "(" + cs + ")" : cs);
      continue;
    }
    if (!c_[i].is_one()) os << (compound ? "(" + cs + ")" : cs) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    uint64_t x = a.coeff(i).index(), y = b.coeff(i).index();
    if (x != y) return x < y;
  }
  return false;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  need_field(a, b);
  if (b.is_zero()) throw Error("division by zero polynomial");
  const FiniteField* f = a.field();
  if (a.degree() < b.degree()) return {Poly(f), a};
  std::vector<Fq> r = a.coeffs();
  const auto& bc = b.coeffs();
  int db = b.degree();
  Fq inv = f->inv(b.lead());
  std::vector<Fq> q(a.degree() - db + 1, f->zero());
  for (int i = a.degree(); i >= db; --i) {
    Fq c = f->mul(r[i], inv);
    q[i - db] = c;
    if (c.is_zero()) continue;
    Fq nc = f->neg(c);
    for (int j = 0; j <= db; ++j) r[i - db + j] = f->add(r[i - db + j], f->mul(nc, bc[j]));
  }
  r.resize(db);
  return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

XGcd xgcd(const Poly& a, const Poly& b) {
  const FiniteField* f = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(f->one()), s1(f);
  Poly t0(f), t1 = Poly::constant(f->one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Fq inv = f->inv(r0.lead());
  return {r0 * inv, s0 * inv, t0 * inv};
}

Poly pow(const Poly& a, unsigned e) {
  Poly r = Poly::constant(a.field()->one());
  Poly b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly pow_mod(const Poly& a, const BigInt& e, const Poly& m) {
  if (e < 0) return pow_mod(inv_mod(a, m), BigInt(-e), m);
  Poly r = Poly::constant(a.field()->one()) % m;
  if (e == 0) return r;
  Poly b = a % m;
  for (long i = static_cast<long>(boost::multiprecision::msb(e)); i >= 0; --i) {
    r = mul_mod(r, r, m);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) r = mul_mod(r, b, m);
  }
  return r;
}

Poly pow_mod(const Poly& a, uint64_t e, const Poly& m) {
  Poly r = Poly::constant(a.field()->one()) % m;
  Poly b = a % m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    e >>= 1;
    if (e) b = mul_mod(b, b, m);
  }
  return r;
}

Poly inv_mod(const Poly& a, const Poly& m) {
  XGcd g = xgcd(a % m, m);
  if (!g.g.is_one()) throw Error("not invertible modulo polynomial");
  return g.s % m;
}

int ord(const Poly& a, const Poly& u) {
  if (a.is_zero()) throw Error("order of zero polynomial");
  int n = 0;
  Poly x = a;
  for (;;) {
    auto [q, r] = divmod(x, u);
    if (!r.is_zero()) return n;
    x = std::move(q);
    ++n;
  }
}

Poly frobenius_coeffs(const Poly& a) {
  std::vector<Fq> c = a.coeffs();
  for (auto& v : c) v = a.field()->frobenius(v);
  return Poly(a.field(), std::move(c));
}

Fq resultant(const Poly& a, const Poly& b) {
  need_field(a, b);
  const FiniteField* f = a.field();
  if (a.is_zero() || b.is_zero()) return f->zero();
  Fq acc = f->one();
  Poly A = a, B = b;
  for (;;) {
    int m = A.degree(), n = B.degree();
    if (n == 0) return f->mul(acc, f->pow(B.lead(), m));
    if (m == 0) return f->mul(acc, f->pow(A.lead(), n));
    if (m < n) {
      std::swap(A, B);
      if ((m * n) & 1) acc = f->neg(acc);
      continue;
    }
    Poly R = A % B;
    if (R.is_zero()) return f->zero();
    int k = R.degree();
    if ((m * n) & 1) acc = f->neg(acc);
    acc = f->mul(acc, f->pow(B.lead(), m - k));
    A = std::move(B);
    B = std::move(R);
  }
}

bool is_squarefree(const Poly& a) {
  if (a.degree() <= 0) return true;
  return gcd(a, a.derivative()).degree() == 0;
}

bool is_irreducible(const Poly& a) {
  int n = a.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const FiniteField* f = a.field();
  Poly m = a.monic();
  Poly x = Poly::x(f);
  Poly h = x;
  for (int i = 1; i <= n / 2; ++i) {
    h = pow_mod(h, f->q(), m);
    if (gcd(h - x, m).degree() != 0) return false;
  }
  return true;
}

namespace {

Poly pth_root(const Poly& a) {
  const FiniteField* f = a.field();
  int p = static_cast<int>(f->p());
  std::vector<Fq> c;
  for (int i = 0; i <= a.degree(); i += p) c.push_back(f->inverse_frobenius(a.coeff(i)));
  return Poly(f, std::move(c));
}

void sqf_rec(const Poly& f, int mult, std::vector<Factor>& out) {
  if (f.degree() <= 0) return;
  int p = static_cast<int>(f.field()->p());
  Poly fp = f.derivative();
  if (fp.is_zero()) {
    sqf_rec(pth_root(f), mult * p, out);
    return;
  }
  Poly c = gcd(f, fp);
  Poly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i * mult});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) sqf_rec(pth_root(c.monic()), mult * p, out);
}

std::vector<std::pair<Poly, int>> distinct_degree(Poly g) {
  const FiniteField* f = g.field();
  std::vector<std::pair<Poly, int>> out;
  Poly x = Poly::x(f);
  Poly h = x % g;
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    h = pow_mod(h, f->q(), g);
    Poly part = gcd(h - x, g);
    if (part.degree() > 0) {
      out.push_back({part, d});
      g = g / part;
      h = h % g;
    }
  }
  if (g.degree() > 0) out.push_back({g.monic(), g.degree()});
  return out;
}

void equal_degree(const Poly& g, int d, Rng& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const FiniteField* f = g.field();
  uint64_t half = (f->q() - 1) / 2;
  for (;;) {
    Poly a = random_poly(f, g.degree() - 1, rng, false);
    if (a.degree() <= 0) continue;
    // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q - 1)/2)
    Poly norm = a % g, cur = a % g;
    for (int i = 1; i < d; ++i) {
      cur = pow_mod(cur, f->q(), g);
      norm = mul_mod(norm, cur, g);
    }
    Poly b = pow_mod(norm, half, g);
    Poly s = gcd(b - Poly::constant(f->one()), g);
    if (s.degree() > 0 && s.degree() < g.degree()) {
      equal_degree(s, d, rng, out);
      equal_degree(g / s, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Factor> squarefree_decomposition(const Poly& a) {
  std::vector<Factor> out;
  if (a.degree() <= 0) return out;
  sqf_rec(a.monic(), 1, out);
  return out;
}

std::vector<Factor> factor(const Poly& a) {
  std::vector<Factor> out;
  if (a.degree() <= 0) return out;
  Rng rng(0x3c6ef372fe94f82bull);
  for (const auto& [part, mult] : squarefree_decomposition(a)) {
    for (const auto& [chunk, d] : distinct_degree(part)) {
      std::vector<Poly> irr;
      equal_degree(chunk, d, rng, irr);
      for (auto& u : irr) out.push_back({u, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& x, const Factor& y) { return poly_less(x.poly, y.poly); });
  return out;
}

std::vector<Fq> roots(const Poly& a) {
  std::vector<Fq> r;
  if (a.degree() <= 0) return r;
  for (const auto& fa : factor(a))
    if (fa.poly.degree() == 1) r.push_back(-fa.poly.coeff(0));
  std::sort(r.begin(), r.end(), index_less);
  return r;
}

Poly random_poly(const FiniteField* f, int deg, Rng& rng, bool monic) {
  if (deg < 0) return Poly(f);
  std::vector<Fq> c(deg + 1);
  for (int i = 0; i < deg; ++i) c[i] = f->random(rng);
  c[deg] = monic ? f->one() : f->random_nonzero(rng);
  return Poly(f, std::move(c));
}

Poly random_irreducible(const FiniteField* f, int deg, Rng& rng) {
  for (;;) {
    Poly u = random_poly(f, deg, rng, true);
    if (is_irreducible(u)) return u;
  }
}

RationalFunction::RationalFunction(const Poly& num) : num_(num), den_(Poly::constant(num.field()->one())) {}

RationalFunction::RationalFunction(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error("zero denominator");
  need_field(num, den);
  if (num.is_zero()) {
    num_ = num;
    den_ = Poly::constant(den.field()->one());
    return;
  }
  Poly g = gcd(num, den);
  Poly n = num / g, d = den / g;
  Fq inv = d.lead().inv();
  num_ = n * inv;
  den_ = d * inv;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_); }
RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}
RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw Error("division by zero");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}
RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

}  // namespace nefcert
