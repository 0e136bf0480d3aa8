#include "nefcert/local.hpp"

#include <algorithm>

namespace nefcert {

using Elem = ResidueField::Elem;

ResidueField::ResidueField(const FiniteField* f, const Poly& u) : f_(f), u_(u), d_(u.degree()) {
  if (d_ < 1 || !u.is_monic()) throw Error("residue field modulus must be monic of positive degree");
  // X^m mod u for m < 2d - 1
  std::vector<Elem> powers;
  Elem e(d_, f_->zero());
  e[0] = f_->one();
  for (int m = 0; m < 2 * d_ - 1; ++m) {
    powers.push_back(e);
    Fq top = e[d_ - 1];
    Elem nxt(d_, f_->zero());
    for (int j = d_ - 1; j >= 1; --j) nxt[j] = e[j - 1];
    for (int j = 0; j < d_; ++j) nxt[j] = f_->add(nxt[j], f_->mul(top, f_->neg(u.coeff(j))));
    e = std::move(nxt);
  }
  for (int m = d_; m < 2 * d_ - 1; ++m) red_.push_back(powers[m]);
  // Tr(X^i) = sum_j [X^j](X^{i+j} mod u)
  power_traces_.assign(d_, f_->zero());
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) power_traces_[i] = f_->add(power_traces_[i], powers[i + j][j]);
}

ResidueField::ResidueField(const FiniteField* f, const Poly& u, const Elem& c) : ResidueField(f, u) {
  if (static_cast<int>(c.size()) != d_) throw Error("quadratic layer constant has wrong size");
  quad_ = true;
  c_ = c;
}

Elem ResidueField::one() const {
  Elem e = zero();
  e[0] = f_->one();
  return e;
}

Elem ResidueField::from_base(const Fq& a) const {
  Elem e = zero();
  e[0] = a;
  return e;
}

Elem ResidueField::from_poly(const Poly& a) const {
  Poly r = a % u_;
  Elem e = zero();
  for (int i = 0; i <= r.degree(); ++i) e[i] = r.coeff(i);
  return e;
}

Elem ResidueField::w() const {
  if (!quad_) throw Error("residue field has no quadratic layer");
  Elem e = zero();
  e[d_] = f_->one();
  return e;
}

Poly ResidueField::to_poly(const Elem& a) const { return Poly(f_, Elem(a.begin(), a.begin() + d_)); }

Elem ResidueField::base_add(const Elem& a, const Elem& b) const {
  Elem r(d_);
  for (int i = 0; i < d_; ++i) r[i] = f_->add(a[i], b[i]);
  return r;
}

Elem ResidueField::add(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = f_->add(a[i], b[i]);
  return r;
}

Elem ResidueField::neg(const Elem& a) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = f_->neg(a[i]);
  return r;
}

Elem ResidueField::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem ResidueField::scale(const Elem& a, const Fq& c) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = f_->mul(a[i], c);
  return r;
}

bool ResidueField::is_zero(const Elem& a) const {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

Elem ResidueField::base_mul(const Elem& a, const Elem& b) const {
  std::vector<Fq> prod(2 * d_ - 1, f_->zero());
  for (int i = 0; i < d_; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < d_; ++j) prod[i + j] = f_->add(prod[i + j], f_->mul(a[i], b[j]));
  }
  Elem r(prod.begin(), prod.begin() + d_);
  for (int m = d_; m < 2 * d_ - 1; ++m) {
    if (prod[m].is_zero()) continue;
    const Elem& red = red_[m - d_];
    for (int j = 0; j < d_; ++j) r[j] = f_->add(r[j], f_->mul(prod[m], red[j]));
  }
  return r;
}

Elem ResidueField::mul(const Elem& a, const Elem& b) const {
  if (!quad_) return base_mul(a, b);
  Elem a0(a.begin(), a.begin() + d_), a1(a.begin() + d_, a.end());
  Elem b0(b.begin(), b.begin() + d_), b1(b.begin() + d_, b.end());
  Elem r0 = base_add(base_mul(a0, b0), base_mul(c_, base_mul(a1, b1)));
  Elem r1 = base_add(base_mul(a0, b1), base_mul(a1, b0));
  r0.insert(r0.end(), r1.begin(), r1.end());
  return r0;
}

Elem ResidueField::base_inv(const Elem& a) const {
  Poly inv = inv_mod(Poly(f_, a), u_);
  Elem e(d_, f_->zero());
  for (int i = 0; i <= inv.degree(); ++i) e[i] = inv.coeff(i);
  return e;
}

Elem ResidueField::inv(const Elem& a) const {
  if (is_zero(a)) throw Error("division by zero");
  if (!quad_) return base_inv(a);
  Elem a0(a.begin(), a.begin() + d_), a1(a.begin() + d_, a.end());
  // a0^2 - c a1^2
  Elem ca = base_mul(c_, base_mul(a1, a1));
  Elem nn(d_);
  Elem aa = base_mul(a0, a0);
  for (int i = 0; i < d_; ++i) nn[i] = f_->add(aa[i], f_->neg(ca[i]));
  Elem ni = base_inv(nn);
  Elem r0 = base_mul(a0, ni), r1 = base_mul(a1, ni);
  for (auto& x : r1) x = f_->neg(x);
  r0.insert(r0.end(), r1.begin(), r1.end());
  return r0;
}

Elem ResidueField::pow(const Elem& a, uint64_t e) const {
  Elem r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

Fq ResidueField::trace(const Elem& a) const {
  Fq t = f_->zero();
  for (int i = 0; i < d_; ++i) t = f_->add(t, f_->mul(a[i], power_traces_[i]));
  if (quad_) t = f_->add(t, t);
  return t;
}

// ---------------------------------------------------------------------------

Series SeriesOps::exact(int val, std::vector<Elem> c, int prec) const {
  Series s;
  if (prec <= val) {
    s.val = val;
    return s;
  }
  s.val = val;
  c.resize(prec - val, k_->zero());
  s.c = std::move(c);
  return s;
}

Series SeriesOps::constant(const Elem& a, int prec) const { return exact(0, {a}, prec); }

Series SeriesOps::truncate(const Series& a, int prec) const {
  if (prec >= a.prec()) return a;
  Series s;
  if (prec <= a.val) {
    s.val = a.val;
    return s;
  }
  s.val = a.val;
  s.c.assign(a.c.begin(), a.c.begin() + (prec - a.val));
  return s;
}

Elem SeriesOps::coeff(const Series& a, int e) const {
  if (e < a.val) return k_->zero();
  if (e >= a.prec()) throw Error("series precision exhausted");
  return a.c[e - a.val];
}

Series SeriesOps::add(const Series& a, const Series& b) const {
  int prec = std::min(a.prec(), b.prec());
  int val = std::min(a.val, b.val);
  Series s;
  if (prec <= val) {
    s.val = prec;
    return s;
  }
  s.val = val;
  s.c.reserve(prec - val);
  for (int e = val; e < prec; ++e) {
    bool ina = e >= a.val, inb = e >= b.val;
    if (ina && inb)
      s.c.push_back(k_->add(a.c[e - a.val], b.c[e - b.val]));
    else if (ina)
      s.c.push_back(a.c[e - a.val]);
    else if (inb)
      s.c.push_back(b.c[e - b.val]);
    else
      s.c.push_back(k_->zero());
  }
  return s;
}

Series SeriesOps::neg(const Series& a) const {
  Series s = a;
  for (auto& x : s.c) x = k_->neg(x);
  return s;
}

Series SeriesOps::sub(const Series& a, const Series& b) const { return add(a, neg(b)); }

Series SeriesOps::mul(const Series& a, const Series& b) const {
  Series s;
  s.val = a.val + b.val;
  size_t n = std::min(a.c.size(), b.c.size());
  if (n == 0) return s;
  s.c.assign(n, k_->zero());
  for (size_t i = 0; i < n; ++i) {
    if (k_->is_zero(a.c[i])) continue;
    for (size_t j = 0; i + j < n; ++j) {
      if (k_->is_zero(b.c[j])) continue;
      s.c[i + j] = k_->add(s.c[i + j], k_->mul(a.c[i], b.c[j]));
    }
  }
  return s;
}

Series SeriesOps::scale(const Series& a, const Elem& c) const {
  Series s = a;
  for (auto& x : s.c) x = k_->mul(x, c);
  return s;
}

Series SeriesOps::trim(const Series& a) const {
  size_t i = 0;
  while (i < a.c.size() && k_->is_zero(a.c[i])) ++i;
  Series s;
  s.val = a.val + static_cast<int>(i);
  s.c.assign(a.c.begin() + i, a.c.end());
  return s;
}

Series SeriesOps::inv(const Series& a) const {
  Series t = trim(a);
  if (t.c.empty()) throw Error("series precision exhausted");
  size_t n = t.c.size();
  Elem i0 = k_->inv(t.c[0]);
  Series s;
  s.val = -t.val;
  s.c.assign(n, k_->zero());
  s.c[0] = i0;
  for (size_t i = 1; i < n; ++i) {
    Elem acc = k_->zero();
    for (size_t j = 1; j <= i; ++j) {
      if (k_->is_zero(t.c[j])) continue;
      acc = k_->add(acc, k_->mul(t.c[j], s.c[i - j]));
    }
    s.c[i] = k_->neg(k_->mul(acc, i0));
  }
  return s;
}

Series SeriesOps::frobenius(const Series& a) const {
  int p = static_cast<int>(k_->base()->p());
  Series s;
  s.val = a.val * p;
  s.c.assign(a.c.size() * p, k_->zero());
  for (size_t i = 0; i < a.c.size(); ++i) s.c[i * p] = k_->frobenius(a.c[i]);
  return s;
}

bool SeriesOps::known_zero(const Series& a) const {
  for (const auto& x : a.c)
    if (!k_->is_zero(x)) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<const ResidueField> make_residue_field(const Curve& c, const Place& p) {
  const FiniteField* F = c.field();
  if (p.is_infinite()) return std::make_shared<ResidueField>(F, Poly::x(F));
  if (p.kind == PlaceKind::Inert) {
    ResidueField base(F, p.u);
    return std::make_shared<ResidueField>(F, p.u, base.from_poly(c.f()));
  }
  return std::make_shared<ResidueField>(F, p.u);
}

// Coefficients of a(theta + t) in k.
std::vector<Elem> taylor(const ResidueField& k, const Poly& a, const Elem& theta) {
  std::vector<Elem> res;
  for (int i = a.degree(); i >= 0; --i) {
    // res = res * (theta + t) + a_i
    std::vector<Elem> nxt(res.size() + 1, k.zero());
    for (size_t j = 0; j < res.size(); ++j) {
      nxt[j] = k.add(nxt[j], k.mul(res[j], theta));
      nxt[j + 1] = k.add(nxt[j + 1], res[j]);
    }
    nxt[0] = k.add(nxt[0], k.from_base(a.coeff(i)));
    res = std::move(nxt);
  }
  return res;
}

}  // namespace

LocalExpansion::LocalExpansion(const Curve& c, const Place& p) : c_(c), p_(p), k_(make_residue_field(c, p)), ops_(k_) {
  const ResidueField& k = *k_;
  const Poly& f = c.f();
  if (p.is_infinite()) {
    for (int i = 0; i <= 5; ++i) fshift_.push_back(k.from_base(f.coeff(5 - i)));
    y_.push_back(k.one());
    return;
  }
  theta_ = k.theta();
  fshift_ = taylor(k, f, theta_);
  switch (p.kind) {
    case PlaceKind::Split:
      y_.push_back(k.from_poly(p.v));
      break;
    case PlaceKind::Inert:
      y_.push_back(k.w());
      break;
    default:
      break;
  }
}

void LocalExpansion::ensure_y(int n) const {
  const ResidueField& k = *k_;
  if (static_cast<int>(y_.size()) >= n) return;
  Elem inv2y0 = k.inv(k.add(y_[0], y_[0]));
  for (int m = static_cast<int>(y_.size()); m < n; ++m) {
    Elem s = m < static_cast<int>(fshift_.size()) ? fshift_[m] : k.zero();
    for (int i = 1; i < m; ++i) s = k.sub(s, k.mul(y_[i], y_[m - i]));
    y_.push_back(k.mul(s, inv2y0));
  }
}

void LocalExpansion::ensure_w(int n) const {
  // x - theta = W(T), T = t^2, where f(theta + W) = T; fixed point W = (T - sum_{i>=2} h_i W^i) / h_1.
  if (static_cast<int>(w_.size()) >= n) return;
  n = std::max(n, 2 * static_cast<int>(w_.size()));
  const ResidueField& k = *k_;
  auto mul_trunc = [&](const std::vector<Elem>& a, const std::vector<Elem>& b) {
    std::vector<Elem> r(n, k.zero());
    for (int i = 0; i < n; ++i) {
      if (k.is_zero(a[i])) continue;
      for (int j = 0; i + j < n; ++j)
        if (!k.is_zero(b[j])) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
    }
    return r;
  };
  Elem inv_h1 = k.inv(fshift_[1]);
  std::vector<Elem> W(n, k.zero());
  if (n > 1) W[1] = inv_h1;
  for (int it = 1; it < n; ++it) {
    std::vector<Elem> acc(n, k.zero()), pw = W;
    for (size_t i = 2; i < fshift_.size(); ++i) {
      pw = mul_trunc(pw, W);
      for (int m = 0; m < n; ++m) acc[m] = k.add(acc[m], k.mul(fshift_[i], pw[m]));
    }
    std::vector<Elem> nw(n, k.zero());
    for (int m = 0; m < n; ++m) {
      Elem t = k.neg(acc[m]);
      if (m == 1) t = k.add(t, k.one());
      nw[m] = k.mul(t, inv_h1);
    }
    W = std::move(nw);
  }
  w_ = std::move(W);
}

Series LocalExpansion::x(int prec) const {
  const ResidueField& k = *k_;
  if (p_.is_infinite()) return ops_.exact(-2, {k.one()}, prec);
  if (p_.kind != PlaceKind::Ramified) return ops_.exact(0, {theta_, k.one()}, prec);
  int n = std::max(prec, 1);
  ensure_w((n + 1) / 2 + 1);
  std::vector<Elem> c(n, k.zero());
  c[0] = theta_;
  for (int m = 1; 2 * m < n; ++m) c[2 * m] = w_[m];
  return ops_.exact(0, c, prec);
}

Series LocalExpansion::y(int prec) const {
  const ResidueField& k = *k_;
  if (p_.kind == PlaceKind::Ramified) return ops_.exact(1, {k.one()}, prec);
  if (p_.is_infinite()) {
    int len = prec + 5;
    if (len <= 0) return Series{-5, {}};
    ensure_y((len + 1) / 2 + 1);
    std::vector<Elem> c(len, k.zero());
    for (int m = 0; 2 * m < len; ++m) c[2 * m] = y_[m];
    return ops_.exact(-5, c, prec);
  }
  if (prec <= 0) return Series{0, {}};
  ensure_y(prec);
  return ops_.exact(0, std::vector<Elem>(y_.begin(), y_.begin() + prec), prec);
}

Series LocalExpansion::dx(int prec) const {
  const ResidueField& k = *k_;
  if (p_.is_infinite()) return ops_.exact(-3, {k.neg(k.add(k.one(), k.one()))}, prec);
  if (p_.kind != PlaceKind::Ramified) return ops_.exact(0, {k.one()}, prec);
  int len = prec - 1;
  if (len <= 0) return Series{1, {}};
  ensure_w(len / 2 + 2);
  std::vector<Elem> c(len, k.zero());
  const FiniteField* F = k.base();
  for (int m = 1; 2 * m - 2 < len; ++m) c[2 * m - 2] = k.scale(w_[m], F->from_int(2 * m));
  return ops_.exact(1, c, prec);
}

int LocalExpansion::dx_valuation() const {
  if (p_.is_infinite()) return -3;
  return p_.kind == PlaceKind::Ramified ? 1 : 0;
}

Series LocalExpansion::poly_at_x(const Poly& a, int prec) const {
  const ResidueField& k = *k_;
  if (a.is_zero()) return ops_.exact(prec, {}, prec);
  if (p_.is_infinite()) {
    int d = a.degree();
    std::vector<Elem> c(2 * d + 1, k.zero());
    for (int i = 0; i <= d; ++i) c[2 * (d - i)] = k.from_base(a.coeff(i));
    return ops_.exact(-2 * d, c, prec);
  }
  if (p_.kind != PlaceKind::Ramified) return ops_.exact(0, taylor(k, a, theta_), prec);
  if (prec <= 0) return Series{0, {}};
  Series X = x(prec);
  Series r = ops_.constant(k.zero(), prec);
  for (int i = a.degree(); i >= 0; --i) {
    r = ops_.mul(r, X);
    r = ops_.add(r, ops_.constant(k.from_base(a.coeff(i)), prec));
  }
  return r;
}

Series LocalExpansion::numerator(const Poly& a, const Poly& b, int prec) const {
  Series A = poly_at_x(a, prec);
  if (b.is_zero()) return A;
  Series B;
  if (p_.is_infinite()) {
    Series Bx = poly_at_x(b, prec + 5);
    Bx.val -= 5;  // times t^-5
    int len = prec - Bx.val;
    if (len <= 0) return ops_.add(A, Series{Bx.val, {}});
    Series R = y(len - 5);  // t^-5 R(t^2) known below len - 5
    R.val += 5;             // R(t^2)
    B = ops_.mul(Bx, R);
  } else {
    B = ops_.mul(poly_at_x(b, prec), y(prec));
  }
  return ops_.add(A, B);
}

long LocalExpansion::poly_valuation(const Poly& a) const {
  if (a.is_zero()) throw Error("valuation of zero");
  if (p_.is_infinite()) return -2L * a.degree();
  return static_cast<long>(e()) * ord(a, p_.u);
}

long LocalExpansion::numerator_valuation(const Poly& a, const Poly& b) const {
  if (a.is_zero() && b.is_zero()) throw Error("valuation of zero");
  if (p_.is_infinite()) {
    long v = a.is_zero() ? 1L << 40 : -2L * a.degree();
    if (!b.is_zero()) v = std::min(v, -2L * b.degree() - 5);
    return v;
  }
  if (b.is_zero()) return poly_valuation(a);
  if (a.is_zero()) return poly_valuation(b) + (p_.kind == PlaceKind::Ramified ? 1 : 0);
  Poly n = a * a - b * b * c_.f();
  int m = ord(n, p_.u);
  if (p_.kind == PlaceKind::Ramified) return m;
  if (p_.kind == PlaceKind::Inert) return m / 2;
  Series s = numerator(a, b, m + 1);
  for (int e = 0; e <= m; ++e)
    if (!k_->is_zero(ops_.coeff(s, e))) return e;
  throw Error("valuation bound violated");
}

long LocalExpansion::valuation(const FunctionElement& g) const {
  return numerator_valuation(g.A(), g.B()) - poly_valuation(g.C());
}

namespace {

Series drop_below(const Series& s, int v) {
  if (v <= s.val) return s;
  Series r;
  r.val = v;
  size_t skip = static_cast<size_t>(v - s.val);
  if (skip < s.c.size()) r.c.assign(s.c.begin() + skip, s.c.end());
  return r;
}

}  // namespace

Series LocalExpansion::expand(const FunctionElement& g, int prec) const {
  if (g.is_zero()) return ops_.exact(prec, {}, prec);
  long vn = numerator_valuation(g.A(), g.B());
  long vd = poly_valuation(g.C());
  long v = vn - vd;
  long r = prec - v;
  if (r <= 0) return ops_.exact(prec, {}, prec);
  Series num = drop_below(numerator(g.A(), g.B(), static_cast<int>(vn + r)), static_cast<int>(vn));
  if (g.C().degree() == 0) return num;
  Series den = drop_below(poly_at_x(g.C(), static_cast<int>(vd + r)), static_cast<int>(vd));
  return ops_.mul(num, ops_.inv(den));
}

Elem LocalExpansion::residue_local(const FunctionElement& h) const {
  if (h.is_zero()) return k_->zero();
  long vh = valuation(h);
  int vd = dx_valuation();
  if (vh + vd >= 0) return k_->zero();
  Series H = expand(h, -vd);
  Series D = dx(static_cast<int>(-vh));
  Series prod = ops_.mul(H, D);
  return ops_.coeff(prod, -1);
}

Fq LocalExpansion::residue(const FunctionElement& h) const { return k_->trace(residue_local(h)); }

}  // namespace nefcert
