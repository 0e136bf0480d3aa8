#include "nefcert/cohomology.hpp"

#include <algorithm>
#include <set>

namespace nefcert {

namespace {

using Elem = ResidueField::Elem;

struct PolyLess {
  bool operator()(const Poly& a, const Poly& b) const { return poly_less(a, b); }
};

long ceil_div(long a, long b) { return (a + b - 1) / b; }

Elem elem_add(const Elem& a, const Elem& b) {
  Elem r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

bool elem_zero(const Elem& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

// Exact tail: strip zeros on both ends and everything at or above `level`.
Series clean_tail(const Series& s, int level) {
  Series r;
  int hi = std::min(level, s.prec());
  int first = hi, last = s.val - 1;
  for (int e = s.val; e < hi; ++e) {
    if (!elem_zero(s.c[e - s.val])) {
      first = std::min(first, e);
      last = e;
    }
  }
  if (first >= hi) return r;
  r.val = first;
  r.c.assign(s.c.begin() + (first - s.val), s.c.begin() + (last + 1 - s.val));
  return r;
}

Elem tail_coeff(const Series& s, int e, size_t dim, const FiniteField* f) {
  if (e < s.val || e >= s.prec()) return Elem(dim, f->zero());
  return s.c[e - s.val];
}

}  // namespace

// ---------------------------------------------------------------- L(D)

FunctionElement RRSpace::combine(const Vec& c) const {
  const FiniteField* f = curve.field();
  Poly a(f), b(f);
  for (size_t k = 0; k < basis.size(); ++k) {
    if (c[k].is_zero()) continue;
    for (size_t j = 0; j < monomials.size(); ++j) {
      if (coords[k][j].is_zero()) continue;
      Poly m = Poly::monomial(c[k] * coords[k][j], monomials[j].first);
      if (monomials[j].second) b += m;
      else a += m;
    }
  }
  return FunctionElement(curve, a, b, den);
}

std::optional<Vec> RRSpace::coordinates(const FunctionElement& g) const {
  const FiniteField* f = curve.field();
  if (g.is_zero()) return Vec(basis.size(), f->zero());
  FunctionElement h = g * FunctionElement::from_poly(curve, den);
  if (h.C().degree() > 0) return std::nullopt;
  Fq scale = h.C().lead().inv();
  Vec amb(monomials.size(), f->zero());
  std::map<std::pair<int, int>, size_t> where;
  for (size_t j = 0; j < monomials.size(); ++j) where[monomials[j]] = j;
  for (int part = 0; part < 2; ++part) {
    const Poly& p = part ? h.B() : h.A();
    for (int i = 0; i <= p.degree(); ++i) {
      if (p.coeff(i).is_zero()) continue;
      auto it = where.find({i, part});
      if (it == where.end()) return std::nullopt;
      amb[it->second] = p.coeff(i) * scale;
    }
  }
  if (basis.empty()) return vec_is_zero(amb) ? std::optional<Vec>(Vec{}) : std::nullopt;
  Matrix m(f, monomials.size(), basis.size());
  for (size_t k = 0; k < basis.size(); ++k)
    for (size_t j = 0; j < monomials.size(); ++j) m.at(j, k) = coords[k][j];
  return solve(m, amb);
}

RRSpace rr_space(const Curve& c, const Divisor& d) {
  const FiniteField* f = c.field();
  RRSpace out;
  out.curve = c;
  out.divisor = d;

  std::map<Poly, long, PolyLess> ku;
  for (const auto& [p, n] : d.entries()) {
    if (p.is_infinite() || n <= 0) continue;
    long k = ceil_div(n, p.ramification());
    auto it = ku.find(p.u);
    if (it == ku.end()) ku[p.u] = k;
    else it->second = std::max(it->second, k);
  }
  out.den = Poly::constant(f->one());
  for (const auto& [u, k] : ku) out.den *= pow(u, static_cast<unsigned>(k));

  long bound = d[Place::infinity()] + 2 * out.den.degree();
  if (bound < 0) return out;
  for (long e = 0; e <= bound; ++e) {
    if (e % 2 == 0) out.monomials.push_back({static_cast<int>(e / 2), 0});
    else if (e >= 5) out.monomials.push_back({static_cast<int>((e - 5) / 2), 1});
  }
  size_t ncol = out.monomials.size();
  int maxdeg = 0;
  for (auto& m : out.monomials) maxdeg = std::max(maxdeg, m.first);

  std::set<Place, PlaceLess> check;
  for (const auto& [u, k] : ku)
    for (const auto& p : c.places_over(u)) check.insert(p);
  for (const auto& [p, n] : d.entries())
    if (!p.is_infinite() && n < 0) check.insert(p);

  Matrix cond(f, 0, ncol);
  for (const auto& p : check) {
    long vden = 0;
    auto it = ku.find(p.u);
    if (it != ku.end()) vden = it->second * p.ramification();
    int need = static_cast<int>(vden - d[p]);
    if (need <= 0) continue;
    LocalExpansion le(c, p);
    const SeriesOps& ops = le.ops();
    const ResidueField& k = le.field();
    Series xs = le.x(need), ys = le.y(need);
    std::vector<Series> xp{ops.constant(k.one(), need)};
    for (int i = 1; i <= maxdeg; ++i) xp.push_back(ops.mul(xp.back(), xs));
    std::vector<Series> cols;
    for (auto& m : out.monomials) cols.push_back(m.second ? ops.mul(xp[m.first], ys) : xp[m.first]);
    for (int e = 0; e < need; ++e) {
      for (int j = 0; j < k.dim(); ++j) {
        Vec row(ncol, f->zero());
        bool any = false;
        for (size_t col = 0; col < ncol; ++col) {
          row[col] = ops.coeff(cols[col], e)[j];
          any = any || !row[col].is_zero();
        }
        if (any) cond.append_row(row);
      }
    }
  }

  auto ker = kernel(cond);
  if (ker.empty()) return out;
  // Echelon by highest pole order at infinity.
  Matrix ech(f, ker.size(), ncol);
  for (size_t i = 0; i < ker.size(); ++i)
    for (size_t j = 0; j < ncol; ++j) ech.at(i, ncol - 1 - j) = ker[i][j];
  auto piv = rref(ech);
  for (size_t i = piv.size(); i-- > 0;) {
    Vec v(ncol);
    for (size_t j = 0; j < ncol; ++j) v[j] = ech.at(i, ncol - 1 - j);
    out.coords.push_back(v);
  }
  for (size_t i = 0; i < out.coords.size(); ++i) {
    Poly a(f), b(f);
    for (size_t j = 0; j < ncol; ++j) {
      if (out.coords[i][j].is_zero()) continue;
      Poly m = Poly::monomial(out.coords[i][j], out.monomials[j].first);
      if (out.monomials[j].second) b += m;
      else a += m;
    }
    out.basis.emplace_back(c, a, b, out.den);
  }
  return out;
}

long h1_dim(const Curve& c, const Divisor& d) {
  return static_cast<long>(rr_space(c, canonical_divisor(c) - d).dim());
}

bool in_rr_space(const FunctionElement& g, const Divisor& d) {
  if (g.is_zero()) return true;
  return (divisor_of_function(g) + d).is_effective();
}

std::vector<Differential> differentials_in(const Curve& c, const Divisor& d) {
  RRSpace s = rr_space(c, canonical_divisor(c) - d);
  FunctionElement yinv = FunctionElement::y(c).inverse();
  std::vector<Differential> out;
  for (const auto& b : s.basis) out.emplace_back(b * yinv);
  return out;
}

// ---------------------------------------------------------------- tails

TailClass tails_of(const Curve& c, const Divisor& bundle, const FunctionElement& g, const std::vector<Place>& places) {
  TailClass t;
  t.bundle = bundle;
  for (const auto& p : places) {
    LocalExpansion le(c, p);
    int level = static_cast<int>(-bundle[p]);
    Series s = clean_tail(le.expand(g, level), level);
    if (!s.c.empty()) t.tails[p] = s;
  }
  return t;
}

TailClass tail_add(const Curve& c, const TailClass& a, const TailClass& b) {
  if (a.bundle != b.bundle) throw Error("mismatched bundle divisors");
  const FiniteField* f = c.field();
  TailClass r;
  r.bundle = a.bundle;
  std::set<Place, PlaceLess> places;
  for (auto& kv : a.tails) places.insert(kv.first);
  for (auto& kv : b.tails) places.insert(kv.first);
  for (const auto& p : places) {
    int level = static_cast<int>(-a.bundle[p]);
    auto ia = a.tails.find(p), ib = b.tails.find(p);
    Series sa = ia == a.tails.end() ? Series{} : ia->second;
    Series sb = ib == b.tails.end() ? Series{} : ib->second;
    size_t dim = !sa.c.empty() ? sa.c[0].size() : sb.c[0].size();
    int lo = std::min(sa.c.empty() ? level : sa.val, sb.c.empty() ? level : sb.val);
    int hi = std::max(sa.prec(), sb.prec());
    if (sa.c.empty()) hi = sb.prec();
    if (sb.c.empty()) hi = sa.prec();
    Series s;
    s.val = lo;
    for (int e = lo; e < hi; ++e) s.c.push_back(elem_add(tail_coeff(sa, e, dim, f), tail_coeff(sb, e, dim, f)));
    s = clean_tail(s, level);
    if (!s.c.empty()) r.tails[p] = s;
  }
  return r;
}

TailClass tail_scale(const Curve& c, const TailClass& a, const Fq& s) {
  TailClass r;
  r.bundle = a.bundle;
  if (s.is_zero()) return r;
  for (const auto& [p, t] : a.tails) {
    Series u = t;
    for (auto& e : u.c)
      for (auto& x : e) x *= s;
    r.tails[p] = u;
  }
  return r;
}

// ---------------------------------------------------------------- H^1 model

H1Model::H1Model(const Curve& c, const Divisor& d) : c_(c), d_(d) {
  ninf_ = d[Place::infinity()];
  min_depth_ = static_cast<int>(std::max<long>(0, 3 - d.degree()));
  ensure_depth(min_depth_);
  int lo = static_cast<int>(-ninf_ - min_depth_);
  std::set<int> piv;
  for (auto& pr : pivots_) piv.insert(pr.first);
  for (int e = lo; e < -ninf_; ++e)
    if (!piv.count(e)) gaps_.push_back(e);
}

void H1Model::ensure_depth(int depth) const {
  if (depth <= depth_) return;
  const FiniteField* f = c_.field();
  RRSpace s = rr_space(c_, d_ + Divisor::of(Place::infinity(), depth));
  LocalExpansion le(c_, Place::infinity());
  int lo = static_cast<int>(-ninf_ - depth);
  Matrix m(f, 0, static_cast<size_t>(depth));
  for (const auto& b : s.basis) {
    Series ser = le.expand(b, static_cast<int>(-ninf_));
    Vec row(depth, f->zero());
    for (int e = lo; e < -ninf_; ++e) row[e - lo] = le.ops().coeff(ser, e)[0];
    if (!vec_is_zero(row)) m.append_row(row);
  }
  auto piv = rref(m);
  pivots_.clear();
  for (size_t i = 0; i < piv.size(); ++i) pivots_.push_back({lo + static_cast<int>(piv[i]), m.row(i)});
  depth_ = depth;
}

Vec H1Model::reduce_infinity(const Series& s) const {
  const FiniteField* f = c_.field();
  int need = min_depth_;
  if (!s.c.empty()) need = std::max<int>(need, static_cast<int>(-ninf_ - s.val));
  ensure_depth(need);
  int lo = static_cast<int>(-ninf_ - depth_);
  Vec v(depth_, f->zero());
  for (int e = std::max(lo, s.val); e < std::min<int>(static_cast<int>(-ninf_), s.prec()); ++e) v[e - lo] = s.c[e - s.val][0];
  for (const auto& [pe, row] : pivots_) {
    Fq a = v[pe - lo];
    if (a.is_zero()) continue;
    for (size_t j = 0; j < v.size(); ++j) v[j] -= a * row[j];
  }
  Vec out;
  for (int g : gaps_) out.push_back(v[g - lo]);
  return out;
}

Vec H1Model::coordinates(const TailClass& xi) const {
  if (xi.bundle != d_) throw Error("mismatched bundle divisors");
  const FiniteField* f = c_.field();
  Place inf = Place::infinity();
  Series inf_tail;
  std::vector<std::pair<Place, Series>> finite;
  Divisor extra;
  for (const auto& [p, s0] : xi.tails) {
    int level = static_cast<int>(-d_[p]);
    Series s = clean_tail(s0, level);
    if (s.c.empty()) continue;
    if (p.is_infinite()) {
      inf_tail = s;
      continue;
    }
    extra.add(p, level - s.val);
    finite.push_back({p, s});
  }
  if (!finite.empty()) {
    long m = std::max<long>(0, 3 - d_.degree());
    RRSpace s = rr_space(c_, d_ + extra + Divisor::of(inf, m));
    Matrix a(f, 0, s.dim());
    Vec rhs;
    for (const auto& [p, t] : finite) {
      LocalExpansion le(c_, p);
      int level = static_cast<int>(-d_[p]);
      std::vector<Series> ex;
      for (const auto& b : s.basis) ex.push_back(le.expand(b, level));
      size_t dim = t.c[0].size();
      for (int e = t.val; e < level; ++e) {
        Elem target = tail_coeff(t, e, dim, f);
        for (size_t j = 0; j < dim; ++j) {
          Vec row(s.dim(), f->zero());
          for (size_t i = 0; i < s.dim(); ++i) row[i] = le.ops().coeff(ex[i], e)[j];
          a.append_row(row);
          rhs.push_back(target[j]);
        }
      }
    }
    auto sol = solve(a, rhs);
    if (!sol) throw Error("tail system inconsistent");
    FunctionElement phi = s.combine(*sol);
    LocalExpansion le(c_, inf);
    Series ps = clean_tail(le.expand(phi, static_cast<int>(-ninf_)), static_cast<int>(-ninf_));
    TailClass tmp{d_, {}}, sub{d_, {}};
    if (!inf_tail.c.empty()) tmp.tails[inf] = inf_tail;
    if (!ps.c.empty()) sub.tails[inf] = ps;
    TailClass diff = tail_add(c_, tmp, tail_scale(c_, sub, -f->one()));
    auto it = diff.tails.find(inf);
    inf_tail = it == diff.tails.end() ? Series{} : it->second;
  }
  return reduce_infinity(inf_tail);
}

Series H1Model::infinity_series(const Vec& v) const {
  const FiniteField* f = c_.field();
  Series s;
  if (gaps_.empty()) return s;
  s.val = gaps_.front();
  s.c.assign(gaps_.back() - gaps_.front() + 1, Elem{f->zero()});
  for (size_t i = 0; i < gaps_.size(); ++i) s.c[gaps_[i] - s.val][0] = v[i];
  return clean_tail(s, static_cast<int>(-ninf_));
}

TailClass H1Model::representative(const Vec& v) const {
  TailClass t;
  t.bundle = d_;
  Series s = infinity_series(v);
  if (!s.c.empty()) t.tails[Place::infinity()] = s;
  return t;
}

TailClass tail_reduce(const Curve& c, const TailClass& xi) { return H1Model(c, xi.bundle).reduce(xi); }

Fq serre_pairing(const Curve& c, const TailClass& xi, const Differential& w) {
  const FiniteField* f = c.field();
  Fq total = f->zero();
  if (w.is_zero()) return total;
  if (!(divisor_of_differential(w) >= xi.bundle)) throw Error("mismatched bundle divisors");
  const FunctionElement& h = w.coefficient();
  for (const auto& [p, s0] : xi.tails) {
    int level = static_cast<int>(-xi.bundle[p]);
    Series s = clean_tail(s0, level);
    if (s.c.empty()) continue;
    LocalExpansion le(c, p);
    const ResidueField& k = le.field();
    int vh = static_cast<int>(le.valuation(h)), vd = le.dx_valuation();
    int top = -s.val;
    if (vh + vd >= top) continue;
    Series prod = le.ops().mul(le.expand(h, top - vd), le.dx(top - vh));
    Elem acc = k.zero();
    for (int e = s.val; e < s.prec(); ++e) acc = k.add(acc, k.mul(s.c[e - s.val], le.ops().coeff(prod, -1 - e)));
    total += k.trace(acc);
  }
  return total;
}

// ---------------------------------------------------------------- Frobenius

Matrix frobenius_twist(const Matrix& m, uint64_t e) {
  Matrix r = m;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).pow(static_cast<int64_t>(e));
  return r;
}

Vec SemilinearMap::apply(const Vec& v) const {
  Vec w = v;
  for (auto& x : w) x = x.pow(static_cast<int64_t>(twist));
  return matrix * w;
}

size_t SemilinearMap::rank() const { return nefcert::rank(matrix); }
bool SemilinearMap::injective() const { return rank() == matrix.cols(); }

SemilinearMap SemilinearMap::after(const SemilinearMap& other) const {
  return {matrix * frobenius_twist(other.matrix, twist), twist * other.twist};
}

CartierManin cartier_manin(const Curve& c) {
  const FiniteField* f = c.field();
  uint64_t p = f->p();
  Poly h = pow(c.f(), static_cast<unsigned>((p - 1) / 2));
  CartierManin cm;
  cm.matrix = Matrix(f, 2, 2);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) cm.matrix.at(i - 1, j - 1) = h.coeff(static_cast<int>(i * p) - j);
  cm.ordinary = !determinant(cm.matrix).is_zero();
  return cm;
}

PTorsionBundle make_p_torsion_bundle(const Curve& c, const MumfordClass& cls) {
  uint64_t p = c.field()->p();
  if (class_order(c, cls) != p) throw Error("class not of exact order p");
  PTorsionBundle l;
  l.cls = cls;
  l.rep = mumford_divisor(c, cls);
  RRSpace s = rr_space(c, l.rep * -static_cast<long>(p));
  if (s.dim() != 1) throw Error("trivialization space not one-dimensional");
  l.g = s.basis[0];
  return l;
}

SemilinearMap frobenius_h1(const Curve& c, const Divisor& source, const std::optional<PTorsionBundle>& triv) {
  if (!triv && !source.is_zero()) throw Error("missing trivialization");
  if (triv && source != -triv->rep) throw Error("source does not match trivialization");
  const FiniteField* f = c.field();
  uint64_t p = f->p();
  H1Model src(c, source), tgt(c, Divisor());
  LocalExpansion le(c, Place::infinity());
  FunctionElement ginv;
  if (triv) ginv = triv->g.inverse();
  SemilinearMap out{Matrix(f, tgt.dim(), src.dim()), p};
  for (size_t i = 0; i < src.dim(); ++i) {
    Vec e(src.dim(), f->zero());
    e[i] = f->one();
    Series s = src.infinity_series(e);
    Series sp;
    sp.val = static_cast<int>(p) * s.val;
    sp.c.assign(p * (s.c.size() - 1) + 1, Elem{f->zero()});
    for (size_t k = 0; k < s.c.size(); ++k) sp.c[p * k][0] = s.c[k][0].pow(static_cast<int64_t>(p));
    Series img = sp;
    if (triv) {
      Series gi = le.expand(ginv, -sp.val);
      img.val = sp.val + gi.val;
      img.c.assign(std::max(0, -img.val), Elem{f->zero()});
      for (int e2 = img.val; e2 < 0; ++e2) {
        Fq acc = f->zero();
        for (size_t k = 0; k < sp.c.size(); ++k) {
          int r = e2 - sp.val - static_cast<int>(k);
          if (r < gi.val) break;
          if (sp.c[k][0].is_zero()) continue;
          acc += sp.c[k][0] * le.ops().coeff(gi, r)[0];
        }
        img.c[e2 - img.val][0] = acc;
      }
    }
    TailClass t;
    t.tails[Place::infinity()] = img;
    Vec col = tgt.coordinates(t);
    for (size_t r = 0; r < col.size(); ++r) out.matrix.at(r, i) = col[r];
  }
  return out;
}

int p_rank(const Curve& c) {
  SemilinearMap m = frobenius_h1(c, Divisor(), std::nullopt);
  return static_cast<int>(m.after(m).rank());
}

Differential cartier_class(const Curve& c, const PTorsionBundle& l) {
  uint64_t p = c.field()->p();
  if (l.g.is_zero() || divisor_of_function(l.g) != l.rep * static_cast<long>(p)) throw Error("trivialization mismatch");
  Differential gamma(l.g.derivative() / l.g);
  if (gamma.is_zero()) throw Error("class not of exact order p");
  if (!divisor_of_differential(gamma).is_effective()) throw Error("cartier class not regular");
  return gamma;
}

Vec holomorphic_coordinates(const Differential& w) {
  const FiniteField* f = w.coefficient().curve().field();
  if (w.is_zero()) return Vec{f->zero(), f->zero()};
  FunctionElement t = w.coefficient() * FunctionElement::y(w.coefficient().curve());
  if (!t.B().is_zero() || t.C().degree() > 0 || t.A().degree() > 1) throw Error("differential not holomorphic");
  Fq s = t.C().lead().inv();
  return Vec{t.A().coeff(0) * s, t.A().coeff(1) * s};
}

}  // namespace nefcert
