#include "nefcert/obstruction.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace nefcert {

namespace {

constexpr long kInfVal = LONG_MAX / 4;

long val_or_inf(const Place& p, const FunctionElement& g) { return g.is_zero() ? kInfVal : valuation(p, g); }

FunctionElement poly_in(const Curve& c, const Poly& a, const FunctionElement& t) {
  FunctionElement r = FunctionElement::constant(c, c.field()->zero());
  for (int i = a.degree(); i >= 0; --i) r = r * t + FunctionElement::constant(c, a.coeff(i));
  return r;
}

// h - h(P) (or 1/h) is a uniformizer at P.
bool uniformizes(const LocalExpansion& le, const FunctionElement& h) {
  long v = le.valuation(h);
  if (v < 0) return v == -1;
  Series s = le.expand(h, 2);
  return !le.field().is_zero(le.ops().coeff(s, 1));
}

}  // namespace

bool BiForm::is_zero() const {
  for (const auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

BiForm BiForm::d_dx() const {
  const FiniteField* f = c[0].field();
  BiForm r(f);
  for (int i = 1; i <= kX; ++i)
    for (int j = 0; j <= kZ; ++j) r.at(i - 1, j) = at(i, j) * f->from_int(i);
  return r;
}

BiForm BiForm::d_dz() const {
  const FiniteField* f = c[0].field();
  BiForm r(f);
  for (int i = 0; i <= kX; ++i)
    for (int j = 1; j <= kZ; ++j) r.at(i, j - 1) = at(i, j) * f->from_int(j);
  return r;
}

FunctionElement evaluate_form(const EmbeddingData& e, const BiForm& g) {
  const Curve& c = e.curve;
  FunctionElement x = FunctionElement::x(c);
  FunctionElement r = FunctionElement::constant(c, c.field()->zero());
  for (int i = BiForm::kX; i >= 0; --i) {
    FunctionElement row = FunctionElement::constant(c, c.field()->zero());
    for (int j = BiForm::kZ; j >= 0; --j) row = row * e.z + FunctionElement::constant(c, g.at(i, j));
    r = r * x + row;
  }
  return r;
}

Divisor form_pole_divisor(const EmbeddingData& e) { return Divisor::of(Place::infinity(), 6) + e.a_div * 2; }

std::pair<long, long> ruling_degrees(const EmbeddingData& e) {
  long dz = divisor_of_function(e.z).negative_part().degree();
  long dx = divisor_of_function(FunctionElement::x(e.curve)).negative_part().degree();
  return {dz, dx};
}

std::pair<long, long> tangent_degrees(const EmbeddingData& e) {
  auto [dz, dx] = ruling_degrees(e);
  return {2 * dx, 2 * dz};
}

EmbeddingData embed_bidegree_2_3(const Curve& c, const Divisor& a_div) {
  const FiniteField* f = c.field();
  Place inf = Place::infinity();
  if (a_div.degree() != 3 || !a_div.is_effective()) throw Error("pencil divisor must be effective of degree 3");
  if (divisor_class(c, a_div - Divisor::of(inf, 3)).u.degree() < 2) throw Error("excluded pencil");
  RRSpace sa = rr_space(c, a_div);
  if (sa.dim() != 2) throw Error("h0(A) != 2");
  EmbeddingData e;
  e.curve = c;
  e.a_div = a_div;
  for (const auto& b : sa.basis)
    if (!b.is_constant()) {
      e.z = b;
      break;
    }
  if (e.z.is_zero()) throw Error("h0(A) != 2");
  if (divisor_of_function(e.z).negative_part() != a_div) throw Error("pencil has base points");
  e.k_basis = {FunctionElement::constant(c, f->one()), FunctionElement::x(c)};
  e.a_basis = {FunctionElement::constant(c, f->one()), e.z};

  // F spans the relations among x^i z^j inside L(6 infinity + 2A).
  RRSpace big = rr_space(c, Divisor::of(inf, 6) + a_div * 2);
  const size_t nmon = (BiForm::kX + 1) * (BiForm::kZ + 1);
  Matrix m(f, big.dim(), nmon);
  FunctionElement xi = FunctionElement::constant(c, f->one());
  for (int i = 0; i <= BiForm::kX; ++i) {
    FunctionElement mono = xi;
    for (int j = 0; j <= BiForm::kZ; ++j) {
      auto co = big.coordinates(mono);
      if (!co) throw Error("embedding degenerate");
      for (size_t r = 0; r < big.dim(); ++r) m.at(r, i * (BiForm::kZ + 1) + j) = (*co)[r];
      mono = mono * e.z;
    }
    xi = xi * FunctionElement::x(c);
  }
  auto ker = kernel(m);
  if (ker.size() != 1) throw Error("embedding degenerate");
  Vec k = ker[0];
  Fq lead = f->zero();
  for (size_t i = nmon; i-- > 0;)
    if (!k[i].is_zero()) {
      lead = k[i];
      break;
    }
  e.form = BiForm(f);
  for (size_t i = 0; i < nmon; ++i) e.form.c[i] = k[i] / lead;

  // squarefree image: F = a z^2 + b z + c with coprime coefficients and nonzero discriminant
  Poly pa(f), pb(f), pc(f);
  for (int i = 0; i <= BiForm::kX; ++i) {
    pa.set_coeff(i, e.form.at(i, 2));
    pb.set_coeff(i, e.form.at(i, 1));
    pc.set_coeff(i, e.form.at(i, 0));
  }
  Poly content = gcd(gcd(pa, pb), pc);
  Poly disc = pb * pb - pa * pc * f->from_int(4);
  if (content.degree() > 0 || disc.is_zero()) throw Error("image form not squarefree");

  // separation and immersion on places of degree <= 2
  FunctionElement x = FunctionElement::x(c);
  std::vector<Place> low = c.places_of_degree(1);
  for (const auto& p : c.places_of_degree(2)) low.push_back(p);
  for (const auto& p : low) {
    LocalExpansion le(c, p);
    if (!uniformizes(le, x) && !uniformizes(le, e.z)) throw Error("embedding not an immersion");
    if (p.kind != PlaceKind::Split) continue;
    Place q{PlaceKind::Split, p.u, (-p.v) % p.u};
    LocalExpansion lq(c, q);
    long vp = le.valuation(e.z), vq = lq.valuation(e.z);
    if (vp < 0 && vq < 0) throw Error("embedding not injective");
    if (vp >= 0 && vq >= 0 && le.ops().coeff(le.expand(e.z, 1), 0) == lq.ops().coeff(lq.expand(e.z, 1), 0))
      throw Error("embedding not injective");
  }
  return e;
}

NormalBundle normal_bundle_divisor(const EmbeddingData& e, const BiForm& aux) {
  NormalBundle n;
  n.aux = aux;
  n.g = evaluate_form(e, aux);
  if (n.g.is_zero()) throw Error("auxiliary form vanishes on curve");
  n.n_div = divisor_of_function(n.g) + form_pole_divisor(e);
  if (!n.n_div.is_effective() || n.n_div.degree() != 12) throw Error("normal divisor malformed");
  return n;
}

NormalBundle random_normal_bundle(const EmbeddingData& e, Rng& rng) {
  const FiniteField* f = e.curve.field();
  for (int t = 0; t < 64; ++t) {
    BiForm g(f);
    for (auto& x : g.c) x = f->random(rng);
    if (evaluate_form(e, g).is_zero()) continue;
    return normal_bundle_divisor(e, g);
  }
  throw Error("auxiliary form vanishes on curve");
}

SplittingChoice SplittingChoice::standard(const FiniteField* f) {
  return {Poly(f), Poly::constant(f->one()), false};
}

TailClass beta_class(const EmbeddingData& e, const SplittingChoice& choice) {
  const Curve& c = e.curve;
  const FiniteField* f = c.field();
  Place inf = Place::infinity();
  if (choice.a.degree() > 2 || choice.b.degree() > 2) throw Error("splitting field not global");
  Divisor n0 = form_pole_divisor(e);
  Divisor bundle = -(n0 + dx_divisor(c));
  FunctionElement fx = evaluate_form(e, e.form.d_dx());
  FunctionElement fz = evaluate_form(e, e.form.d_dz());
  FunctionElement v0x = poly_in(c, choice.a, FunctionElement::x(c));
  FunctionElement v0f = v0x * fx + poly_in(c, choice.b, e.z) * fz;
  if (v0f.is_zero()) throw Error("degenerate chart data");
  FunctionElement ratio0 = v0x / v0f;
  FunctionElement ratio_x = fx.is_zero() ? FunctionElement() : fx.inverse();

  std::set<Place, PlaceLess> cand;
  for (const auto& p : divisor_of_function(v0f).support()) cand.insert(p);
  for (const auto& p : n0.support()) cand.insert(p);
  cand.insert(inf);

  TailClass out;
  out.bundle = bundle;
  for (const auto& p : cand) {
    long nb = n0[p];
    if (val_or_inf(p, v0f) + nb == 0) continue;  // v0 splits N here
    long ax = val_or_inf(p, fx) + nb - (p.is_infinite() ? 4 : 0);
    long az = val_or_inf(p, fz) + nb - 2 * e.a_div[p];
    bool x_ok = ax == 0, z_ok = az == 0;
    if (!x_ok && !z_ok) throw Error("degenerate chart data");
    bool use_x = choice.prefer_x ? x_ok : !z_ok;
    FunctionElement xi = use_x ? ratio0 - ratio_x : ratio0;
    if (xi.is_zero()) continue;
    TailClass t = tails_of(c, bundle, xi, {p});
    out = tail_add(c, out, t);
  }
  return out;
}

Fq BetaFunctional::evaluate_coords(const Vec& v) const {
  Fq acc = space.curve.field()->zero();
  for (size_t i = 0; i < v.size(); ++i) acc += v[i] * values[i];
  return acc;
}

Fq BetaFunctional::evaluate(const FunctionElement& s) const {
  auto co = space.coordinates(s);
  if (!co) throw Error("degree bookkeeping mismatch");
  return evaluate_coords(*co);
}

BetaFunctional beta_functional(const EmbeddingData& e, const NormalBundle& n, const SplittingChoice& choice) {
  const Curve& c = e.curve;
  BetaFunctional b;
  b.space = rr_space(c, n.n_div + Divisor::of(Place::infinity(), 4));
  TailClass xi = beta_class(e, choice);
  FunctionElement y = FunctionElement::y(c);
  FunctionElement scale = n.g / (y * y);
  for (const auto& phi : b.space.basis) b.values.push_back(serre_pairing(c, xi, Differential(phi * scale)));
  return b;
}

BetaFunctional beta_functional(const EmbeddingData& e, const NormalBundle& n) {
  return beta_functional(e, n, SplittingChoice::standard(e.curve.field()));
}

bool beta_nonzero_on(const BetaFunctional& beta, const Divisor& b) {
  RRSpace sub = rr_space(beta.space.curve, beta.space.divisor - b);
  for (const auto& s : sub.basis)
    if (!beta.evaluate(s).is_zero()) return true;
  return false;
}

FunctionElement alpha_section(const Curve& c, const PTorsionBundle& l) {
  RRSpace s = rr_space(c, canonical_divisor(c) + l.rep);
  if (s.dim() != 1) throw Error("h0(K+L) != 1");
  return s.basis[0];
}

bool twelve_distinct_rational(const Divisor& d) {
  if (d.entries().size() != 12) return false;
  for (const auto& [p, n] : d.entries())
    if (n != 1 || p.degree() != 1) return false;
  return true;
}

std::optional<DeltaChoice> choose_delta(const EmbeddingData& e, const NormalBundle& n, const PTorsionBundle& l, Rng& rng,
                                        int tries) {
  const Curve& c = e.curve;
  Place inf = Place::infinity();
  Divisor target = n.n_div - l.rep;
  if (rr_space(c, target).dim() != 11) throw Error("Riemann-Roch violation");
  std::vector<Place> pts = c.rational_places();
  if (pts.size() < 12) return std::nullopt;
  for (int t = 0; t < tries; ++t) {
    std::vector<Place> pick = pts;
    for (size_t i = 0; i < 10; ++i) std::swap(pick[i], pick[i + rng() % (pick.size() - i)]);
    Divisor d;
    for (size_t i = 0; i < 10; ++i) d.add(pick[i], 1);
    MumfordClass rest = divisor_class(c, target - d - Divisor::of(inf, 2));
    d += mumford_support(c, rest) + Divisor::of(inf, 2 - rest.u.degree());
    if (!twelve_distinct_rational(d)) continue;
    RRSpace s = rr_space(c, target - d);
    if (s.dim() != 1) throw Error("Riemann-Roch violation");
    return DeltaChoice{s.basis[0], d};
  }
  return std::nullopt;
}

Fq obstruction_scalar(const BetaFunctional& beta, const FunctionElement& delta, const Differential& gamma,
                      const FunctionElement& alpha) {
  if (alpha.is_zero()) throw Error("alpha is zero");
  const Curve& c = alpha.curve();
  if (gamma.is_zero() || delta.is_zero()) return c.field()->zero();
  FunctionElement s = delta * (gamma.coefficient() * FunctionElement::y(c)) * alpha;
  return beta.evaluate(s);
}

ProductImage multiplication_image(const Curve& c, const Divisor& d1, const Divisor& d2) {
  RRSpace a = rr_space(c, d1), b = rr_space(c, d2), t = rr_space(c, d1 + d2);
  Matrix m(c.field(), 0, t.dim());
  for (const auto& u : a.basis)
    for (const auto& v : b.basis) {
      auto co = t.coordinates(u * v);
      if (!co) throw Error("product outside target space");
      m.append_row(*co);
    }
  ProductImage out;
  out.target_dim = t.dim();
  auto piv = rref(m);
  out.rank = piv.size();
  for (size_t i = 0; i < piv.size(); ++i) out.span.push_back(m.row(i));
  return out;
}

}  // namespace nefcert
