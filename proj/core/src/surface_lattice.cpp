#include "nefcert/surface_lattice.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace nefcert {

namespace {

RatVec to_rat(const LatticeClass& a) { return RatVec(a.coords.begin(), a.coords.end()); }

Rational form_apply(const RatMatrix& g, const RatVec& a, const RatVec& b) {
  Rational acc = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) acc += a[i] * g[i][j] * b[j];
  }
  return acc;
}

RatMatrix rat_gram(const SurfaceLattice& lat) {
  RatMatrix g(lat.rank, RatVec(lat.rank));
  for (int i = 0; i < lat.rank; ++i)
    for (int j = 0; j < lat.rank; ++j) g[i][j] = lat.gram[i][j];
  return g;
}

// Null space of a single row vector: the standard basis completed around a pivot.
std::vector<RatVec> row_kernel(const RatVec& r) {
  size_t n = r.size();
  size_t piv = n;
  for (size_t i = 0; i < n; ++i)
    if (r[i] != 0) {
      piv = i;
      break;
    }
  std::vector<RatVec> out;
  for (size_t j = 0; j < n; ++j) {
    if (j == piv) continue;
    RatVec v(n);
    v[j] = 1;
    if (piv < n) v[piv] = -r[j] / r[piv];
    out.push_back(v);
  }
  return out;
}

void check_size(const SurfaceLattice& lat, const LatticeClass& a) {
  if (static_cast<int>(a.coords.size()) != lat.rank) throw Error("dimension mismatch");
}

std::string pair_name(size_t i, size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

// Bron-Kerbosch with pivoting on a small dense graph.
void max_clique(const std::vector<std::vector<char>>& adj, std::vector<size_t>& r, std::vector<size_t> p,
                std::vector<size_t> x, size_t& best) {
  if (p.empty() && x.empty()) {
    best = std::max(best, r.size());
    return;
  }
  if (r.size() + p.size() <= best) return;
  size_t pivot = p.empty() ? x[0] : p[0];
  size_t most = 0;
  for (const auto* set : {&p, &x})
    for (size_t u : *set) {
      size_t cnt = 0;
      for (size_t v : p) cnt += adj[u][v];
      if (cnt >= most) most = cnt, pivot = u;
    }
  std::vector<size_t> cand;
  for (size_t v : p)
    if (!adj[pivot][v]) cand.push_back(v);
  for (size_t v : cand) {
    std::vector<size_t> p2, x2;
    for (size_t w : p)
      if (adj[v][w]) p2.push_back(w);
    for (size_t w : x)
      if (adj[v][w]) x2.push_back(w);
    r.push_back(v);
    max_clique(adj, r, p2, x2, best);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace

std::string base_tag(SurfaceBase b) { return b == SurfaceBase::P1xP1 ? "p1xp1" : "p2"; }

SurfaceBase parse_base(const std::string& s) {
  if (s == "p1xp1") return SurfaceBase::P1xP1;
  if (s == "p2") return SurfaceBase::P2;
  throw Error("unknown base " + s);
}

SurfaceLattice blowup_lattice(SurfaceBase base, int d) {
  if (d < 0) throw Error("negative number of points");
  SurfaceLattice lat;
  lat.base = base;
  lat.d = d;
  int off = base == SurfaceBase::P1xP1 ? 2 : 1;
  lat.rank = d + off;
  lat.gram.assign(lat.rank, std::vector<long>(lat.rank, 0));
  if (base == SurfaceBase::P1xP1) {
    lat.gram[0][1] = lat.gram[1][0] = 1;
  } else {
    lat.gram[0][0] = 1;
  }
  for (int i = 0; i < d; ++i) lat.gram[off + i][off + i] = -1;
  return lat;
}

long intersect(const SurfaceLattice& lat, const LatticeClass& a, const LatticeClass& b) {
  check_size(lat, a);
  check_size(lat, b);
  long acc = 0;
  for (int i = 0; i < lat.rank; ++i)
    for (int j = 0; j < lat.rank; ++j) acc += a.coords[i] * lat.gram[i][j] * b.coords[j];
  return acc;
}

LatticeClass basis_class(const SurfaceLattice& lat, int i) {
  LatticeClass c{std::vector<long>(lat.rank, 0)};
  c.coords.at(i) = 1;
  return c;
}

LatticeClass exceptional_class(const SurfaceLattice& lat, int i) {
  if (i < 1 || i > lat.d) throw Error("no such exceptional class");
  return basis_class(lat, (lat.base == SurfaceBase::P1xP1 ? 1 : 0) + i);
}

Signature inertia(RatMatrix a) {
  size_t n = a.size();
  Signature s;
  for (size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      size_t j = k + 1;
      while (j < n && a[j][j] == 0) ++j;
      if (j < n) {
        std::swap(a[k], a[j]);
        for (auto& row : a) std::swap(row[k], row[j]);
      } else {
        j = k + 1;
        while (j < n && a[k][j] == 0) ++j;
        if (j == n) {
          ++s.zero;  // row k is already zero beyond the diagonal
          continue;
        }
        // e_k += e_j makes the diagonal 2 a[k][j]
        for (size_t t = 0; t < n; ++t) a[k][t] += a[j][t];
        for (size_t t = 0; t < n; ++t) a[t][k] += a[t][j];
      }
    }
    Rational d = a[k][k];
    d > 0 ? ++s.plus : ++s.minus;
    for (size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rational m = a[i][k] / d;
      for (size_t t = k; t < n; ++t) a[i][t] -= m * a[k][t];
      for (size_t t = k; t < n; ++t) a[t][i] = a[i][t];
    }
  }
  return s;
}

Signature hodge_signature(const SurfaceLattice& lat) { return inertia(rat_gram(lat)); }

RatVec QuotientForm::coordinates(const LatticeClass& a) const {
  RatVec w = to_rat(a);
  Rational dot = 0;
  for (size_t i = 0; i < w.size(); ++i) dot += w[i] * l_dual[i];
  if (dot != 0) throw Error("class not orthogonal to L");
  if (dropped >= 0) {
    Rational t = w[dropped] / l[dropped];
    for (size_t i = 0; i < w.size(); ++i) w[i] -= t * l[i];
  }
  RatVec out;
  for (int c : columns) out.push_back(w[c]);
  return out;
}

QuotientForm orthogonal_quotient(const SurfaceLattice& lat, const LatticeClass& l) {
  check_size(lat, l);
  RatMatrix g = rat_gram(lat);
  QuotientForm q;
  q.l = to_rat(l);
  q.l_dual.assign(lat.rank, 0);
  for (int i = 0; i < lat.rank; ++i)
    for (int j = 0; j < lat.rank; ++j) q.l_dual[j] += q.l[i] * g[i][j];
  if (std::all_of(q.l_dual.begin(), q.l_dual.end(), [](const Rational& x) { return x == 0; }))
    throw Error("L is numerically trivial");
  std::vector<RatVec> ker = row_kernel(q.l_dual);
  int piv = 0;
  while (q.l_dual[piv] == 0) ++piv;
  std::vector<int> cols;
  for (int j = 0; j < lat.rank; ++j)
    if (j != piv) cols.push_back(j);
  Rational l2 = form_apply(g, q.l, q.l);
  if (l2 < 0) throw Error("L^2 < 0");
  if (l2 == 0) {
    for (int c : cols)
      if (q.l[c] != 0) {
        q.dropped = c;
        break;
      }
  }
  for (size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] == q.dropped) continue;
    q.columns.push_back(cols[i]);
    q.basis.push_back(ker[i]);
  }
  size_t n = q.basis.size();
  q.gram.assign(n, RatVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) q.gram[i][j] = -form_apply(g, q.basis[i], q.basis[j]);
  return q;
}

RankinResult rankin_check(const RatMatrix& form, const std::vector<RatVec>& s, bool strict) {
  if (s.empty()) throw Error("empty configuration");
  size_t dim = form.size();
  Signature sig = inertia(form);
  if (sig.plus != static_cast<int>(dim)) throw Error("inner product not positive definite");
  for (const auto& v : s)
    if (v.size() != dim) throw Error("dimension mismatch");
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) {
      Rational ip = form_apply(form, s[i], s[j]);
      if (strict ? ip >= 0 : ip > 0) throw Error("hypothesis violated by pair " + pair_name(i, j));
    }
  RankinResult r;
  r.size = s.size();
  r.bound = strict ? dim + 1 : 2 * dim;
  r.within = r.size <= r.bound;
  return r;
}

RankinResult rankin_check(int dim, const std::vector<RatVec>& s, bool strict) {
  RatMatrix id(dim, RatVec(dim));
  for (int i = 0; i < dim; ++i) id[i][i] = 1;
  return rankin_check(id, s, strict);
}

size_t rankin_extremal(int dim, int radius, bool strict) {
  if (dim < 1 || dim > 3) throw Error("brute force limited to dim <= 3");
  std::vector<std::vector<long>> pts;
  std::vector<long> v(dim, -radius);
  for (;;) {
    long g = 0;
    for (long x : v) g = std::gcd(g, std::labs(x));
    if (g == 1) pts.push_back(v);
    int i = 0;
    while (i < dim && v[i] == radius) v[i++] = -radius;
    if (i == dim) break;
    ++v[i];
  }
  size_t n = pts.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      long ip = 0;
      for (int t = 0; t < dim; ++t) ip += pts[i][t] * pts[j][t];
      adj[i][j] = strict ? ip < 0 : ip <= 0;
    }
  std::vector<size_t> r, p(n), x;
  std::iota(p.begin(), p.end(), 0);
  size_t best = 0;
  max_clique(adj, r, p, x, best);
  return best;
}

ExceptionalSet exceptional_curves(const SurfaceLattice& lat, const LatticeClass& l,
                                  const std::vector<LatticeClass>& curves, RayCase mode) {
  check_size(lat, l);
  long l2 = intersect(lat, l, l);
  for (size_t i = 0; i < curves.size(); ++i)
    if (intersect(lat, l, curves[i]) < 0) throw Error("L is not nef on curve " + std::to_string(i));
  if (l2 < 0) throw Error("L^2 < 0 for a nef class");
  QuotientForm q = orthogonal_quotient(lat, l);
  ExceptionalSet out;
  std::vector<RatVec> images;
  for (size_t i = 0; i < curves.size(); ++i) {
    if (intersect(lat, l, curves[i]) != 0) continue;
    RatVec im = q.coordinates(curves[i]);
    bool on_ray = std::all_of(im.begin(), im.end(), [](const Rational& x) { return x == 0; });
    if (on_ray) {
      // curves[i] is a rational multiple of L; it must be a positive one
      out.ray.push_back(i);
      continue;
    }
    if (intersect(lat, curves[i], curves[i]) >= 0) throw Error("exceptional curve " + std::to_string(i) + " has A^2 >= 0");
    out.negative.push_back(i);
    images.push_back(im);
  }
  for (size_t a = 0; a < out.negative.size(); ++a)
    for (size_t b = a + 1; b < out.negative.size(); ++b)
      if (intersect(lat, curves[out.negative[a]], curves[out.negative[b]]) < 0)
        throw Error("distinct curves " + pair_name(out.negative[a], out.negative[b]) + " meet negatively");
  size_t rho = lat.rank;
  if (l2 > 0)
    out.bound = rho - 1;
  else
    out.bound = mode == RayCase::RayControlled ? rho - 2 : 2 * (rho - 2);
  if (!images.empty()) {
    out.rankin = rankin_check(q.gram, images, false);
    if (!out.rankin.within) throw Error("Rankin bound exceeded");
  }
  if (out.negative.size() > out.bound) throw Error("exceptional curve count exceeds bound");
  return out;
}

long l_equivalence_bound(const SurfaceLattice& lat, const std::vector<LatticeClass>& curves) {
  size_t n = curves.size();
  std::vector<std::vector<size_t>> adj(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (intersect(lat, curves[i], curves[j]) > 0) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  long best = 0;
  for (size_t s = 0; s < n; ++s) {
    std::vector<long> dist(n, -1);
    std::deque<size_t> qu{s};
    dist[s] = 0;
    long far = 0;
    while (!qu.empty()) {
      size_t u = qu.front();
      qu.pop_front();
      far = std::max(far, dist[u]);
      for (size_t v : adj[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          qu.push_back(v);
        }
    }
    best = std::max(best, far + 1);
  }
  return best;
}

Configuration ruling_configuration(int d) {
  Configuration c;
  c.lat = blowup_lattice(SurfaceBase::P1xP1, d);
  LatticeClass f1 = basis_class(c.lat, 0), f2 = basis_class(c.lat, 1);
  c.l = f2;
  auto plus = [](LatticeClass a, const LatticeClass& b, long s) {
    for (size_t i = 0; i < a.coords.size(); ++i) a.coords[i] += s * b.coords[i];
    return a;
  };
  for (int i = 1; i <= d; ++i) c.curves.push_back(plus(f2, exceptional_class(c.lat, i), -1));
  for (int i = 1; i <= d; ++i) c.curves.push_back(exceptional_class(c.lat, i));
  c.curves.push_back(f2);
  c.curves.push_back(f1);
  if (d >= 1) c.curves.push_back(plus(f1, exceptional_class(c.lat, 1), -1));
  return c;
}

Configuration plane_configuration(int d) {
  Configuration c;
  c.lat = blowup_lattice(SurfaceBase::P2, d);
  LatticeClass h = basis_class(c.lat, 0);
  c.l = h;
  for (int i = 1; i <= d; ++i) c.curves.push_back(exceptional_class(c.lat, i));
  c.curves.push_back(h);
  for (int i = 1; i + 1 <= d; ++i) {
    LatticeClass line = h;
    line.coords[i] = -1;
    line.coords[i + 1] = -1;
    c.curves.push_back(line);
  }
  return c;
}

std::string lattice_to_json(const SurfaceLattice& lat) {
  std::ostringstream os;
  os << "{\"base\":\"" << base_tag(lat.base) << "\",\"d\":" << lat.d << ",\"gram\":[";
  for (int i = 0; i < lat.rank; ++i) {
    os << (i ? "," : "") << "[";
    for (int j = 0; j < lat.rank; ++j) os << (j ? "," : "") << lat.gram[i][j];
    os << "]";
  }
  os << "]}";
  return os.str();
}

}  // namespace nefcert
