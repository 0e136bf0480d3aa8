#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nefcert/curve.hpp"
#include "nefcert/jacobian.hpp"
#include "nefcert/linalg.hpp"
#include "nefcert/local.hpp"

namespace nefcert {

// Basis of L(D) = { g : div(g) + D >= 0 } u {0}.
// Elements are (A + B y) / den with A, B drawn from the monomials x^i, x^i y.
struct RRSpace {
  Curve curve;
  Divisor divisor;
  std::vector<FunctionElement> basis;
  Poly den;
  std::vector<std::pair<int, int>> monomials;  // (i, b) for x^i y^b, by pole order at infinity
  std::vector<Vec> coords;                     // basis in monomial coordinates

  size_t dim() const { return basis.size(); }
  FunctionElement combine(const Vec& c) const;
  // Coordinates of g in the basis, or nothing when g is not in L(D).
  std::optional<Vec> coordinates(const FunctionElement& g) const;
};

RRSpace rr_space(const Curve& c, const Divisor& d);
long h1_dim(const Curve& c, const Divisor& d);
bool in_rr_space(const FunctionElement& g, const Divisor& d);
// Basis of H^0(K - D) as differentials w with div(w) >= D.
std::vector<Differential> differentials_in(const Curve& c, const Divisor& d);

// Class in H^1(C, O(D)) given by principal parts; only exponents below -D(P) matter.
struct TailClass {
  Divisor bundle;
  std::map<Place, Series, PlaceLess> tails;
};

// Laurent tails of g at the given places, cut at the level of `bundle`.
TailClass tails_of(const Curve& c, const Divisor& bundle, const FunctionElement& g, const std::vector<Place>& places);
TailClass tail_add(const Curve& c, const TailClass& a, const TailClass& b);
TailClass tail_scale(const Curve& c, const TailClass& a, const Fq& s);

// Canonical forms for H^1(C, O(D)): tails live at infinity on the gap exponents.
class H1Model {
 public:
  H1Model(const Curve& c, const Divisor& d);

  const Curve& curve() const { return c_; }
  const Divisor& bundle() const { return d_; }
  size_t dim() const { return gaps_.size(); }
  const std::vector<int>& gaps() const { return gaps_; }

  Vec coordinates(const TailClass& xi) const;
  TailClass representative(const Vec& v) const;
  TailClass reduce(const TailClass& xi) const { return representative(coordinates(xi)); }
  // Tail at infinity of a canonical representative.
  Series infinity_series(const Vec& v) const;

 private:
  void ensure_depth(int depth) const;
  Vec reduce_infinity(const Series& s) const;

  Curve c_;
  Divisor d_;
  long ninf_ = 0;
  int min_depth_ = 0;
  std::vector<int> gaps_;
  mutable int depth_ = -1;
  mutable std::vector<std::pair<int, Vec>> pivots_;  // pivot exponent, row over [lo, -ninf)
};

TailClass tail_reduce(const Curve& c, const TailClass& xi);

// Sum of residues of xi * w, w in H^0(K - D).
Fq serre_pairing(const Curve& c, const TailClass& xi, const Differential& w);

// v -> M v^(twist), coordinates raised to the twist power.
struct SemilinearMap {
  Matrix matrix;
  uint64_t twist = 1;

  Vec apply(const Vec& v) const;
  bool injective() const;
  size_t rank() const;
  // this after other
  SemilinearMap after(const SemilinearMap& other) const;
};

Matrix frobenius_twist(const Matrix& m, uint64_t e);

struct CartierManin {
  Matrix matrix;
  bool ordinary = false;
};

CartierManin cartier_manin(const Curve& c);

// Line bundle of exact order p with the trivialization g of its p-th power.
struct PTorsionBundle {
  MumfordClass cls;
  Divisor rep;  // D_u - deg(u) infinity
  FunctionElement g;  // div(g) = p rep
};

PTorsionBundle make_p_torsion_bundle(const Curve& c, const MumfordClass& cls);

// F* : H^1(source) -> H^1(O). Source is 0, or -rep with the bundle supplied.
SemilinearMap frobenius_h1(const Curve& c, const Divisor& source, const std::optional<PTorsionBundle>& triv);
// Stable rank of the Frobenius on H^1(O).
int p_rank(const Curve& c);

Differential cartier_class(const Curve& c, const PTorsionBundle& l);
// Coordinates (a0, a1) of w = (a0 + a1 x) dx / y.
Vec holomorphic_coordinates(const Differential& w);

}  // namespace nefcert
