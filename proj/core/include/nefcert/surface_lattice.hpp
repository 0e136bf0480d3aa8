#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>
#include <vector>

#include "nefcert/field.hpp"

namespace nefcert {

using Rational = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rational>;
using RatMatrix = std::vector<RatVec>;

enum class SurfaceBase { P1xP1, P2 };

std::string base_tag(SurfaceBase b);
SurfaceBase parse_base(const std::string& s);

// Basis (f1, f2, e_1..e_d) for P1xP1, (h, e_1..e_d) for P2.
struct SurfaceLattice {
  SurfaceBase base = SurfaceBase::P1xP1;
  int d = 0;
  int rank = 2;
  std::vector<std::vector<long>> gram;
};

struct LatticeClass {
  std::vector<long> coords;
  bool operator==(const LatticeClass& o) const { return coords == o.coords; }
};

SurfaceLattice blowup_lattice(SurfaceBase base, int d);
long intersect(const SurfaceLattice& lat, const LatticeClass& a, const LatticeClass& b);
LatticeClass basis_class(const SurfaceLattice& lat, int i);
LatticeClass exceptional_class(const SurfaceLattice& lat, int i);  // e_i, 1-based

struct Signature {
  int plus = 0, minus = 0, zero = 0;
  bool degenerate() const { return zero > 0; }
  bool operator==(const Signature& o) const { return plus == o.plus && minus == o.minus && zero == o.zero; }
};

// Inertia by exact congruence diagonalization.
Signature inertia(RatMatrix m);
Signature hodge_signature(const SurfaceLattice& lat);

// Minus the form on L^perp (L^2 > 0) or on L^perp / R L (L^2 = 0, L nonzero), in an
// explicit basis, plus a map from classes orthogonal to L to that basis.
struct QuotientForm {
  RatMatrix gram;              // positive definite after the sign change
  std::vector<RatVec> basis;   // lattice coordinates of the chosen basis
  std::vector<int> columns;    // lattice index carrying the 1 of each basis vector
  int dropped = -1;            // column eliminated against L when L^2 = 0
  RatVec l;
  RatVec l_dual;               // L . (-), to test membership in L^perp
  RatVec coordinates(const LatticeClass& a) const;
};

QuotientForm orthogonal_quotient(const SurfaceLattice& lat, const LatticeClass& l);

struct RankinResult {
  bool within = false;
  size_t size = 0;
  size_t bound = 0;
};

// S in R^dim with the standard inner product; pairwise <= 0 (strict: < 0) is validated.
RankinResult rankin_check(int dim, const std::vector<RatVec>& s, bool strict);
// Same with inner product given by a positive definite Gram matrix.
RankinResult rankin_check(const RatMatrix& form, const std::vector<RatVec>& s, bool strict);
// Largest pairwise obtuse (strict: pairwise negative) set among primitive integer
// vectors with entries in [-radius, radius]; dim <= 3.
size_t rankin_extremal(int dim, int radius, bool strict);

// Which alternative of the bound applies when L^2 = 0. The caller decides:
// effectivity is outside lattice scope.
enum class RayCase {
  Unknown,      // bound 2(rho - 2)
  RayControlled  // no effective cycle on the ray, or all are multiples of one curve: rho - 2
};

struct ExceptionalSet {
  std::vector<size_t> ray;       // indices into the supplied list, proportional to L
  std::vector<size_t> negative;  // L.A = 0, A^2 < 0
  size_t bound = 0;
  RankinResult rankin;
};

ExceptionalSet exceptional_curves(const SurfaceLattice& lat, const LatticeClass& l,
                                  const std::vector<LatticeClass>& curves, RayCase mode = RayCase::Unknown);

// Max over components of (diameter + 1), adjacency A.B > 0.
long l_equivalence_bound(const SurfaceLattice& lat, const std::vector<LatticeClass>& curves);

// L = pullback of O(1) from the second factor; the listed curves are the fibers through
// the points, the exceptional curves, plus a few curves with L.A > 0.
struct Configuration {
  SurfaceLattice lat;
  LatticeClass l;
  std::vector<LatticeClass> curves;
};
Configuration ruling_configuration(int d);
// P2 blown up at d points, L = pullback of O(1).
Configuration plane_configuration(int d);

std::string lattice_to_json(const SurfaceLattice& lat);

}  // namespace nefcert
