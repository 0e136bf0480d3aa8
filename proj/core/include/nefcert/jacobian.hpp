#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nefcert/curve.hpp"

namespace nefcert {

// Reduced Mumford pair: u monic, deg v < deg u <= 2, u | f - v^2.
// Represents the class of D_u - deg(u) infinity.
struct MumfordClass {
  Poly u;
  Poly v;

  bool is_zero() const { return u.degree() == 0; }
  bool operator==(const MumfordClass& o) const { return u == o.u && v == o.v; }
  bool operator!=(const MumfordClass& o) const { return !(*this == o); }
  std::string to_string() const { return "(" + u.to_string() + ", " + v.to_string() + ")"; }
};

MumfordClass jac_identity(const Curve& c);
bool is_valid_class(const Curve& c, const MumfordClass& d);
// Reduce a semi-reduced pair (u | f - v^2).
MumfordClass cantor_reduce(const Curve& c, Poly u, Poly v);
MumfordClass cantor_add(const Curve& c, const MumfordClass& a, const MumfordClass& b);
MumfordClass cantor_neg(const Curve& c, const MumfordClass& a);
MumfordClass cantor_mul(const Curve& c, const MumfordClass& a, int64_t n);
MumfordClass random_class(const Curve& c, Rng& rng);

// Class of D - deg(D) infinity.
MumfordClass divisor_class(const Curve& c, const Divisor& d);
// Effective part D_u of the representative D_u - deg(u) infinity.
Divisor mumford_support(const Curve& c, const MumfordClass& d);
Divisor mumford_divisor(const Curve& c, const MumfordClass& d);

struct FrobeniusData {
  uint64_t q = 0;
  uint64_t n1 = 0, n2 = 0;        // #C(F_q), #C(F_q^2)
  int64_t a1 = 0;                 // trace: q + 1 - n1
  int64_t a2 = 0;                 // coefficient of T^2
  std::vector<int64_t> charpoly;  // low to high, monic of degree 4
  uint64_t jacobian_order = 0;
};

FrobeniusData frobenius_data(const Curve& c);
uint64_t jacobian_order(const Curve& c);
uint64_t class_order(const Curve& c, const MumfordClass& d);
// Nontrivial rational classes of order p found by cofactor multiplication.
std::vector<MumfordClass> find_p_torsion(const Curve& c, uint64_t seed);
// All nonzero rational p-torsion classes, canonically sorted.
std::vector<MumfordClass> p_torsion_subgroup(const Curve& c, uint64_t seed);

bool class_less(const MumfordClass& a, const MumfordClass& b);

}  // namespace nefcert
