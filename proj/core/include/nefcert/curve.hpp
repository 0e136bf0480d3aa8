#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nefcert/field.hpp"
#include "nefcert/polynomial.hpp"

namespace nefcert {

// Places of y^2 = f(x). Finite places sit over a monic irreducible u(x):
//   Split(u, v)   one of the two places where y = v mod u
//   Ramified(u)   u divides f
//   Inert(u)      f mod u is a non-square; residue degree 2 deg u
enum class PlaceKind { Infinite = 0, Split = 1, Ramified = 2, Inert = 3 };

struct Place {
  PlaceKind kind = PlaceKind::Infinite;
  Poly u;
  Poly v;

  static Place infinity() { return Place{}; }
  bool is_infinite() const { return kind == PlaceKind::Infinite; }
  int degree() const;
  int ramification() const;  // ramification index over the x-line
  std::string to_string() const;
  bool operator==(const Place& o) const;
  bool operator!=(const Place& o) const { return !(*this == o); }
};

struct PlaceLess {
  bool operator()(const Place& a, const Place& b) const;
};

class Divisor {
 public:
  using Map = std::map<Place, long, PlaceLess>;

  Divisor() = default;
  static Divisor of(const Place& p, long n = 1);

  void add(const Place& p, long n);
  long operator[](const Place& p) const;
  long degree() const;
  bool is_zero() const { return m_.empty(); }
  bool is_effective() const;
  Divisor positive_part() const;
  Divisor negative_part() const;  // returned with positive coefficients
  const Map& entries() const { return m_; }
  std::vector<Place> support() const;

  Divisor operator+(const Divisor& o) const;
  Divisor operator-(const Divisor& o) const;
  Divisor operator-() const;
  Divisor operator*(long n) const;
  Divisor& operator+=(const Divisor& o) { return *this = *this + o; }
  Divisor& operator-=(const Divisor& o) { return *this = *this - o; }
  bool operator==(const Divisor& o) const;
  bool operator!=(const Divisor& o) const { return !(*this == o); }
  bool operator>=(const Divisor& o) const;  // coefficientwise
  std::string to_string() const;

 private:
  Map m_;
};

struct CurveData;

// Genus two curve y^2 = f(x), f monic squarefree of degree 5.
class Curve {
 public:
  Curve() = default;
  static Curve create(const FieldPtr& field, const Poly& f);

  const FieldPtr& field_ptr() const;
  const FiniteField* field() const;
  const Poly& f() const;
  int genus() const { return 2; }
  bool valid() const { return static_cast<bool>(d_); }

  // Places above the monic irreducible u, canonically ordered.
  std::vector<Place> places_over(const Poly& u) const;
  std::vector<Place> rational_places() const;
  std::vector<Place> places_of_degree(int d) const;
  std::vector<Place> weierstrass_places() const;  // finite ramified places, then infinity
  Place random_place(Rng& rng, int max_degree) const;
  void check_place(const Place& p) const;

  bool operator==(const Curve& o) const;
  bool operator!=(const Curve& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  std::shared_ptr<const CurveData> d_;
};

struct CurveData {
  FieldPtr field;
  Poly f;
};

// Element (A + B y) / C of the function field, kept reduced with C monic.
class FunctionElement {
 public:
  FunctionElement() = default;
  FunctionElement(const Curve& c, const Poly& a, const Poly& b, const Poly& den);
  static FunctionElement from_rational(const Curve& c, const RationalFunction& a, const RationalFunction& b);
  static FunctionElement constant(const Curve& c, const Fq& v);
  static FunctionElement from_poly(const Curve& c, const Poly& a);
  static FunctionElement x(const Curve& c);
  static FunctionElement y(const Curve& c);

  const Curve& curve() const { return c_; }
  const Poly& A() const { return a_; }
  const Poly& B() const { return b_; }
  const Poly& C() const { return den_; }
  RationalFunction a() const { return RationalFunction(a_, den_); }
  RationalFunction b() const { return RationalFunction(b_, den_); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_constant() const { return b_.is_zero() && a_.degree() <= 0 && den_.degree() == 0; }

  FunctionElement operator+(const FunctionElement& o) const;
  FunctionElement operator-(const FunctionElement& o) const;
  FunctionElement operator-() const;
  FunctionElement operator*(const FunctionElement& o) const;
  FunctionElement operator*(const Fq& c) const;
  FunctionElement operator/(const FunctionElement& o) const;
  FunctionElement inverse() const;
  FunctionElement pow(long e) const;
  FunctionElement derivative() const;  // d/dx
  FunctionElement frobenius() const;   // p-th power
  FunctionElement conjugate() const;   // y -> -y
  RationalFunction norm() const;
  Poly norm_numerator() const { return a_ * a_ - b_ * b_ * c_.f(); }

  bool operator==(const FunctionElement& o) const { return a_ == o.a_ && b_ == o.b_ && den_ == o.den_; }
  bool operator!=(const FunctionElement& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  void normalize();
  Curve c_;
  Poly a_, b_, den_;
};

// Differential h dx.
class Differential {
 public:
  Differential() = default;
  explicit Differential(const FunctionElement& h) : h_(h) {}
  static Differential dx(const Curve& c) { return Differential(FunctionElement::constant(c, c.field()->one())); }
  static Differential of(const FunctionElement& g) { return Differential(g.derivative()); }

  const FunctionElement& coefficient() const { return h_; }
  bool is_zero() const { return h_.is_zero(); }
  Differential operator+(const Differential& o) const { return Differential(h_ + o.h_); }
  Differential operator-(const Differential& o) const { return Differential(h_ - o.h_); }
  Differential operator*(const FunctionElement& g) const { return Differential(h_ * g); }
  Differential operator*(const Fq& c) const { return Differential(h_ * c); }
  bool operator==(const Differential& o) const { return h_ == o.h_; }
  bool operator!=(const Differential& o) const { return !(*this == o); }
  std::string to_string() const { return "(" + h_.to_string() + ") dx"; }

 private:
  FunctionElement h_;
};

long valuation(const Place& p, const FunctionElement& g);
long valuation(const Place& p, const Differential& w);
Divisor divisor_of_function(const FunctionElement& g);
Divisor divisor_of_differential(const Differential& w);
Divisor dx_divisor(const Curve& c);          // ramified finite places minus 3 infinity
Divisor canonical_divisor(const Curve& c);   // div(dx / y) = 2 infinity
// Residue at p, traced down to F_q.
Fq residue(const Place& p, const Differential& w);

// #C(F_{q^m}) by enumeration; guarded.
uint64_t point_count(const Curve& c, int m, uint64_t guard = 50'000'000);

std::optional<Poly> sqrt_mod(const Poly& a, const Poly& u);
bool is_square_mod(const Poly& a, const Poly& u);

}  // namespace nefcert
