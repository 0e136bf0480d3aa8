#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "nefcert/field.hpp"

namespace nefcert {

using BigInt = boost::multiprecision::cpp_int;

// Dense univariate polynomial over F_q, coefficients low to high, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const FiniteField* f) : f_(f) {}
  Poly(const FiniteField* f, std::vector<Fq> coeffs);
  Poly(const FiniteField* f, std::initializer_list<int64_t> ints);
  static Poly from_ints(const FiniteField* f, const std::vector<int64_t>& ints);
  static Poly constant(const Fq& c);
  static Poly x(const FiniteField* f);
  static Poly monomial(const Fq& c, int deg);

  const FiniteField* field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_constant() const { return c_.size() <= 1; }
  Fq coeff(int i) const;
  Fq lead() const;
  const std::vector<Fq>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  Poly monic() const;
  Fq eval(const Fq& a) const;
  Poly derivative() const;
  Poly compose(const Poly& g) const;
  Poly shift(int n) const;  // multiply by x^n
  Poly truncate(int n) const;  // keep terms below x^n
  void set_coeff(int i, const Fq& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Fq& c) const;
  Poly operator/(const Poly& o) const;
  Poly operator%(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::vector<uint64_t> indices() const;
  static Poly from_indices(const FiniteField* f, const std::vector<uint64_t>& idx);
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  const FiniteField* f_ = nullptr;
  std::vector<Fq> c_;
};

// Canonical order: by degree, then coefficient indices from the top down.
bool poly_less(const Poly& a, const Poly& b);

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

struct XGcd {
  Poly g, s, t;  // s*a + t*b = g, g monic (or zero)
};
XGcd xgcd(const Poly& a, const Poly& b);

Poly pow(const Poly& a, unsigned e);
Poly pow_mod(const Poly& a, const BigInt& e, const Poly& m);
Poly pow_mod(const Poly& a, uint64_t e, const Poly& m);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& m);
// Inverse of a modulo m; throws if not invertible.
Poly inv_mod(const Poly& a, const Poly& m);

// Multiplicity of the irreducible u in a (a nonzero).
int ord(const Poly& a, const Poly& u);
// Raise each coefficient to the p-th power.
Poly frobenius_coeffs(const Poly& a);

Fq resultant(const Poly& a, const Poly& b);

bool is_squarefree(const Poly& a);
bool is_irreducible(const Poly& a);

struct Factor {
  Poly poly;
  int mult;
};
// Monic irreducible factorization, canonically sorted. The unit is dropped.
std::vector<Factor> factor(const Poly& a);
std::vector<Factor> squarefree_decomposition(const Poly& a);
std::vector<Fq> roots(const Poly& a);

Poly random_poly(const FiniteField* f, int deg, Rng& rng, bool monic);
Poly random_irreducible(const FiniteField* f, int deg, Rng& rng);

// Reduced fraction num/den with den monic.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(const Poly& num);
  RationalFunction(const Poly& num, const Poly& den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  const FiniteField* field() const { return num_.field(); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator-() const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction derivative() const;
  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

 private:
  Poly num_, den_;
};

}  // namespace nefcert
