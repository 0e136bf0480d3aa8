#pragma once

#include <memory>
#include <vector>

#include "nefcert/curve.hpp"
#include "nefcert/linalg.hpp"

namespace nefcert {

// Residue field F_q[X]/(u), optionally extended by w^2 = c for inert places.
// Elements are coordinate vectors over F_q: [a_0 .. a_{d-1}] or [a_0 | a_1] for a_0 + a_1 w.
class ResidueField {
 public:
  using Elem = std::vector<Fq>;

  ResidueField() = default;
  ResidueField(const FiniteField* f, const Poly& u);
  ResidueField(const FiniteField* f, const Poly& u, const Elem& c);

  const FiniteField* base() const { return f_; }
  int dim() const { return quad_ ? 2 * d_ : d_; }
  int base_dim() const { return d_; }
  bool quadratic() const { return quad_; }
  const Poly& modulus() const { return u_; }

  Elem zero() const { return Elem(dim(), f_->zero()); }
  Elem one() const;
  Elem from_base(const Fq& a) const;
  Elem from_poly(const Poly& a) const;  // reduced mod u
  Elem theta() const { return from_poly(Poly::x(f_)); }
  Elem w() const;
  Poly to_poly(const Elem& a) const;  // base part only

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, const Fq& c) const;
  Elem inv(const Elem& a) const;
  Elem pow(const Elem& a, uint64_t e) const;
  Elem frobenius(const Elem& a) const { return pow(a, f_->p()); }
  bool is_zero(const Elem& a) const;
  Fq trace(const Elem& a) const;

 private:
  Elem base_mul(const Elem& a, const Elem& b) const;
  Elem base_inv(const Elem& a) const;
  Elem base_add(const Elem& a, const Elem& b) const;

  const FiniteField* f_ = nullptr;
  Poly u_;
  int d_ = 0;
  bool quad_ = false;
  Elem c_;
  std::vector<Elem> red_;      // X^{d+i} mod u
  std::vector<Fq> power_traces_;  // Tr(X^i), i < d
};

// Truncated Laurent series sum c[i] t^(val + i), known below exponent prec() only.
struct Series {
  int val = 0;
  std::vector<ResidueField::Elem> c;
  int prec() const { return val + static_cast<int>(c.size()); }
};

class SeriesOps {
 public:
  explicit SeriesOps(std::shared_ptr<const ResidueField> k) : k_(std::move(k)) {}
  const ResidueField& field() const { return *k_; }

  Series exact(int val, std::vector<ResidueField::Elem> c, int prec) const;
  Series constant(const ResidueField::Elem& a, int prec) const;
  Series truncate(const Series& a, int prec) const;
  Series add(const Series& a, const Series& b) const;
  Series sub(const Series& a, const Series& b) const;
  Series neg(const Series& a) const;
  Series mul(const Series& a, const Series& b) const;
  Series scale(const Series& a, const ResidueField::Elem& c) const;
  Series inv(const Series& a) const;
  Series frobenius(const Series& a) const;  // coefficientwise p-th power, t -> t^p
  Series trim(const Series& a) const;       // drop leading zeros
  ResidueField::Elem coeff(const Series& a, int e) const;
  bool known_zero(const Series& a) const;

 private:
  std::shared_ptr<const ResidueField> k_;
};

// Expansions at one place in a fixed uniformizer:
//   unramified finite  t = x - theta
//   ramified finite    t = y
//   infinity           x = t^-2, y = t^-5 R(t^2)
class LocalExpansion {
 public:
  LocalExpansion(const Curve& c, const Place& p);

  const Curve& curve() const { return c_; }
  const Place& place() const { return p_; }
  const ResidueField& field() const { return *k_; }
  const SeriesOps& ops() const { return ops_; }
  int e() const { return p_.ramification(); }

  Series x(int prec) const;
  Series y(int prec) const;
  Series dx(int prec) const;  // dx/dt
  int dx_valuation() const;

  Series poly_at_x(const Poly& a, int prec) const;
  // Series of A + B y at absolute precision prec.
  Series numerator(const Poly& a, const Poly& b, int prec) const;
  Series expand(const FunctionElement& g, int prec) const;
  long valuation(const FunctionElement& g) const;
  long numerator_valuation(const Poly& a, const Poly& b) const;
  long poly_valuation(const Poly& a) const;
  ResidueField::Elem residue_local(const FunctionElement& h) const;  // of h dx
  Fq residue(const FunctionElement& h) const;

 private:
  void ensure_y(int n) const;
  void ensure_w(int n) const;

  Curve c_;
  Place p_;
  std::shared_ptr<const ResidueField> k_;
  SeriesOps ops_;
  ResidueField::Elem theta_;
  mutable std::vector<ResidueField::Elem> y_;  // unramified: y coefficients; infinity: R coefficients
  mutable std::vector<ResidueField::Elem> w_;  // ramified: x - theta as a series in t^2
  std::vector<ResidueField::Elem> fshift_;     // f(theta + t) or the reversed f at infinity
};

}  // namespace nefcert
