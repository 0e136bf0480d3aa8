#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nefcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;
using Rng = std::mt19937_64;

// Element of F_q stored as a Zech-logarithm code: 0 is zero, n + 1 is g^n.
class Fq {
 public:
  Fq() = default;

  const FiniteField* field() const { return f_; }
  uint32_t code() const { return code_; }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }
  uint64_t index() const;

  Fq operator+(const Fq& o) const;
  Fq operator-(const Fq& o) const;
  Fq operator-() const;
  Fq operator*(const Fq& o) const;
  Fq operator/(const Fq& o) const;
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }
  Fq inv() const;
  Fq pow(int64_t e) const;

  bool operator==(const Fq& o) const { return code_ == o.code_ && f_ == o.f_; }
  bool operator!=(const Fq& o) const { return !(*this == o); }

 private:
  friend class FiniteField;
  Fq(const FiniteField* f, uint32_t code) : f_(f), code_(code) {}
  const FiniteField* f_ = nullptr;
  uint32_t code_ = 0;
};

class FiniteField {
 public:
  static constexpr uint64_t kMaxOrder = uint64_t{1} << 21;

  // Builds F_{p^k}. The defining polynomial comes from a deterministic
  // seeded search unless `modulus` (coefficients over F_p, low to high, monic,
  // length k + 1) is supplied.
  static FieldPtr create(uint64_t p, int k);
  static FieldPtr create(uint64_t p, int k, const std::vector<uint32_t>& modulus);

  uint64_t p() const { return p_; }
  int k() const { return k_; }
  uint64_t q() const { return q_; }
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  Fq zero() const { return Fq(this, 0); }
  Fq one() const { return Fq(this, 1); }
  Fq generator() const { return Fq(this, q_ > 2 ? 2 : 1); }
  Fq from_int(int64_t n) const;
  Fq from_index(uint64_t idx) const;
  Fq from_digits(const std::vector<uint32_t>& digits) const;
  Fq from_code(uint32_t code) const;
  uint64_t index(const Fq& a) const { return a.code_ == 0 ? 0 : exp_index_[a.code_ - 1]; }
  std::vector<uint32_t> digits(const Fq& a) const;

  Fq add(Fq a, Fq b) const;
  Fq neg(Fq a) const;
  Fq mul(Fq a, Fq b) const;
  Fq inv(Fq a) const;
  Fq pow(Fq a, int64_t e) const;

  bool is_square(const Fq& a) const { return a.code_ == 0 || ((a.code_ - 1) & 1u) == 0; }
  std::optional<Fq> sqrt(const Fq& a) const;
  Fq frobenius(const Fq& a) const { return pow(a, static_cast<int64_t>(p_)); }
  Fq inverse_frobenius(const Fq& a) const;
  Fq random(Rng& rng) const;
  Fq random_nonzero(Rng& rng) const;
  Fq non_square() const { return Fq(this, 2); }

  std::string to_string(const Fq& a) const;
  std::string describe() const;

  bool same_as(const FiniteField& o) const {
    return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
  }

 private:
  FiniteField() = default;
  void build_tables(const std::vector<uint32_t>& modulus);

  uint64_t p_ = 0;
  int k_ = 0;
  uint64_t q_ = 0;
  uint32_t half_ = 0;  // (q - 1) / 2
  std::vector<uint32_t> modulus_;
  std::vector<uint32_t> exp_index_;  // n -> index of g^n
  std::vector<uint32_t> log_;        // index -> n
  std::vector<uint32_t> zech_;       // n -> code of 1 + g^n
};

inline uint64_t Fq::index() const { return f_->index(*this); }

inline void check_same(const Fq& a, const Fq& b) {
  if (a.field() != b.field()) throw Error("mixed fields");
}

inline Fq FiniteField::add(Fq a, Fq b) const {
  if (a.code_ == 0) return b;
  if (b.code_ == 0) return a;
  uint32_t n = a.code_ - 1, m = b.code_ - 1;
  uint32_t q1 = static_cast<uint32_t>(q_ - 1);
  uint32_t d = m >= n ? m - n : m + q1 - n;
  uint32_t z = zech_[d];
  if (z == 0) return Fq(this, 0);
  uint32_t r = n + z - 1;
  if (r >= q1) r -= q1;
  return Fq(this, r + 1);
}

inline Fq FiniteField::neg(Fq a) const {
  if (a.code_ == 0) return a;
  uint32_t q1 = static_cast<uint32_t>(q_ - 1);
  uint32_t r = a.code_ - 1 + half_;
  if (r >= q1) r -= q1;
  return Fq(this, r + 1);
}

inline Fq FiniteField::mul(Fq a, Fq b) const {
  if (a.code_ == 0 || b.code_ == 0) return Fq(this, 0);
  uint32_t q1 = static_cast<uint32_t>(q_ - 1);
  uint32_t r = a.code_ - 1 + b.code_ - 1;
  if (r >= q1) r -= q1;
  return Fq(this, r + 1);
}

inline Fq Fq::operator+(const Fq& o) const {
  check_same(*this, o);
  return f_->add(*this, o);
}
inline Fq Fq::operator-(const Fq& o) const {
  check_same(*this, o);
  return f_->add(*this, f_->neg(o));
}
inline Fq Fq::operator-() const { return f_->neg(*this); }
inline Fq Fq::operator*(const Fq& o) const {
  check_same(*this, o);
  return f_->mul(*this, o);
}
inline Fq Fq::operator/(const Fq& o) const {
  check_same(*this, o);
  return f_->mul(*this, f_->inv(o));
}
inline Fq Fq::inv() const { return f_->inv(*this); }
inline Fq Fq::pow(int64_t e) const { return f_->pow(*this, e); }

// Total order on elements by canonical index; used for canonical sorting.
inline bool index_less(const Fq& a, const Fq& b) { return a.index() < b.index(); }

// field_create in the module interface.
inline FieldPtr field_create(uint64_t p, int k) { return FiniteField::create(p, k); }

bool is_prime(uint64_t n);
std::vector<uint64_t> prime_factors(uint64_t n);

}  // namespace nefcert
