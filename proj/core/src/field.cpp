#include "nefcert/field.hpp"

#include <sstream>

#include "nefcert/polynomial.hpp"

namespace nefcert {

namespace {

using u128 = unsigned __int128;

uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<u128>(a) * b % m);
}

uint64_t powmod64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

using Digits = std::vector<uint32_t>;

// Product of two residues in F_p[X]/(m), all given as digit vectors of length k.
Digits mul_digits(const Digits& a, const Digits& b, const Digits& m, uint64_t p) {
  size_t k = m.size() - 1;
  std::vector<uint64_t> prod(2 * k, 0);
  for (size_t i = 0; i < k; ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + uint64_t{a[i]} * b[j]) % p;
  }
  for (size_t d = 2 * k - 1; d-- > k;) {
    uint64_t c = prod[d];
    if (!c) continue;
    prod[d] = 0;
    // X^d = X^{d-k} * (X^k) and X^k = -sum m_i X^i.
    for (size_t i = 0; i < k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - m[i]) * c) % p;
  }
  Digits r(k);
  for (size_t i = 0; i < k; ++i) r[i] = static_cast<uint32_t>(prod[i]);
  return r;
}

Digits pow_digits(Digits a, uint64_t e, const Digits& m, uint64_t p) {
  Digits r(m.size() - 1, 0);
  r[0] = 1;
  while (e) {
    if (e & 1) r = mul_digits(r, a, m, p);
    a = mul_digits(a, a, m, p);
    e >>= 1;
  }
  return r;
}

Digits index_to_digits(uint64_t idx, uint64_t p, int k) {
  Digits d(k);
  for (int i = 0; i < k; ++i) {
    d[i] = static_cast<uint32_t>(idx % p);
    idx /= p;
  }
  return d;
}

uint64_t digits_to_index(const Digits& d, uint64_t p) {
  uint64_t idx = 0;
  for (size_t i = d.size(); i-- > 0;) idx = idx * p + d[i];
  return idx;
}

void validate(uint64_t p, int k) {
  if (!is_prime(p)) throw Error("not prime");
  if (p == 2) throw Error("characteristic two unsupported");
  if (k < 1) throw Error("extension degree must be positive");
  long double q = 1;
  for (int i = 0; i < k; ++i) q *= static_cast<long double>(p);
  if (q > static_cast<long double>(FiniteField::kMaxOrder)) throw Error("field too large");
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % s == 0) return n == s;
  }
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

FieldPtr FiniteField::create(uint64_t p, int k) {
  validate(p, k);
  if (k == 1) return create(p, 1, {0, 1});
  FieldPtr prime = create(p, 1);
  Rng rng(0x6a09e667f3bcc909ull ^ (p * 0x9e3779b97f4a7c15ull) ^ static_cast<uint64_t>(k));
  for (;;) {
    Poly m = random_poly(prime.get(), k, rng, true);
    if (m.coeff(0).is_zero() || !is_irreducible(m)) continue;
    std::vector<uint32_t> digits;
    for (int i = 0; i <= k; ++i) digits.push_back(static_cast<uint32_t>(m.coeff(i).index()));
    return create(p, k, digits);
  }
}

FieldPtr FiniteField::create(uint64_t p, int k, const std::vector<uint32_t>& modulus) {
  validate(p, k);
  std::vector<uint32_t> mod = modulus;
  if (k == 1) {
    mod = {0, 1};
  } else {
    if (static_cast<int>(mod.size()) != k + 1 || mod.back() != 1) throw Error("modulus must be monic of degree k");
    for (auto c : mod)
      if (c >= p) throw Error("modulus coefficient out of range");
    FieldPtr prime = create(p, 1);
    std::vector<int64_t> ints(mod.begin(), mod.end());
    if (!is_irreducible(Poly::from_ints(prime.get(), ints))) throw Error("modulus not irreducible");
  }
  auto f = std::shared_ptr<FiniteField>(new FiniteField());
  f->p_ = p;
  f->k_ = k;
  f->q_ = 1;
  for (int i = 0; i < k; ++i) f->q_ *= p;
  f->half_ = static_cast<uint32_t>((f->q_ - 1) / 2);
  f->build_tables(mod);
  return f;
}

void FiniteField::build_tables(const std::vector<uint32_t>& modulus) {
  modulus_ = modulus;
  uint64_t q1 = q_ - 1;
  auto pf = prime_factors(q1);
  Digits g;
  for (uint64_t cand = 1; cand < q_; ++cand) {
    Digits d = index_to_digits(cand, p_, k_);
    bool ok = true;
    for (uint64_t r : pf) {
      Digits t = pow_digits(d, q1 / r, modulus_, p_);
      if (digits_to_index(t, p_) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = d;
      break;
    }
  }
  exp_index_.assign(q1, 0);
  log_.assign(q_, 0);
  Digits cur(k_, 0);
  cur[0] = 1;
  for (uint64_t n = 0; n < q1; ++n) {
    uint64_t idx = digits_to_index(cur, p_);
    exp_index_[n] = static_cast<uint32_t>(idx);
    log_[idx] = static_cast<uint32_t>(n);
    cur = mul_digits(cur, g, modulus_, p_);
  }
  zech_.assign(q1, 0);
  for (uint64_t n = 0; n < q1; ++n) {
    uint64_t idx = exp_index_[n];
    uint64_t low = idx % p_;
    uint64_t idx1 = low == p_ - 1 ? idx - low : idx + 1;
    zech_[n] = idx1 == 0 ? 0 : log_[idx1] + 1;
  }
}

Fq FiniteField::from_int(int64_t n) const {
  int64_t r = n % static_cast<int64_t>(p_);
  if (r < 0) r += static_cast<int64_t>(p_);
  return from_index(static_cast<uint64_t>(r));
}

Fq FiniteField::from_index(uint64_t idx) const {
  if (idx >= q_) throw Error("field element index out of range");
  return idx == 0 ? zero() : Fq(this, log_[idx] + 1);
}

Fq FiniteField::from_code(uint32_t code) const {
  if (code >= q_) throw Error("field element code out of range");
  return Fq(this, code);
}

Fq FiniteField::from_digits(const std::vector<uint32_t>& digits) const {
  if (static_cast<int>(digits.size()) > k_) throw Error("too many digits");
  Digits d(k_, 0);
  for (size_t i = 0; i < digits.size(); ++i) d[i] = static_cast<uint32_t>(digits[i] % p_);
  return from_index(digits_to_index(d, p_));
}

std::vector<uint32_t> FiniteField::digits(const Fq& a) const { return index_to_digits(index(a), p_, k_); }

Fq FiniteField::inv(Fq a) const {
  if (a.code_ == 0) throw Error("division by zero");
  uint32_t q1 = static_cast<uint32_t>(q_ - 1);
  uint32_t n = a.code_ - 1;
  return Fq(this, (n == 0 ? 0 : q1 - n) + 1);
}

Fq FiniteField::pow(Fq a, int64_t e) const {
  if (a.code_ == 0) {
    if (e < 0) throw Error("division by zero");
    return e == 0 ? one() : zero();
  }
  int64_t q1 = static_cast<int64_t>(q_ - 1);
  int64_t em = e % q1;
  if (em < 0) em += q1;
  uint64_t r = mulmod64(a.code_ - 1, static_cast<uint64_t>(em), static_cast<uint64_t>(q1));
  return Fq(this, static_cast<uint32_t>(r) + 1);
}

std::optional<Fq> FiniteField::sqrt(const Fq& a) const {
  if (a.code_ == 0) return a;
  uint32_t n = a.code_ - 1;
  if (n & 1u) return std::nullopt;
  return Fq(this, n / 2 + 1);
}

Fq FiniteField::inverse_frobenius(const Fq& a) const { return pow(a, static_cast<int64_t>(q_ / p_)); }

Fq FiniteField::random(Rng& rng) const {
  std::uniform_int_distribution<uint64_t> d(0, q_ - 1);
  return from_index(d(rng));
}

Fq FiniteField::random_nonzero(Rng& rng) const {
  std::uniform_int_distribution<uint64_t> d(1, q_ - 1);
  return from_index(d(rng));
}

std::string FiniteField::to_string(const Fq& a) const {
  if (k_ == 1) return std::to_string(index(a));
  auto d = digits(a);
  std::ostringstream os;
  bool first = true;
  for (int i = k_ - 1; i >= 0; --i) {
    if (!d[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || d[i] != 1) os << d[i];
    if (i >= 1) os << "a";
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

std::string FiniteField::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (k_ > 1) {
    std::vector<int64_t> ints(modulus_.begin(), modulus_.end());
    FieldPtr prime = create(p_, 1);
    os << " = F_" << p_ << "[a]/(" << Poly::from_ints(prime.get(), ints).to_string("a") << ")";
  }
  return os.str();
}

}  // namespace nefcert
