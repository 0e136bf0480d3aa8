#include "nefcert/linalg.hpp"

namespace nefcert {

Matrix::Matrix(const FiniteField* f, size_t rows, size_t cols) : f_(f), r_(rows), c_(cols), a_(rows * cols, f->zero()) {}

Matrix Matrix::identity(const FiniteField* f, size_t n) {
  Matrix m(f, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

Matrix Matrix::from_rows(const FiniteField* f, const std::vector<Vec>& rows, size_t cols) {
  Matrix m(f, 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Vec Matrix::row(size_t i) const { return Vec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

Vec Matrix::col(size_t j) const {
  Vec v;
  for (size_t i = 0; i < r_; ++i) v.push_back(at(i, j));
  return v;
}

void Matrix::append_row(const Vec& v) {
  if (v.size() != c_) throw Error("row length mismatch");
  a_.insert(a_.end(), v.begin(), v.end());
  ++r_;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) throw Error("matrix shape mismatch");
  Matrix m(f_, r_, o.c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t k = 0; k < c_; ++k) {
      Fq a = at(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < o.c_; ++j) m.at(i, j) = f_->add(m.at(i, j), f_->mul(a, o.at(k, j)));
    }
  return m;
}

Vec Matrix::operator*(const Vec& v) const {
  if (c_ != v.size()) throw Error("matrix shape mismatch");
  Vec out(r_, f_->zero());
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) out[i] = f_->add(out[i], f_->mul(at(i, j), v[j]));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix m(f_, c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

std::vector<size_t> rref(Matrix& m) {
  const FiniteField* f = m.field();
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t sel = row;
    while (sel < m.rows() && m.at(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
    Fq inv = f->inv(m.at(row, col));
    for (size_t j = col; j < m.cols(); ++j) m.at(row, j) = f->mul(m.at(row, j), inv);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      Fq c = m.at(i, col);
      if (c.is_zero()) continue;
      Fq nc = f->neg(c);
      for (size_t j = col; j < m.cols(); ++j) m.at(i, j) = f->add(m.at(i, j), f->mul(nc, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

size_t rank(Matrix m) { return rref(m).size(); }

std::vector<Vec> kernel(const Matrix& m) {
  const FiniteField* f = m.field();
  Matrix r = m;
  auto piv = rref(r);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vec> out;
  for (size_t free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    Vec v(m.cols(), f->zero());
    v[free] = f->one();
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f->neg(r.at(i, free));
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  const FiniteField* f = m.field();
  if (b.size() != m.rows()) throw Error("matrix shape mismatch");
  Matrix aug(f, m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), f->zero());
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(i, m.cols());
  return x;
}

Fq determinant(Matrix m) {
  const FiniteField* f = m.field();
  if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
  size_t n = m.rows();
  Fq det = f->one();
  for (size_t c = 0; c < n; ++c) {
    size_t sel = c;
    while (sel < n && m.at(sel, c).is_zero()) ++sel;
    if (sel == n) return f->zero();
    if (sel != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(c, j));
      det = f->neg(det);
    }
    det = f->mul(det, m.at(c, c));
    Fq inv = f->inv(m.at(c, c));
    for (size_t i = c + 1; i < n; ++i) {
      Fq factor = f->mul(m.at(i, c), inv);
      if (factor.is_zero()) continue;
      Fq nf = f->neg(factor);
      for (size_t j = c; j < n; ++j) m.at(i, j) = f->add(m.at(i, j), f->mul(nf, m.at(c, j)));
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
  const FiniteField* f = m.field();
  size_t n = m.rows();
  if (n != m.cols()) throw Error("inverse of non-square matrix");
  Matrix aug(f, n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = f->one();
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix out(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

Vec vec_scale(const Vec& a, const Fq& c) {
  Vec r(a);
  for (auto& x : r) x = x * c;
  return r;
}

bool vec_is_zero(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace nefcert
