#pragma once

#include <optional>
#include <vector>

#include "nefcert/field.hpp"

namespace nefcert {

using Vec = std::vector<Fq>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(const FiniteField* f, size_t rows, size_t cols);
  static Matrix identity(const FiniteField* f, size_t n);
  static Matrix from_rows(const FiniteField* f, const std::vector<Vec>& rows, size_t cols);

  const FiniteField* field() const { return f_; }
  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  Fq& at(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Fq& at(size_t i, size_t j) const { return a_[i * c_ + j]; }
  Vec row(size_t i) const;
  Vec col(size_t j) const;
  void append_row(const Vec& v);

  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

 private:
  const FiniteField* f_ = nullptr;
  size_t r_ = 0, c_ = 0;
  std::vector<Fq> a_;
};

// In-place reduced row echelon form; returns the pivot columns.
std::vector<size_t> rref(Matrix& m);
size_t rank(Matrix m);
// Basis of {v : m v = 0}, one vector per free column, in column order.
std::vector<Vec> kernel(const Matrix& m);
std::optional<Vec> solve(const Matrix& m, const Vec& b);
Fq determinant(Matrix m);
std::optional<Matrix> inverse(const Matrix& m);

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Fq& c);
bool vec_is_zero(const Vec& a);

}  // namespace nefcert
