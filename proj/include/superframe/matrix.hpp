#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "superframe/errors.hpp"
#include "superframe/rational.hpp"

namespace superframe {

/// Dense row-major matrix over an exact ring (Integer or Rational).
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Builds from nested rows; all rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) throw Error(ErrorKind::ShapeMismatch, "matrix has no rows");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::ShapeMismatch, "matrix product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
    if (a.cols_ != x.size()) throw Error(ErrorKind::ShapeMismatch, "matrix-vector product");
    std::vector<T> y(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

RatMatrix to_rational(const IntMatrix& a);
RatVector to_rational(const IntVector& v);

/// Throws if any entry has a denominator other than 1.
IntMatrix to_integer(const RatMatrix& a);
bool is_integral(const RatMatrix& a);
bool is_integral(const RatVector& v);

/// Matrix power for square matrices, j >= 0.
IntMatrix power(const IntMatrix& a, unsigned j);

// Text format: rows separated by ';', entries by ','; rationals as a/b.
RatMatrix parse_rat_matrix(std::string_view text);
IntMatrix parse_int_matrix(std::string_view text);
std::string format_matrix(const RatMatrix& a);
std::string format_matrix(const IntMatrix& a);
std::string format_vector(const RatVector& v);
std::string format_vector(const IntVector& v);

/// Componentwise reduction into [0,1)^d.
RatVector frac(const RatVector& v);
Rational dot(const RatVector& a, const RatVector& b);

RatVector add(const RatVector& a, const RatVector& b);
RatVector subtract(const RatVector& a, const RatVector& b);

}  // namespace superframe
