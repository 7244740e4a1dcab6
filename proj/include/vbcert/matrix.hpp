#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "vbcert/error.hpp"
#include "vbcert/scalar.hpp"

namespace vbcert {

/// Dense row-major matrix over one scalar backend.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw Error(ErrorCode::SizeMismatch, "entry count " + std::to_string(data_.size()) +
                                               " does not match " + std::to_string(rows_) + "x" +
                                               std::to_string(cols_));
  }

  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::SizeMismatch, "ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix column(std::vector<T> v) {
    const std::size_t n = v.size();
    return Matrix(n, 1, std::move(v));
  }

  static Matrix row(std::vector<T> v) {
    const std::size_t n = v.size();
    return Matrix(1, n, std::move(v));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> entries() const noexcept { return data_; }
  std::span<T> entries() noexcept { return data_; }

  std::span<const T> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> column_vector(std::size_t j) const {
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

  /// Column order reversed (the anti-identity applied on the right).
  Matrix reverse_columns() const {
    Matrix t(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(i, j) = (*this)(i, cols_ - 1 - j);
    return t;
  }

  template <class U>
  Matrix<U> cast() const {
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& v : data_) {
      if constexpr (std::is_same_v<U, double>)
        out.push_back(to_double(v));
      else
        out.push_back(U(v));
    }
    return Matrix<U>(rows_, cols_, std::move(out));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw Error(ErrorCode::SizeMismatch, "product of " + a.shape() + " and " + b.shape());
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t p = 0; p < a.cols_; ++p) {
        const T& aip = a(i, p);
        if (is_exact_zero(aip)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aip * b(p, j);
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix c = a;
    for (auto& v : c.data_) v *= s;
    return c;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw Error(ErrorCode::SizeMismatch, "shapes " + shape() + " and " + b.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Row vector times matrix.
template <class T>
std::vector<T> mul(std::span<const T> row, const Matrix<T>& m) {
  if (row.size() != m.rows()) throw Error(ErrorCode::SizeMismatch, "row vector length");
  std::vector<T> out(m.cols(), T(0));
  for (std::size_t p = 0; p < m.rows(); ++p) {
    if (is_exact_zero(row[p])) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += row[p] * m(p, j);
  }
  return out;
}

/// Matrix times column vector.
template <class T>
std::vector<T> mul(const Matrix<T>& m, std::span<const T> col) {
  if (col.size() != m.cols()) throw Error(ErrorCode::SizeMismatch, "column vector length");
  std::vector<T> out(m.rows(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_exact_zero(col[j])) out[i] += m(i, j) * col[j];
  return out;
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::SizeMismatch, "dot product length");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Builds an exact matrix from decimal strings.
Matrix<Rational> parse_matrix(const std::vector<std::vector<std::string>>& rows);
std::vector<Rational> parse_vector(const std::vector<std::string>& entries);

}  // namespace vbcert
