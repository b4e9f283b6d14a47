#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "twinrep/scalar.hpp"

namespace twinrep {

/// Dense row-major matrix over one scalar backend. Vectors are n x 1
/// matrices (column convention throughout).
template <Scalar F>
class Matrix {
 public:
  using value_type = F;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  Matrix(std::initializer_list<std::initializer_list<F>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  static Matrix column(const std::vector<F>& entries) {
    Matrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
  }

  /// Standard basis vector e_{index+1} of dimension n (0-based index).
  static Matrix unit(std::size_t n, std::size_t index) {
    Matrix m(n, 1);
    m(index, 0) = F(1);
    return m;
  }

  /// Columns side by side; all must have the same row count.
  static Matrix hstack(const std::vector<Matrix>& columns) {
    if (columns.empty()) return Matrix();
    const std::size_t rows = columns.front().rows();
    std::size_t cols = 0;
    for (const auto& c : columns) {
      if (c.rows() != rows) throw DimensionError("hstack: row counts differ");
      cols += c.cols();
    }
    Matrix m(rows, cols);
    std::size_t offset = 0;
    for (const auto& c : columns) {
      m.set_block(0, offset, c);
      offset += c.cols();
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Vector access for n x 1 matrices.
  F& operator[](std::size_t i) { return data_[i]; }
  const F& operator[](std::size_t i) const { return data_[i]; }

  const std::vector<F>& data() const { return data_; }

  Matrix col(std::size_t j) const {
    Matrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
    if (r0 + rows > rows_ || c0 + cols > cols_) throw DimensionError("block out of range");
    Matrix b(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  /// The matrix with its first row and first column removed.
  Matrix drop_first_row_col() const {
    if (rows_ == 0 || cols_ == 0) throw DimensionError("nothing to drop");
    return block(1, 1, rows_ - 1, cols_ - 1);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, magnitude(x));
    return m;
  }

  bool is_zero(Tolerance tol = Tolerance::standard()) const {
    for (const auto& x : data_)
      if (!twinrep::is_zero(x, tol)) return false;
    return true;
  }

  template <Scalar G>
  Matrix<G> cast() const {
    Matrix<G> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = scalar_cast<G>((*this)(i, j));
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const F& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(Matrix a, const F& s) { return a *= s; }
  friend Matrix operator*(const F& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("product of " + a.shape() + " and " + b.shape());
    }
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (twinrep::is_zero(aik, Tolerance{0.0})) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  /// Entrywise backend equality (bit-exact for the exact backend).
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!(a.data_[k] == b.data_[k])) return false;
    return true;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string("operator") + op + ": " + shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <Scalar F>
bool approx_equal(const Matrix<F>& a, const Matrix<F>& b, Tolerance tol = Tolerance::standard()) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!approx_equal(a(i, j), b(i, j), tol)) return false;
  return true;
}

/// Block-diagonal A (+) B.
template <Scalar F>
Matrix<F> direct_sum(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

template <Scalar F>
Matrix<F> direct_sum(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c) {
  return direct_sum(direct_sum(a, b), c);
}

/// Flattens a matrix row-major into a d^2 coordinate vector.
template <Scalar F>
std::vector<F> flatten(const Matrix<F>& m) {
  return m.data();
}

template <Scalar F>
std::ostream& operator<<(std::ostream& os, const Matrix<F>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
  }
  return os << ']';
}

}  // namespace twinrep
