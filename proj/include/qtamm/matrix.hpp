#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qtamm {

/// Small dense row-major matrix. Sized for truncated Fock spaces
/// (dim in the tens to low hundreds), not for large linear algebra.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> values() const { return data_; }

  Matrix transposed() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }

  /// Max |a_ij| over rows [row_begin, row_end).
  double max_abs(std::size_t row_begin, std::size_t row_end) const;
  double max_abs() const { return max_abs(0, rows_); }

  std::vector<double> apply(std::span<const double> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace qtamm
