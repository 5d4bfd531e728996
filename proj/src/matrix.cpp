#include "qtamm/matrix.hpp"

#include <algorithm>
#include <cassert>

#include "qtamm/kernels.hpp"

namespace qtamm {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  assert(rows_ == other.rows_ && cols_ == other.cols_);
  kernels::axpy(1.0, other.data_, data_);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  assert(rows_ == other.rows_ && cols_ == other.cols_);
  kernels::axpy(-1.0, other.data_, data_);
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  assert(a.cols_ == b.rows_);
  const Matrix bt = b.transposed();
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = kernels::dot(a.row(i), bt.row(j));
  return c;
}

double Matrix::max_abs(std::size_t row_begin, std::size_t row_end) const {
  if (row_end <= row_begin) return 0.0;
  return kernels::max_abs(std::span<const double>(data_).subspan(row_begin * cols_,
                                                                   (row_end - row_begin) * cols_));
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
  assert(x.size() == cols_);
  std::vector<double> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) y[i] = kernels::dot(row(i), x);
  return y;
}

}  // namespace qtamm
