#include <cmath>

#include "qtamm/kernels.hpp"

namespace qtamm::kernels::scalar {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares(const double* a, std::size_t n) { return dot(a, a, n); }

double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(a[i]));
  return m;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(a[i] - b[i]));
  return m;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void geometric_scale(double* x, double ratio, std::size_t n) {
  double p = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] *= p;
    p *= ratio;
  }
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{Isa::Scalar, dot,   sum_squares, max_abs,        max_abs_diff,
                             axpy,        scale, multiply,    geometric_scale};
  return t;
}

}  // namespace qtamm::kernels::scalar
