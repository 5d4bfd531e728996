#include "qtamm/power_series.hpp"

#include <algorithm>
#include <cmath>

#include "qtamm/algebra.hpp"
#include "qtamm/kernels.hpp"

namespace qtamm {

PowerSeries PowerSeries::monomial(std::size_t n, std::size_t trunc, double coeff) {
  PowerSeries s = zeros(trunc);
  if (n < trunc) s[n] = coeff;
  return s;
}

PowerSeries PowerSeries::fock_monomial(const DeformationParams& p, std::size_t n,
                                       std::size_t trunc) {
  return monomial(n, trunc, 1.0 / std::sqrt(qfactorial(p, static_cast<long>(n))));
}

PowerSeries PowerSeries::truncated(std::size_t trunc) const {
  std::vector<double> c(trunc, 0.0);
  std::copy_n(c_.begin(), std::min(trunc, c_.size()), c.begin());
  return PowerSeries(std::move(c));
}

double PowerSeries::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> PowerSeries::eval(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PowerSeries PowerSeries::derivative() const {
  if (c_.size() <= 1) return zeros(1);
  std::vector<double> d(c_.size() - 1);
  for (std::size_t n = 1; n < c_.size(); ++n) d[n - 1] = static_cast<double>(n) * c_[n];
  return PowerSeries(std::move(d));
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
  if (o.trunc() < trunc()) c_.resize(o.trunc());
  kernels::axpy(1.0, o.coeffs().first(trunc()), c_);
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
  if (o.trunc() < trunc()) c_.resize(o.trunc());
  kernels::axpy(-1.0, o.coeffs().first(trunc()), c_);
  return *this;
}

PowerSeries& PowerSeries::operator*=(double s) {
  kernels::scale(s, c_);
  return *this;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t t = std::min(a.trunc(), b.trunc());
  if (t == 0) return {};
  // c_k = sum_i a_i b_(k-i) is a dot product against reversed b.
  std::vector<double> rb(t);
  for (std::size_t j = 0; j < t; ++j) rb[j] = b.c_[t - 1 - j];
  std::vector<double> c(t);
  const std::span<const double> ra(a.c_.data(), t);
  const std::span<const double> rbs(rb);
  for (std::size_t k = 0; k < t; ++k) {
    c[k] = kernels::dot(ra.first(k + 1), rbs.subspan(t - 1 - k, k + 1));
  }
  return PowerSeries(std::move(c));
}

PowerSeries scale_op(const PowerSeries& s, double q, double power) {
  PowerSeries out = s;
  if (power != 0.0) kernels::geometric_scale(out.coeffs(), std::pow(q, power));
  return out;
}

double max_coeff_diff(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t t = std::min(a.trunc(), b.trunc());
  return kernels::max_abs_diff(a.coeffs().first(t), b.coeffs().first(t));
}

}  // namespace qtamm
