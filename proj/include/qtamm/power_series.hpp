#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qtamm/params.hpp"

namespace qtamm {

/// Truncated power series sum_n c_n x^n, n < trunc.
///
/// Ring operations truncate at the shorter operand. Exact operators that
/// shift degree (derivatives, antiderivatives) change the length instead of
/// dropping a coefficient, so D(∫ s) has exactly the length of s.
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  static PowerSeries zeros(std::size_t trunc) { return PowerSeries(std::vector<double>(trunc)); }
  static PowerSeries monomial(std::size_t n, std::size_t trunc, double coeff = 1.0);
  /// The Fock basis vector |n> = x^n / sqrt({n}!).
  static PowerSeries fock_monomial(const DeformationParams& p, std::size_t n, std::size_t trunc);

  std::size_t trunc() const { return c_.size(); }
  std::span<const double> coeffs() const { return c_; }
  std::span<double> coeffs() { return c_; }
  double operator[](std::size_t n) const { return n < c_.size() ? c_[n] : 0.0; }
  double& operator[](std::size_t n) { return c_[n]; }

  PowerSeries truncated(std::size_t trunc) const;

  double eval(double x) const;
  std::complex<double> eval(std::complex<double> x) const;

  /// Ordinary derivative; length trunc - 1 (at least 1).
  PowerSeries derivative() const;

  PowerSeries& operator+=(const PowerSeries& o);
  PowerSeries& operator-=(const PowerSeries& o);
  PowerSeries& operator*=(double s);

  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(PowerSeries a, double s) { return a *= s; }
  friend PowerSeries operator*(double s, PowerSeries a) { return a *= s; }
  /// Cauchy product truncated at min(a.trunc(), b.trunc()).
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);

 private:
  std::vector<double> c_;
};

/// (T_q^power s)(x) = s(q^power x): c_n -> q^(power n) c_n.
PowerSeries scale_op(const PowerSeries& s, double q, double power);

/// max_n |a_n - b_n| over the common length.
double max_coeff_diff(const PowerSeries& a, const PowerSeries& b);

}  // namespace qtamm
