#pragma once

// Deformed differential and integral calculus.
//
// The deformed derivative acts on monomials as D x^n = {n} x^(n-1). In
// operator form it is ∂ followed by mu q^(alpha+beta) T_q^alpha + eta
// q^(gamma+delta) T_q^gamma, which for the symmetric family is
// (mu T_q^-1 + (1-mu) T_q) ∂.

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "qtamm/algebra.hpp"
#include "qtamm/power_series.hpp"
#include "qtamm/quadrature.hpp"

namespace qtamm {

/// Real function with a caller-supplied exact derivative, valid on [lo, hi].
struct EvalFn {
  std::function<double(double)> f;
  std::function<double(double)> fprime;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// c_n x^n -> c_n {n} x^(n-1), via the deformed-number eigenvalues.
PowerSeries deformed_derivative(const PowerSeries& s, const DeformationParams& p);

/// Same operator assembled from scaling operators and ∂. Independent route
/// used to cross-check `deformed_derivative`.
PowerSeries deformed_derivative_operator(const PowerSeries& s, const DeformationParams& p);

/// mu q^(alpha+beta) g'(q^alpha x) + eta q^(gamma+delta) g'(q^gamma x).
/// Error(DomainError) if either scaled point leaves [g.lo, g.hi].
double deformed_derivative_fn(const EvalFn& g, const DeformationParams& p, double x);

/// c_n x^n -> c_n x^(n+1) / {n+1}; length trunc + 1. ZeroDenominator names
/// the first n with a nonzero coefficient and {n+1} = 0.
PowerSeries deformed_antiderivative(const PowerSeries& s, const DeformationParams& p);

struct SeriesSum {
  double value = 0.0;
  std::size_t terms = 0;
  /// sum |t_n|; value / magnitude measures cancellation.
  double magnitude = 0.0;
};

struct ExpOptions {
  double tol = 1e-16;
  std::size_t max_terms = 10000;
};

/// e(x) = sum x^n / {n}!, compensated (Neumaier) summation. Stops once two
/// consecutive terms fall below tol times the running sum. Error(NoConvergence)
/// past max_terms or on overflow.
SeriesSum deformed_exp_sum(const DeformationParams& p, double x, const ExpOptions& opt = {});
double deformed_exp(const DeformationParams& p, double x, double tol = 1e-16);
std::complex<double> deformed_exp(const DeformationParams& p, std::complex<double> z,
                                  double tol = 1e-16);
/// Coefficients 1/{n}!, n < trunc.
PowerSeries deformed_exp_series(const DeformationParams& p, std::size_t trunc);

/// Extended-precision partial sum of the same series (fixed term count).
template <class Real>
Real deformed_exp_as(const DeformationParams& p, const Real& x, std::size_t terms) {
  Real sum(0);
  Real term(1);
  for (std::size_t n = 0; n < terms; ++n) {
    sum += term;
    term = term * x / qnumber_as<Real>(p, Real(n + 1));
  }
  return sum;
}

/// d^k/dx^k e(s x) at x, evaluated termwise with compensated summation.
double deformed_exp_derivative(const DeformationParams& p, double s, double x, int order,
                               const ExpOptions& opt = {});

/// d^k/dy^k e(y) = sum_m a_m y^m, a_m = (m+1)...(m+k) / {m+k}!, with the
/// coefficients held in double, 50- and 100-digit precision. Evaluation
/// starts in double and moves up a precision tier whenever the cancellation
/// bound (unit roundoff times sum |a_m y^m|) exceeds rel_tol * |value|.
/// Needed for e(-x) deep in the cancellation regime, where the largest
/// term exceeds the result by tens of orders of magnitude.
class ExpSeries {
 public:
  /// Terms are kept until they are negligible at every precision tier for
  /// |y| <= y_max. Error(NoConvergence) if that needs more than max_terms.
  ExpSeries(const DeformationParams& p, int order, double y_max, std::size_t max_terms = 10000);
  ~ExpSeries();
  ExpSeries(ExpSeries&&) noexcept;
  ExpSeries& operator=(ExpSeries&&) noexcept;

  /// Error(NoConvergence) when even 100 digits do not resolve the value,
  /// Error(DomainError) for |y| > y_max.
  double operator()(double y, double rel_tol = 1e-14) const;

  std::size_t terms() const;
  double y_max() const { return y_max_; }
  /// Precision tier used by the last call on this thread: 0 double, 1 = 50
  /// digits, 2 = 100 digits. Diagnostic only.
  static int last_tier();

 private:
  struct Tables;
  std::unique_ptr<Tables> t_;
  double y_max_;
};

/// Relative defect of the four-term product rule for the symmetric family:
///   D(fg) = (Df)(T^-1 g) + (Tf)(Dg) - mu (𝒯f)(T^-1 ∂g) + (1-mu)(T ∂f)(𝒯g),
/// 𝒯 = T - T^-1. Measured as max |lhs - rhs| / max(1, max sum |terms|).
/// Error(InvalidParams) for other exponent sets.
double leibniz_defect(const PowerSeries& f, const PowerSeries& g, const DeformationParams& p);

/// Which term of D's operator form the inverse expansion is built around.
enum class ExpansionBranch { MuTerm, EtaTerm };

struct InverseExpansion {
  ExpansionBranch branch = ExpansionBranch::MuTerm;
  double prefactor = 0.0;  ///< 1 / (leading coefficient)
  double ratio = 0.0;      ///< operator ratio -(other coefficient) / (leading)
  double lead_power = 0.0; ///< T power applied by the leading inverse
  double step_power = 0.0; ///< T power per geometric step
  /// Ratio of successive half-line terms: ratio * q^-step_power.
  double halfline_ratio = 0.0;
};

/// Geometric expansion of (A + B)^-1, A = mu q^(alpha+beta) T^alpha,
/// B = eta q^(gamma+delta) T^gamma, around the larger coefficient.
/// Error(ExpansionDivergence) when the coefficients have equal magnitude.
InverseExpansion inverse_expansion(const DeformationParams& p);

struct DeformedIntegral {
  double value = 0.0;
  double error = 0.0;
  std::size_t terms = 0;
  bool regularized = false;
  /// Largest envelope residual among the ordinary integrals (see
  /// quad::HalfLineResult).
  double residual = 0.0;
  double cutoff = 0.0;
  ExpansionBranch branch = ExpansionBranch::MuTerm;
};

/// ∫_0^∞ Dx f: the inverse-operator series sum_n c r^n ∫_0^∞ dx f(q^(s_n) x),
/// each ordinary integral by half-line quadrature, summed until the
/// geometric tail bound is below quad_tol. Error(ExpansionDivergence) when
/// the series of half-line terms does not contract.
DeformedIntegral deformed_integral_halfline(const std::function<double(double)>& f,
                                            const DeformationParams& p, double quad_tol = 1e-12);

/// |{-k} + (k/(k+2)) {k+2}'| / |{-k}|, where {·}' uses weights (eta, mu).
double neg_qnumber_identity_defect(const DeformationParams& p, long k);

/// (-1)^n prod_{k=1}^n {-k} / omega^(n+1): the closed-form half-line moment.
double halfline_moment(const DeformationParams& p, long n, double omega = 1.0);

/// 2 {n+2}! / ({2} (n+1)(n+2)) with the unreflected {·}: the moment of the
/// reflected exponential e'(-x) against the reflected measure.
double reflected_moment(const DeformationParams& p, long n);

struct LogIntegral {
  /// Coefficient c in ∫Dx 1/x = c ln x.
  double value = 0.0;
  bool exists = false;
  /// x · D(ln x), from deformed_derivative_fn.
  double derivative_coefficient = 0.0;
  /// |value · derivative_coefficient - 1|
  double consistency = 0.0;
};

LogIntegral log_integral_identity(const DeformationParams& p);

}  // namespace qtamm
