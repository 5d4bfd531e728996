#pragma once

// Finite d-dimensional specialization: exponents (1, -1, -1, -1) and
// mu = 1/(1 - q^(2d)), so that
//
//   {n}_d = n (q^(n-1) - q^(2d-n-1)) / (1 - q^(2d)),   {d}_d = 0,
//
// and the Fock space closes at dimension d.

#include <cstddef>

#include "qtamm/algebra.hpp"
#include "qtamm/power_series.hpp"

namespace qtamm {

struct FiniteParams {
  double q = 0.5;
  /// Nonzero; negative d is admitted for the {-k}_d = -{k}_(-d) identity.
  long d = 1;

  double mu() const;
  /// Core parameters with exponents (1, -1, -1, -1), mu = 1/(1 - q^(2d)),
  /// eta = 1 - mu formed as -q^(2d)/(1 - q^(2d)).
  DeformationParams as_deformation() const;
  /// Error(InvalidParams) unless 0 < q < 1 and d != 0.
  void validate() const;
};

/// Direct form n (q^(n-1) - q^(2d-n-1)) / (1 - q^(2d)).
double qnumber_d(const FiniteParams& fp, double n);

/// Exactly d-dimensional representation; the ladder stops at sqrt({d-1}_d)
/// and the top commutator row is exact because {d}_d = 0.
FockRep build_fock_d(const FiniteParams& fp);

/// c_n x^n -> c_n {n}_d x^(n-1).
PowerSeries deformed_derivative_d(const PowerSeries& s, const FiniteParams& fp);
/// ((T - q^(2d-2) T^-1) / (1 - q^(2d))) ∂, assembled from scaling operators.
PowerSeries deformed_derivative_d_operator(const PowerSeries& s, const FiniteParams& fp);

/// c_n x^n -> c_n x^(n+1) / {n+1}_d. ZeroDenominator at the first nonzero
/// coefficient with {n+1}_d = 0 (in particular n = d - 1).
PowerSeries deformed_antiderivative_d(const PowerSeries& s, const FiniteParams& fp);

/// Relative defect of
///   D(fg) = (Df)(Tg) + (T^-1 f)(Dg) + (𝒯_d f)(T ∂g) + q^(2d-2)(T^-1 ∂f)(𝒯_d g),
/// 𝒯_d = (T - T^-1)/(1 - q^(2d)).
double leibniz_defect_d(const PowerSeries& f, const PowerSeries& g, const FiniteParams& fp);

/// E_d(x) = sum_{n<d} x^n / {n}_d!; the series stops at degree d - 1 since
/// {n}_d! = 0 for n >= d.
double deformed_exp_d(const FiniteParams& fp, double x);
PowerSeries deformed_exp_d_series(const FiniteParams& fp, std::size_t trunc);

/// |D E_d(w x) - w E_d(w x)|. Only the top degree survives:
/// w (w x)^(d-1) / {d-1}_d!, computed here from the series.
double exp_d_eigen_defect(const FiniteParams& fp, double omega, double x);

/// |{-k}_d + {k}_(-d)| / |{-k}_d|.
double neg_qnumber_d_identity_defect(const FiniteParams& fp, long k);

struct MomentIdentityD {
  /// (-1)^n prod_{k<=n} {-k}_d
  double lhs = 0.0;
  /// {n}_(-d)!
  double rhs = 0.0;
  double rel_defect = 0.0;
  /// max over k <= n of neg_qnumber_d_identity_defect.
  double max_link_defect = 0.0;
};

/// The half-line moment of E_d(-x) x^n, checked along its algebraic chain.
MomentIdentityD moment_identity_d_check(const FiniteParams& fp, long n);

}  // namespace qtamm
