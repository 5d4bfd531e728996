#pragma once

// Coherent states a|z> = z|z> and the weight-function moment problem
//
//   int_0^inf f(x) x^n Dx = {n}!,   f(x) = phi(2) (d/dx)^2 e'(-x),
//
// where e' is the exponential with weights (eta, mu) and phi(j) = {j}/j.

#include <complex>
#include <cstddef>
#include <vector>

#include "qtamm/calculus.hpp"
#include "qtamm/params.hpp"

namespace qtamm {

struct CoherentState {
  std::complex<double> z;
  /// c_n = e(|z|^2)^(-1/2) z^n / sqrt({n}!), n < trunc.
  std::vector<std::complex<double>> coeffs;
  std::size_t trunc = 0;
  /// 1 - sum |c_n|^2.
  double norm_defect = 0.0;
  /// Bound on sum_{n >= trunc} |c_n|^2 used to stop the recursion.
  double tail_bound = 0.0;
};

/// Amplitudes by c_(n+1) = z c_n / sqrt({n+1}); stops once the bound on the
/// remaining norm is below tol^2 and |z c_last| <= tol, so both the norm
/// defect and the truncation part of the eigen-defect stay at tol.
/// Error(NoConvergence) past max_terms,
/// RepresentationBreakdown on {n} <= 0.
CoherentState coherent_coeffs(std::complex<double> z, const DeformationParams& p,
                              double tol = 1e-12, std::size_t max_terms = 10000);

/// ||a|z> - z|z>|| with a from build_fock on the truncated space.
double eigen_defect(const CoherentState& s, const DeformationParams& p);

/// <z|z'> = e(conj(z) z') / sqrt(e(|z|^2) e(|z'|^2)).
std::complex<double> overlap(std::complex<double> z, std::complex<double> zp,
                             const DeformationParams& p, double tol = 1e-16);

/// || |z> - |z'> || from the overlap: sqrt(2 (1 - Re<z|z'>)).
double state_distance(std::complex<double> z, std::complex<double> zp, const DeformationParams& p,
                      double tol = 1e-16);

/// Same distance computed from the amplitude vectors.
double coefficient_distance(const CoherentState& a, const CoherentState& b);

/// {j}/j.
double phi(const DeformationParams& p, long j);

struct WeightCoeffs {
  std::vector<double> g;
  /// phi(j) for j = 0 .. K + 2 (entry 0 unused).
  std::vector<double> phi_cache;
};

/// g_0 = 1 and
///   g_k = (-1)^k / (k! phi(k+2)!) [phi(2) - sum_{i<k} g_i (-1)^i k!/(k-i)!
///                                   prod_{j=k-i+1}^{k+2} phi(j)],
/// phi(i)! = prod_{j<=i} phi(j). Error(ZeroPhi) on a vanishing phi(k+2)!.
WeightCoeffs weight_coeffs(const DeformationParams& p, std::size_t K);

/// phi(2)(phi(3) - 1) / phi(3)!
double g1_closed(const DeformationParams& p);
/// (phi(2) - phi(3)phi(4) + 2 phi(2)(phi(3) - 1) phi(4)) / (2 phi(4)!)
double g2_closed(const DeformationParams& p);

/// max over n <= n_max of |sum_k g_k (n+k)!/n! prod_{j=n+1}^{n+k+2} phi(j) - phi(2)| / phi(2),
/// the defining system the coefficients are meant to solve.
double weight_resubstitution_defect(const DeformationParams& p, const WeightCoeffs& w,
                                    long n_max);

struct WeightValue {
  double f = 0.0;
  double mu_weight = 0.0;
  /// e'(-x) sum_k g_k x^k, the truncated series route.
  double f_gseries = 0.0;
};

/// Evaluates f, mu(x) = e(x) f(x) and the g-series route. Tables are built
/// once at construction; evaluation is const and thread-safe.
class WeightFunction {
 public:
  WeightFunction(const DeformationParams& p, double x_max = 1e6, std::size_t K = 8);

  WeightValue operator()(double x) const;
  /// phi(2) e''(-x), precision-escalating.
  double f(double x) const;

  const WeightCoeffs& coeffs() const { return w_; }
  /// Values of e'(-x) d/dx x^n and x^n d/dx e'(-x) at x, the boundary terms
  /// of the integration by parts that yields f.
  std::pair<double, double> boundary_terms(long n, double x) const;

 private:
  DeformationParams p_;
  double phi2_;
  /// q = 1 with unit total weight: every reflected exponential is exp.
  bool classical_;
  ExpSeries e0_reflected_;
  ExpSeries e1_reflected_;
  ExpSeries e2_reflected_;
  WeightCoeffs w_;
};

WeightValue weight_function(const DeformationParams& p, double x);

struct MomentRow {
  long n = 0;
  double numeric = 0.0;
  double exact = 0.0;
  double rel_error = 0.0;
  bool regularized = false;
  /// Envelope residual at the quadrature cutoff.
  double residual = 0.0;
  double cutoff = 0.0;
  /// |e'(-X) d/dx X^n| and |X^n d/dx e'(-X)| at the cutoff X.
  double boundary_value = 0.0;
  double boundary_derivative = 0.0;
};

struct MomentReport {
  std::vector<MomentRow> rows;
  double max_rel_error = 0.0;
  bool passed = false;
};

/// int_0^inf f(x) x^n Dx against {n}! for n = 0..n_max. Dx is the integral
/// with weights (eta, mu), the measure under which the f formula solves the
/// problem. Errors from the quadrature propagate.
MomentReport moment_problem_check(const DeformationParams& p, long n_max, double tol,
                                  double quad_tol = 1e-12);

struct PositivityProbe {
  double min_value = 0.0;
  double argmin = 0.0;
  bool nonnegative = true;
};

/// Samples mu(x) on [0, x_max]. Reported, not asserted.
PositivityProbe weight_positivity_probe(const DeformationParams& p, double x_max,
                                        std::size_t samples);

}  // namespace qtamm
