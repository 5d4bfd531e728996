#pragma once

// Position/momentum Jacobi matrices and the oscillator spectrum.
//
//   Q = (1/(2 m w))^(1/2) (a^+ + a),   P = i (m w / 2)^(1/2) (a^+ - a),
//   H = (w/2)(a a^+ + a^+ a),  E(n) = (w/2)({n} + {n+1}).

#include <complex>
#include <cstddef>
#include <vector>

#include "qtamm/matrix.hpp"
#include "qtamm/params.hpp"

namespace qtamm {

struct OscillatorConfig {
  DeformationParams params;
  double m = 1.0;
  double omega = 1.0;
  std::size_t dim = 64;

  void validate() const;
};

enum class JacobiKind { Q, P };

/// Tridiagonal matrix with zero diagonal. offdiag[n] = b_n = sqrt({n+1}).
/// For P the entry (n, n+1) is -i scale b_n and (n+1, n) is +i scale b_n.
struct JacobiMatrix {
  JacobiKind kind = JacobiKind::Q;
  std::vector<double> offdiag;
  double scale = 1.0;

  std::size_t dim() const { return offdiag.size() + 1; }
  /// Dense complex matrix, row-major, dim x dim.
  std::vector<std::complex<double>> dense() const;
};

/// b_n = sqrt({n+1}). Error RepresentationBreakdown for {n+1} < 0.
double ladder_coefficient(const DeformationParams& p, long n);

JacobiMatrix build_jacobi(const OscillatorConfig& cfg, JacobiKind kind);

struct SelfAdjointnessDiagnostics {
  /// b_n / b_(n+1) near n_max, extrapolated in 1/n. Tends to sqrt(q).
  double ratio_limit_estimate = 0.0;
  /// Raw ratio at n_max - 1.
  double ratio_at_nmax = 0.0;
  /// sum_{n<=n_max} 1 / b_n.
  double partial_sum = 0.0;
  /// Geometric bound on the remaining tail from the ratio at n_max.
  double tail_estimate = 0.0;
  /// tail_estimate is finite and small relative to partial_sum.
  bool converging = false;
  bool logconcavity_ok = true;
  /// min over n of 2 ln b_n - ln b_(n-1) - ln b_(n+1); >= 0 is log-concavity.
  double min_logconcavity_gap = 0.0;
  long first_logconcavity_violation = -1;
  /// Violations stop here; the non-self-adjointness criterion only needs
  /// log-concavity from some n on. -1 when there is none.
  long last_logconcavity_violation = -1;
};

/// Numeric evidence for the convergence of sum 1/b_n. All quantities are
/// computed from ln {n}, so n_max may exceed the range where {n} overflows.
SelfAdjointnessDiagnostics selfadjointness_diagnostics(const DeformationParams& p, long n_max);

/// ln {n} without forming {n}; requires {n} > 0.
double log_qnumber(const DeformationParams& p, double n);

double energy_level(const OscillatorConfig& cfg, long n);

struct StateStatistics {
  double meanQ = 0.0;
  double meanP = 0.0;
  double varQ = 0.0;
  double varP = 0.0;
  double uncertainty = 0.0;
};

StateStatistics state_statistics(const OscillatorConfig& cfg, long n);

/// <n|X^2|n> from the dense Jacobi matrix squared (oracle route).
double matrix_second_moment(const JacobiMatrix& j, std::size_t n);

}  // namespace qtamm
