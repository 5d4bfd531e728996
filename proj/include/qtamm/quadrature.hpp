#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature on finite intervals and on the
// half-line. Workspaces are per call.

#include <cstddef>
#include <functional>

namespace qtamm::quad {

using Integrand = std::function<double(double)>;

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

struct Options {
  double abs_tol = 0.0;
  double rel_tol = 1e-12;
  std::size_t max_intervals = 2000;
};

/// Globally adaptive G7/K15 on [a, b]. Throws Error(QuadratureFailure) if the
/// error target is not met within max_intervals subdivisions, or on a
/// non-finite integrand value.
Result integrate(const Integrand& f, double a, double b, const Options& opt = {});

/// Half-line result. For integrands that decay, `regularized` is false and
/// the value is the ordinary integral, stopped once a panel's envelope
/// max|f| * width is below rel_tol times the sum. For integrands that reach a minimal envelope and then
/// grow, the integral is cut at the envelope minimum `cutoff`, `regularized`
/// is set and `residual` is the panel magnitude there (the size of the
/// plateau ambiguity).
struct HalfLineResult {
  double value = 0.0;
  double error = 0.0;
  double cutoff = 0.0;
  double residual = 0.0;
  bool regularized = false;
  std::size_t panels = 0;
};

struct HalfLineOptions {
  double rel_tol = 1e-12;
  /// First panel is [0, first_panel]; panel widths then grow by `growth`.
  double first_panel = 0.5;
  double growth = 1.25;
  double max_x = 1e6;
  /// A rise of the panel magnitude by this factor above its running minimum
  /// marks the integrand as growing.
  double rise_factor = 100.0;
};

HalfLineResult integrate_halfline(const Integrand& f, const HalfLineOptions& opt = {});

}  // namespace qtamm::quad
