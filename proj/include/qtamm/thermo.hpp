#pragma once

// Thermodynamics of the deformed oscillator with H = w N.
//
// x = beta w = hbar nu / kT. The ensemble average of a^+ a is
//   <N> = (e^x - 1) [mu / (e^x - 1/q)^2 + (1 - mu) / (e^x - q)^2],
// which sums (1 - e^-x) sum_n {n} e^(-n x) and exists only for x > ln(1/q).

#include <cstddef>
#include <vector>

namespace qtamm {

struct PhysicalConstants {
  double hbar = 1.0;
  double k = 1.0;
  double c = 1.0;
};

/// 1 / (1 - e^-x). Error(DomainError) for x <= 0.
double partition_function(double x);

/// ln(1/q). Error(InvalidParams) outside 0 < q <= 1.
double x_min(double q);

/// Closed form above, rearranged in e^-x so it neither overflows nor
/// cancels near x_min. Error(BelowDomain) for x <= x_min(q).
double mean_occupation(double x, double q, double mu);

/// (1 - e^-x) sum_{n < terms} {n} e^(-n x), symmetric family. Terms are
/// formed in log space; the sum becomes +inf when it diverges.
double occupation_partial_sum(double x, double q, double mu, std::size_t terms);

enum class ThermoNote { Ok, BelowXmin };

struct ThermoPoint {
  double x = 0.0;
  double q = 1.0;
  double mu = 0.5;
  bool in_domain = false;
  /// NaN outside the domain.
  double occupation = 0.0;
  ThermoNote note = ThermoNote::Ok;
};

/// Non-throwing sample for tables.
ThermoPoint thermo_point(double x, double q, double mu);

/// I(nu) = (8 pi hbar nu^3 / c^3) <N>(hbar nu / kT). Error(BelowDomain).
double spectral_density(double nu, double T, double q, double mu, const PhysicalConstants& k = {});
/// (8 pi hbar nu^3 / c^3) / (e^x - 1).
double planck_density(double nu, double T, const PhysicalConstants& k = {});

struct RadiationCurve {
  std::vector<double> nu;
  std::vector<double> I;
  std::vector<double> I_planck;
  double q = 1.0;
  double mu = 0.5;
  double T = 1.0;
  PhysicalConstants constants;
};

/// Samples nu_i = nu_min + (nu_max - nu_min) i / N for i = 1..N. nu_min
/// defaults to the domain edge kT x_min / hbar. Error(BelowDomain) when a
/// grid point falls at or below the edge.
RadiationCurve radiation_curve(double q, double mu, double T, double nu_max, std::size_t N,
                               const PhysicalConstants& k = {}, double nu_min = -1.0);

struct JResult {
  double value = 0.0;
  double error = 0.0;
  /// Lower cut x_min + eps of the last refinement level.
  double eps = 0.0;
  /// Upper limit chosen from the x^3 e^-x tail bound.
  double upper = 0.0;
  /// Integrals over [x_min + eps_k, upper] for the refinement ladder.
  std::vector<double> ladder;
};

/// int_{x_min}^inf x^3 <N>(x) dx. The endpoint is approached through
/// eps = 10^-2 .. 10^-9; when the ladder does not settle (the mu-term has a
/// double pole at x_min for q < 1), Error(NonIntegrableSingularity).
JResult J_restricted(double q, double mu, double quad_tol = 1e-12);

/// 6 sum_{n=1}^{N} {n}(1/n^4 - 1/(n+1)^4): the termwise integral of the
/// ensemble sum over (0, inf). Equals 6 zeta(4) at q = 1; diverges for
/// q < 1, mu > 0.
double J_series(double q, double mu, std::size_t N);

/// The series as printed alongside the integral,
/// 12 sum_{n>=0} {n}(mu/(n+1)^4 - (1-mu)/(n+2)^4). At q = 1, mu = 1/2 it
/// sums to 6(zeta(4) - 1), not 6 zeta(4); kept for comparison only.
double J_series_printed(double q, double mu, std::size_t N);

struct TotalEnergy {
  double U = 0.0;
  double a_q = 0.0;
  double J = 0.0;
};

/// U = (8 pi hbar / c^3)(kT/hbar)^4 J(q), a_q = U / T^4.
TotalEnergy total_energy(double T, double q, double mu, const PhysicalConstants& k = {},
                         double quad_tol = 1e-12);

}  // namespace qtamm
