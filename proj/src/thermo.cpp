#include "qtamm/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qtamm/algebra.hpp"
#include "qtamm/errors.hpp"
#include "qtamm/quadrature.hpp"
#include "qtamm/spectral.hpp"

namespace qtamm {

double partition_function(double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::DomainError, "partition function needs x > 0");
  return -1.0 / std::expm1(-x);
}

double x_min(double q) {
  if (!(q > 0.0 && q <= 1.0)) throw Error(ErrorKind::InvalidParams, "thermodynamics needs 0 < q <= 1");
  return -std::log(q);
}

namespace {

// <N> for x > x_min, with u = e^-x:
//   u (1 - u) [mu / (1 - u/q)^2 + (1 - mu) / (1 - q u)^2].
double occupation_unchecked(double x, double q, double mu) {
  const double lq = std::log(q);
  const double u = std::exp(-x);
  const double one_minus_u = -std::expm1(-x);
  const double a = -std::expm1(-lq - x);  // 1 - u/q
  const double b = -std::expm1(lq - x);   // 1 - q u
  return u * one_minus_u * (mu / (a * a) + (1.0 - mu) / (b * b));
}

}  // namespace

double mean_occupation(double x, double q, double mu) {
  const double xm = x_min(q);
  if (!(x > xm)) {
    throw Error(ErrorKind::BelowDomain,
                "x = " + std::to_string(x) + " is not above x_min = " + std::to_string(xm));
  }
  return occupation_unchecked(x, q, mu);
}

double occupation_partial_sum(double x, double q, double mu, std::size_t terms) {
  const DeformationParams p = DeformationParams::symmetric(q, mu);
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t n = 1; n < terms; ++n) {
    const double nd = static_cast<double>(n);
    const double t = std::exp(log_qnumber(p, nd) - nd * x);
    const double s = sum + t;
    if (!std::isfinite(s)) return std::numeric_limits<double>::infinity();
    comp += std::fabs(sum) >= t ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  return -std::expm1(-x) * (sum + comp);
}

ThermoPoint thermo_point(double x, double q, double mu) {
  ThermoPoint pt;
  pt.x = x;
  pt.q = q;
  pt.mu = mu;
  pt.in_domain = x > x_min(q);
  if (pt.in_domain) {
    pt.occupation = occupation_unchecked(x, q, mu);
    pt.note = ThermoNote::Ok;
  } else {
    pt.occupation = std::numeric_limits<double>::quiet_NaN();
    pt.note = ThermoNote::BelowXmin;
  }
  return pt;
}

double spectral_density(double nu, double T, double q, double mu, const PhysicalConstants& k) {
  const double x = k.hbar * nu / (k.k * T);
  const double pre = 8.0 * std::numbers::pi * k.hbar * nu * nu * nu / (k.c * k.c * k.c);
  return pre * mean_occupation(x, q, mu);
}

double planck_density(double nu, double T, const PhysicalConstants& k) {
  const double x = k.hbar * nu / (k.k * T);
  const double pre = 8.0 * std::numbers::pi * k.hbar * nu * nu * nu / (k.c * k.c * k.c);
  return pre / std::expm1(x);
}

RadiationCurve radiation_curve(double q, double mu, double T, double nu_max, std::size_t N,
                               const PhysicalConstants& k, double nu_min) {
  if (N == 0) throw Error(ErrorKind::InvalidParams, "grid needs at least one point");
  if (!(T > 0.0)) throw Error(ErrorKind::InvalidParams, "temperature must be positive");
  const double edge = k.k * T * x_min(q) / k.hbar;
  if (nu_min < 0.0) nu_min = edge;
  if (!(nu_max > nu_min)) throw Error(ErrorKind::InvalidParams, "nu_max must exceed nu_min");
  RadiationCurve c;
  c.q = q;
  c.mu = mu;
  c.T = T;
  c.constants = k;
  for (std::size_t i = 1; i <= N; ++i) {
    const double nu = nu_min + (nu_max - nu_min) * static_cast<double>(i) / static_cast<double>(N);
    c.nu.push_back(nu);
    c.I.push_back(spectral_density(nu, T, q, mu, k));
    c.I_planck.push_back(planck_density(nu, T, k));
  }
  return c;
}

JResult J_restricted(double q, double mu, double quad_tol) {
  const double xm = x_min(q);
  const auto integrand = [&](double x) {
    return x <= xm ? 0.0 : x * x * x * occupation_unchecked(x, q, mu);
  };
  JResult out;
  // <N> <= C e^-x beyond x_min + 1, with C the bracket's bound there.
  const double u1 = std::exp(-(xm + 1.0));
  const double a1 = 1.0 - u1 / q;
  const double b1 = 1.0 - q * u1;
  const double C = std::fabs(mu) / (a1 * a1) + std::fabs(1.0 - mu) / (b1 * b1);
  double X = xm + 10.0;
  const auto tail = [&](double x) { return C * std::exp(-x) * (x * x * x + 3 * x * x + 6 * x + 6); };
  while (tail(X) > 1e-3 * quad_tol) X += 1.0;
  out.upper = X;

  quad::Options opt;
  opt.rel_tol = quad_tol;
  opt.max_intervals = 5000;
  double prev_diff = 0.0;
  for (int k = 2; k <= 9; ++k) {
    const double eps = std::pow(10.0, -k);
    const double v = quad::integrate(integrand, xm + eps, X, opt).value;
    out.ladder.push_back(v);
    out.eps = eps;
    if (out.ladder.size() >= 2) {
      const double diff = std::fabs(v - out.ladder[out.ladder.size() - 2]);
      const bool settled = diff <= quad_tol * std::fabs(v);
      if (settled) {
        out.value = v;
        out.error = diff + tail(X);
        return out;
      }
      if (out.ladder.size() >= 3 && diff > 0.5 * prev_diff) {
        throw Error(ErrorKind::NonIntegrableSingularity,
                    "restricted J does not settle as the cut approaches x_min (" +
                        std::to_string(out.ladder.size()) + " refinements, last change " +
                        std::to_string(diff) + ")");
      }
      prev_diff = diff;
    }
  }
  // Converging but not yet within tolerance: geometric extrapolation.
  const std::size_t n = out.ladder.size();
  const double d1 = out.ladder[n - 1] - out.ladder[n - 2];
  const double d0 = out.ladder[n - 2] - out.ladder[n - 3];
  const double r = d1 / d0;
  out.value = out.ladder[n - 1] + d1 * r / (1.0 - r);
  out.error = std::fabs(d1 * r / (1.0 - r)) + tail(X);
  return out;
}

double J_series(double q, double mu, std::size_t N) {
  const DeformationParams p = DeformationParams::symmetric(q, mu);
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    const double nd = static_cast<double>(n);
    const double w = 1.0 / std::pow(nd, 4) - 1.0 / std::pow(nd + 1.0, 4);
    const double t = qnumber(p, nd) * w;
    const double s = sum + t;
    if (!std::isfinite(s)) return std::numeric_limits<double>::infinity();
    comp += std::fabs(sum) >= std::fabs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  return 6.0 * (sum + comp);
}

double J_series_printed(double q, double mu, std::size_t N) {
  const DeformationParams p = DeformationParams::symmetric(q, mu);
  double sum = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    const double nd = static_cast<double>(n);
    sum += qnumber(p, nd) * (mu / std::pow(nd + 1.0, 4) - (1.0 - mu) / std::pow(nd + 2.0, 4));
    if (!std::isfinite(sum)) return std::numeric_limits<double>::infinity();
  }
  return 12.0 * sum;
}

TotalEnergy total_energy(double T, double q, double mu, const PhysicalConstants& k,
                         double quad_tol) {
  if (!(T > 0.0)) throw Error(ErrorKind::InvalidParams, "temperature must be positive");
  TotalEnergy e;
  e.J = J_restricted(q, mu, quad_tol).value;
  const double s = k.k * T / k.hbar;
  e.U = 8.0 * std::numbers::pi * k.hbar / (k.c * k.c * k.c) * (s * s * s * s) * e.J;
  e.a_q = e.U / (T * T * T * T);
  return e;
}

}  // namespace qtamm
