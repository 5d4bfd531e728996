#include "qtamm/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qtamm/algebra.hpp"
#include "qtamm/errors.hpp"

namespace qtamm {

CoherentState coherent_coeffs(std::complex<double> z, const DeformationParams& p, double tol,
                              std::size_t max_terms) {
  CoherentState s;
  s.z = z;
  const double r2 = std::norm(z);
  const double norm = deformed_exp(p, r2);
  std::complex<double> c = 1.0 / std::sqrt(norm);
  double kept = 0.0;
  for (std::size_t n = 0;; ++n) {
    s.coeffs.push_back(c);
    kept += std::norm(c);
    if (n + 1 >= max_terms) {
      throw Error(ErrorKind::NoConvergence, "coherent state needs more than " +
                                                std::to_string(max_terms) + " amplitudes");
    }
    const double next = qnumber(p, static_cast<double>(n + 1));
    if (!(next > 0.0)) throw RepresentationBreakdown(static_cast<long>(n + 1), next);
    c = c * z / std::sqrt(next);
    // Tail sum_{m > n} |c_m|^2 <= |c_(n+1)|^2 / (1 - rho) once the ratio
    // |z|^2 / {m+1} has dropped below 1 (it decreases while {m} grows).
    const double rho = r2 / qnumber(p, static_cast<double>(n + 2));
    // Cutting after c_n also leaves |z c_n| in the last row of a|z> - z|z>.
    if (rho < 1.0 && std::abs(z) * std::abs(s.coeffs.back()) <= tol) {
      const double tail = std::norm(c) / (1.0 - rho);
      if (tail < tol * tol) {
        s.tail_bound = tail;
        break;
      }
    }
  }
  s.trunc = s.coeffs.size();
  s.norm_defect = 1.0 - kept;
  return s;
}

double eigen_defect(const CoherentState& s, const DeformationParams& p) {
  const std::size_t dim = s.trunc;
  if (dim < 2) return std::abs(s.z) * std::abs(s.coeffs[0]);
  const FockRep rep = build_fock(p, dim);
  std::vector<double> re(dim), im(dim), are(dim), aim(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    re[n] = s.coeffs[n].real();
    im[n] = s.coeffs[n].imag();
  }
  rep.lower(re, are);
  rep.lower(im, aim);
  double acc = 0.0;
  for (std::size_t n = 0; n < dim; ++n) {
    acc += std::norm(std::complex<double>(are[n], aim[n]) - s.z * s.coeffs[n]);
  }
  return std::sqrt(acc);
}

std::complex<double> overlap(std::complex<double> z, std::complex<double> zp,
                             const DeformationParams& p, double tol) {
  const std::complex<double> num = deformed_exp(p, std::conj(z) * zp, tol);
  return num / std::sqrt(deformed_exp(p, std::norm(z), tol) * deformed_exp(p, std::norm(zp), tol));
}

double state_distance(std::complex<double> z, std::complex<double> zp, const DeformationParams& p,
                      double tol) {
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - overlap(z, zp, p, tol).real())));
}

double coefficient_distance(const CoherentState& a, const CoherentState& b) {
  const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::complex<double> ca = k < a.coeffs.size() ? a.coeffs[k] : 0.0;
    const std::complex<double> cb = k < b.coeffs.size() ? b.coeffs[k] : 0.0;
    acc += std::norm(ca - cb);
  }
  return std::sqrt(acc);
}

double phi(const DeformationParams& p, long j) {
  const double jd = static_cast<double>(j);
  return qnumber(p, jd) / jd;
}

namespace {

// prod_{j=a}^{b} phi[j]
double phi_prod(const std::vector<double>& ph, std::size_t a, std::size_t b) {
  double out = 1.0;
  for (std::size_t j = a; j <= b; ++j) out *= ph[j];
  return out;
}

std::vector<double> phi_table(const DeformationParams& p, std::size_t upto) {
  std::vector<double> ph(upto + 1, 0.0);
  for (std::size_t j = 1; j <= upto; ++j) ph[j] = phi(p, static_cast<long>(j));
  return ph;
}

}  // namespace

WeightCoeffs weight_coeffs(const DeformationParams& p, std::size_t K) {
  WeightCoeffs w;
  w.phi_cache = phi_table(p, K + 2);
  const auto& ph = w.phi_cache;
  w.g.assign(K + 1, 0.0);
  w.g[0] = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    const double fact_phi = phi_prod(ph, 1, k + 2);
    if (fact_phi == 0.0) {
      throw Error(ErrorKind::ZeroPhi, "phi(" + std::to_string(k + 2) + ")! vanishes");
    }
    double bracket = ph[2];
    double kfall = 1.0;  // k!/(k-i)!
    for (std::size_t i = 0; i < k; ++i) {
      if (i > 0) kfall *= static_cast<double>(k - i + 1);
      const double sign = i % 2 == 0 ? 1.0 : -1.0;
      bracket -= w.g[i] * sign * kfall * phi_prod(ph, k - i + 1, k + 2);
    }
    double kfact = 1.0;
    for (std::size_t j = 2; j <= k; ++j) kfact *= static_cast<double>(j);
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    w.g[k] = sign / (kfact * fact_phi) * bracket;
  }
  return w;
}

double g1_closed(const DeformationParams& p) {
  const double p2 = phi(p, 2);
  const double p3 = phi(p, 3);
  return p2 * (p3 - 1.0) / (p2 * p3);
}

double g2_closed(const DeformationParams& p) {
  const double p2 = phi(p, 2);
  const double p3 = phi(p, 3);
  const double p4 = phi(p, 4);
  return (p2 - p3 * p4 + 2.0 * p2 * (p3 - 1.0) * p4) / (2.0 * p2 * p3 * p4);
}

double weight_resubstitution_defect(const DeformationParams& p, const WeightCoeffs& w,
                                    long n_max) {
  const std::size_t K = w.g.size() - 1;
  const auto ph = phi_table(p, static_cast<std::size_t>(n_max) + K + 2);
  double worst = 0.0;
  for (long n = 0; n <= n_max; ++n) {
    const std::size_t nu = static_cast<std::size_t>(n);
    double sum = 0.0;
    double rising = 1.0;  // (n+k)!/n!
    for (std::size_t k = 0; k <= K; ++k) {
      if (k > 0) rising *= static_cast<double>(nu + k);
      sum += w.g[k] * rising * phi_prod(ph, nu + 1, nu + k + 2);
    }
    worst = std::max(worst, std::fabs(sum - ph[2]) / std::fabs(ph[2]));
  }
  return worst;
}

WeightFunction::WeightFunction(const DeformationParams& p, double x_max, std::size_t K)
    : p_(p),
      phi2_(phi(p, 2)),
      classical_(p.q == 1.0 && std::fabs(p.mu + p.eta - 1.0) <= 1e-15),
      e0_reflected_(p.reflected(), 0, classical_ ? 1.0 : x_max),
      e1_reflected_(p.reflected(), 1, classical_ ? 1.0 : x_max),
      e2_reflected_(p.reflected(), 2, classical_ ? 1.0 : x_max),
      w_(weight_coeffs(p, K)) {}

double WeightFunction::f(double x) const {
  return phi2_ * (classical_ ? std::exp(-x) : e2_reflected_(-x));
}

WeightValue WeightFunction::operator()(double x) const {
  WeightValue v;
  v.f = f(x);
  v.mu_weight = deformed_exp(p_, x) * v.f;
  double g = 0.0;
  for (std::size_t k = w_.g.size(); k-- > 0;) g = g * x + w_.g[k];
  v.f_gseries = (classical_ ? std::exp(-x) : e0_reflected_(-x)) * g;
  return v;
}

std::pair<double, double> WeightFunction::boundary_terms(long n, double x) const {
  const double nd = static_cast<double>(n);
  const double dxn = n == 0 ? 0.0 : nd * std::pow(x, nd - 1.0);
  // d/dx e'(-x) = -e'^(1)(-x)
  if (classical_) return {std::exp(-x) * dxn, -std::pow(x, nd) * std::exp(-x)};
  return {e0_reflected_(-x) * dxn, -std::pow(x, nd) * e1_reflected_(-x)};
}

WeightValue weight_function(const DeformationParams& p, double x) {
  return WeightFunction(p, std::max(4.0 * x, 64.0))(x);
}

MomentReport moment_problem_check(const DeformationParams& p, long n_max, double tol,
                                  double quad_tol) {
  p.validate();
  const DeformationParams measure = p.reflected();
  const WeightFunction w(p, 4e6, 2);
  MomentReport rep;
  for (long n = 0; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    const auto integrand = [&](double x) { return w.f(x) * std::pow(x, nd); };
    const DeformedIntegral r = deformed_integral_halfline(integrand, measure, quad_tol);
    MomentRow row;
    row.n = n;
    row.numeric = r.value;
    row.exact = qfactorial(p, n, false);
    row.rel_error = std::fabs(row.numeric - row.exact) / std::fabs(row.exact);
    row.regularized = r.regularized;
    row.residual = r.residual;
    row.cutoff = r.cutoff;
    try {
      const auto [bv, bd] = w.boundary_terms(n, r.cutoff);
      row.boundary_value = std::fabs(bv);
      row.boundary_derivative = std::fabs(bd);
    } catch (const Error&) {
      row.boundary_value = row.boundary_derivative = std::numeric_limits<double>::quiet_NaN();
    }
    rep.max_rel_error = std::max(rep.max_rel_error, row.rel_error);
    rep.rows.push_back(row);
  }
  rep.passed = rep.max_rel_error <= tol;
  return rep;
}

PositivityProbe weight_positivity_probe(const DeformationParams& p, double x_max,
                                        std::size_t samples) {
  const WeightFunction w(p, std::max(2.0 * x_max, 64.0), 2);
  PositivityProbe probe;
  probe.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= samples; ++i) {
    const double x = x_max * static_cast<double>(i) / static_cast<double>(samples);
    const double v = w(x).mu_weight;
    if (v < probe.min_value) {
      probe.min_value = v;
      probe.argmin = x;
    }
  }
  probe.nonnegative = probe.min_value >= 0.0;
  return probe;
}

}  // namespace qtamm
