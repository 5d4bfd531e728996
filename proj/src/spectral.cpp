#include "qtamm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qtamm/algebra.hpp"
#include "qtamm/errors.hpp"

namespace qtamm {

void OscillatorConfig::validate() const {
  params.validate();
  if (!(m > 0.0) || !(omega > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "mass and frequency must be positive");
  }
  if (dim < 2) throw Error(ErrorKind::InvalidParams, "dim must be at least 2");
}

std::vector<std::complex<double>> JacobiMatrix::dense() const {
  const std::size_t n = dim();
  std::vector<std::complex<double>> out(n * n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double v = scale * offdiag[k];
    if (kind == JacobiKind::Q) {
      out[k * n + k + 1] = v;
      out[(k + 1) * n + k] = v;
    } else {
      out[k * n + k + 1] = {0.0, -v};
      out[(k + 1) * n + k] = {0.0, v};
    }
  }
  return out;
}

double ladder_coefficient(const DeformationParams& p, long n) {
  const double v = qnumber(p, static_cast<double>(n + 1));
  if (v < 0.0) throw RepresentationBreakdown(n + 1, v);
  return std::sqrt(v);
}

JacobiMatrix build_jacobi(const OscillatorConfig& cfg, JacobiKind kind) {
  cfg.validate();
  const FockRep rep = build_fock(cfg.params, cfg.dim);
  JacobiMatrix j;
  j.kind = kind;
  j.offdiag = rep.ladder();
  j.scale = kind == JacobiKind::Q ? std::sqrt(1.0 / (2.0 * cfg.m * cfg.omega))
                                  : std::sqrt(cfg.m * cfg.omega / 2.0);
  return j;
}

namespace {

struct Term {
  double sign;
  double log_mag;  // -inf for a vanishing weight
};

// The two terms of {n}/n as (sign, log magnitude).
std::pair<Term, Term> terms(const DeformationParams& p, double n) {
  const double lq = std::log(p.q);
  const auto make = [&](double w, double e) {
    if (w == 0.0) return Term{0.0, -std::numeric_limits<double>::infinity()};
    return Term{w > 0.0 ? 1.0 : -1.0, std::log(std::fabs(w)) + e * lq};
  };
  return {make(p.mu, p.alpha * n + p.beta), make(p.eta, p.gamma * n + p.delta)};
}

// ln(s1 e^t1 + s2 e^t2) - ref, for a sum known to be positive.
double log_sum_rel(const Term& a, const Term& b, double ref) {
  const double s = a.sign * std::exp(a.log_mag - ref) + b.sign * std::exp(b.log_mag - ref);
  return std::log(s);
}

}  // namespace

double log_qnumber(const DeformationParams& p, double n) {
  if (p.q == 1.0) return std::log(qnumber(p, n));
  const auto [a, b] = terms(p, n);
  const double ref = std::max(a.log_mag, b.log_mag);
  const double s = a.sign * std::exp(a.log_mag - ref) + b.sign * std::exp(b.log_mag - ref);
  if (!(s > 0.0) || !(n > 0.0)) {
    throw Error(ErrorKind::DomainError, "ln{n} needs {n} > 0 (n = " + std::to_string(n) + ")");
  }
  return std::log(n) + ref + std::log(s);
}

SelfAdjointnessDiagnostics selfadjointness_diagnostics(const DeformationParams& p, long n_max) {
  if (n_max < 4) throw Error(ErrorKind::InvalidParams, "n_max must be at least 4");
  SelfAdjointnessDiagnostics d;
  // ln b_n = ln{n+1} / 2
  const auto log_b = [&](long n) { return 0.5 * log_qnumber(p, static_cast<double>(n + 1)); };
  const auto ratio = [&](long n) { return std::exp(log_b(n) - log_b(n + 1)); };

  double sum = 0.0;
  double comp = 0.0;
  for (long n = 0; n <= n_max; ++n) {
    const double t = std::exp(-log_b(n));
    const double s = sum + t;
    comp += std::fabs(sum) >= t ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  d.partial_sum = sum + comp;

  const long n2 = n_max - 1;
  const long n1 = n2 / 2;
  const double r2 = ratio(n2);
  const double r1 = ratio(n1);
  d.ratio_at_nmax = r2;
  // r_n ~ r + c/n: eliminate c between n1 and n2.
  d.ratio_limit_estimate =
      (static_cast<double>(n2) * r2 - static_cast<double>(n1) * r1) / static_cast<double>(n2 - n1);
  const double last = std::exp(-log_b(n_max));
  if (r2 < 1.0) {
    d.tail_estimate = last * r2 / (1.0 - r2);
    d.converging = d.tail_estimate <= 1e-6 * d.partial_sum;
  } else {
    d.tail_estimate = std::numeric_limits<double>::infinity();
    d.converging = false;
  }

  // Gap 2 ln b_n - ln b_(n-1) - ln b_(n+1) in terms of {k}/k: the part linear
  // in k cancels exactly, so it is removed before taking logs.
  d.min_logconcavity_gap = std::numeric_limits<double>::infinity();
  for (long n = 1; n <= n_max; ++n) {
    // b_(n-1), b_n, b_(n+1) involve {n}, {n+1}, {n+2}.
    const double k = static_cast<double>(n);
    const auto mid = terms(p, k + 1.0);
    const bool first_ref = mid.first.log_mag >= mid.second.log_mag;
    const auto reference = [&](double kk) {
      const auto t = terms(p, kk);
      return first_ref ? t.first.log_mag : t.second.log_mag;
    };
    double g[3];
    for (int i = 0; i < 3; ++i) {
      const double kk = k + static_cast<double>(i);
      const auto t = terms(p, kk);
      g[i] = p.q == 1.0 ? 0.0 : log_sum_rel(t.first, t.second, reference(kk));
    }
    const double linear = std::log1p(1.0 / (k * (k + 2.0)));
    const double gap = 0.5 * (linear + 2.0 * g[1] - g[0] - g[2]);
    if (!std::isfinite(gap)) {
      d.logconcavity_ok = false;
      if (d.first_logconcavity_violation < 0) d.first_logconcavity_violation = n;
      d.last_logconcavity_violation = n;
      continue;
    }
    d.min_logconcavity_gap = std::min(d.min_logconcavity_gap, gap);
    if (gap < 0.0) {
      d.logconcavity_ok = false;
      if (d.first_logconcavity_violation < 0) d.first_logconcavity_violation = n;
      d.last_logconcavity_violation = n;
    }
  }
  return d;
}

double energy_level(const OscillatorConfig& cfg, long n) {
  const double a = qnumber(cfg.params, static_cast<double>(n));
  const double b = qnumber(cfg.params, static_cast<double>(n + 1));
  if (a < 0.0) throw RepresentationBreakdown(n, a);
  if (b < 0.0) throw RepresentationBreakdown(n + 1, b);
  return 0.5 * cfg.omega * (a + b);
}

StateStatistics state_statistics(const OscillatorConfig& cfg, long n) {
  const double s = energy_level(cfg, n) * 2.0 / cfg.omega;  // {n} + {n+1}
  StateStatistics st;
  st.varQ = s / (2.0 * cfg.m * cfg.omega);
  st.varP = cfg.m * cfg.omega * s / 2.0;
  st.uncertainty = std::sqrt(st.varQ * st.varP);
  return st;
}

double matrix_second_moment(const JacobiMatrix& j, std::size_t n) {
  const auto m = j.dense();
  const std::size_t d = j.dim();
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < d; ++k) acc += m[n * d + k] * m[k * d + n];
  return acc.real();
}

}  // namespace qtamm
