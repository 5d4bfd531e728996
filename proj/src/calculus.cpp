#include "qtamm/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qtamm/errors.hpp"
#include "qtamm/kernels.hpp"

namespace qtamm {
namespace {

std::vector<double> qnumbers(const DeformationParams& p, std::size_t from, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = qnumber(p, static_cast<double>(from + i));
  return out;
}

bool symmetric_exponents(const DeformationParams& p) {
  return p.alpha == -1.0 && p.beta == 1.0 && p.gamma == 1.0 && p.delta == -1.0;
}

// Neumaier compensated accumulator.
template <class T>
struct Compensated {
  T sum{};
  T comp{};
  void add(T v) {
    const T t = sum + v;
    if constexpr (std::is_same_v<T, double>) {
      comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    } else {
      comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    }
    sum = t;
  }
  T value() const { return sum + comp; }
};

}  // namespace

PowerSeries deformed_derivative(const PowerSeries& s, const DeformationParams& p) {
  const std::size_t t = s.trunc();
  if (t <= 1) return PowerSeries::zeros(1);
  PowerSeries out = PowerSeries::zeros(t - 1);
  const auto nums = qnumbers(p, 1, t - 1);
  kernels::multiply(nums, s.coeffs().subspan(1), out.coeffs());
  return out;
}

PowerSeries deformed_derivative_operator(const PowerSeries& s, const DeformationParams& p) {
  const PowerSeries ds = s.derivative();
  if (p.classical()) return (p.normalized ? 1.0 : p.mu + p.eta) * ds;
  return p.mu * std::pow(p.q, p.alpha + p.beta) * scale_op(ds, p.q, p.alpha) +
         p.eta * std::pow(p.q, p.gamma + p.delta) * scale_op(ds, p.q, p.gamma);
}

double deformed_derivative_fn(const EvalFn& g, const DeformationParams& p, double x) {
  const double xa = std::pow(p.q, p.alpha) * x;
  const double xg = std::pow(p.q, p.gamma) * x;
  const auto check = [&](double y) {
    if (!(y >= g.lo && y <= g.hi)) {
      throw Error(ErrorKind::DomainError,
                  "scaled point " + std::to_string(y) + " outside the function's domain");
    }
  };
  check(xa);
  check(xg);
  return p.mu * std::pow(p.q, p.alpha + p.beta) * g.fprime(xa) +
         p.eta * std::pow(p.q, p.gamma + p.delta) * g.fprime(xg);
}

PowerSeries deformed_antiderivative(const PowerSeries& s, const DeformationParams& p) {
  const std::size_t t = s.trunc();
  PowerSeries out = PowerSeries::zeros(t + 1);
  for (std::size_t n = 0; n < t; ++n) {
    if (s[n] == 0.0) continue;
    const double denom = qnumber(p, static_cast<double>(n + 1));
    if (denom == 0.0) throw ZeroDenominator(static_cast<long>(n));
    out[n + 1] = s[n] / denom;
  }
  return out;
}

SeriesSum deformed_exp_sum(const DeformationParams& p, double x, const ExpOptions& opt) {
  SeriesSum out;
  if (x == 0.0) {
    out.value = 1.0;
    out.terms = 1;
    out.magnitude = 1.0;
    return out;
  }
  Compensated<double> acc;
  double term = 1.0;
  int small_run = 0;
  for (std::size_t n = 0; n < opt.max_terms; ++n) {
    acc.add(term);
    out.magnitude += std::fabs(term);
    out.terms = n + 1;
    const double running = std::max(std::fabs(acc.value()), std::numeric_limits<double>::min());
    small_run = std::fabs(term) < opt.tol * running ? small_run + 1 : 0;
    if (small_run >= 2 || term == 0.0) {
      out.value = acc.value();
      return out;
    }
    term = term * x / qnumber(p, static_cast<double>(n + 1));
    if (!std::isfinite(term)) break;
  }
  throw Error(ErrorKind::NoConvergence,
              "deformed exponential did not converge at x = " + std::to_string(x));
}

double deformed_exp(const DeformationParams& p, double x, double tol) {
  return deformed_exp_sum(p, x, ExpOptions{tol, 10000}).value;
}

std::complex<double> deformed_exp(const DeformationParams& p, std::complex<double> z,
                                  double tol) {
  Compensated<std::complex<double>> acc;
  std::complex<double> term = 1.0;
  int small_run = 0;
  for (std::size_t n = 0; n < 10000; ++n) {
    acc.add(term);
    const double running =
        std::max(std::abs(acc.value()), std::numeric_limits<double>::min());
    small_run = std::abs(term) < tol * running ? small_run + 1 : 0;
    if (small_run >= 2 || term == 0.0) return acc.value();
    term = term * z / qnumber(p, static_cast<double>(n + 1));
    if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) break;
  }
  throw Error(ErrorKind::NoConvergence, "complex deformed exponential did not converge");
}

PowerSeries deformed_exp_series(const DeformationParams& p, std::size_t trunc) {
  PowerSeries s = PowerSeries::zeros(trunc);
  double c = 1.0;
  for (std::size_t n = 0; n < trunc; ++n) {
    s[n] = c;
    c /= qnumber(p, static_cast<double>(n + 1));
  }
  return s;
}

double deformed_exp_derivative(const DeformationParams& p, double s, double x, int order,
                               const ExpOptions& opt) {
  // d^k/dx^k sum (s x)^n/{n}! = s^k sum_{m>=0} (n)_k (s x)^m / {m+k}!,
  // n = m + k, (n)_k the falling factorial.
  double lead = 1.0;  // s^k / {k}! * k!
  for (int j = 1; j <= order; ++j) lead *= s * j / qnumber(p, j);
  const double y = s * x;
  Compensated<double> acc;
  double term = lead;
  int small_run = 0;
  for (std::size_t m = 0; m < opt.max_terms; ++m) {
    acc.add(term);
    const double running = std::max(std::fabs(acc.value()), std::numeric_limits<double>::min());
    small_run = std::fabs(term) < opt.tol * running ? small_run + 1 : 0;
    if (small_run >= 2 || term == 0.0) return acc.value();
    const double n_next = static_cast<double>(m + 1 + order);
    // (n+1)_k / (n)_k = (n+1)/(n+1-k)
    term = term * y * (n_next / (n_next - order)) / qnumber(p, n_next);
    if (!std::isfinite(term)) break;
  }
  throw Error(ErrorKind::NoConvergence, "deformed exponential derivative did not converge");
}

struct ExpSeries::Tables {
  std::vector<double> d;
  std::vector<double> ratio;  // a_m / a_(m-1); ratio[0] = a_0
  std::vector<boost::multiprecision::cpp_bin_float_50> b50;
  std::vector<boost::multiprecision::cpp_bin_float_100> b100;
};

namespace {
thread_local int g_last_tier = 0;
}

ExpSeries::ExpSeries(const DeformationParams& p, int order, double y_max, std::size_t max_terms)
    : t_(std::make_unique<Tables>()), y_max_(y_max) {
  using boost::multiprecision::cpp_bin_float_100;
  if (order < 0) throw Error(ErrorKind::InvalidParams, "derivative order must be nonnegative");
  // c = 1/{m+order}! times the falling factorial, advanced one m at a time.
  cpp_bin_float_100 inv_fact(1);
  for (int j = 1; j <= order; ++j) {
    const cpp_bin_float_100 qn = qnumber_as<cpp_bin_float_100>(p, cpp_bin_float_100(j));
    if (qn == 0) throw Error(ErrorKind::ZeroDenominator, "{n} = 0 in the exponential series");
    inv_fact /= qn;
  }
  cpp_bin_float_100 falling(1);
  for (int j = 1; j <= order; ++j) falling *= j;

  const double log_y = std::log(std::max(y_max, 1e-300));
  double peak = -std::numeric_limits<double>::infinity();
  bool decreasing = false;
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0;; ++m) {
    const cpp_bin_float_100 a = falling * inv_fact;
    t_->b100.push_back(a);
    t_->b50.emplace_back(a);
    t_->d.push_back(a.convert_to<double>());
    t_->ratio.push_back(m == 0 ? t_->d[0] : (a / t_->b100[m - 1]).convert_to<double>());
    const double la = a == 0 ? -std::numeric_limits<double>::infinity()
                             : log(abs(a)).convert_to<double>() + static_cast<double>(m) * log_y;
    peak = std::max(peak, la);
    if (la < prev) decreasing = true;
    prev = la;
    // 1e-110 relative to the largest term: below every tier's resolution.
    if (decreasing && la < peak - 253.0) break;
    if (m + 1 >= max_terms) {
      throw Error(ErrorKind::NoConvergence, "exponential series needs more than " +
                                                std::to_string(max_terms) + " terms");
    }
    const double n_next = static_cast<double>(m + 1 + order);
    const cpp_bin_float_100 qn = qnumber_as<cpp_bin_float_100>(p, cpp_bin_float_100(n_next));
    if (qn == 0) throw Error(ErrorKind::ZeroDenominator, "{n} = 0 in the exponential series");
    inv_fact /= qn;
    // (m+2)...(m+1+k) / ((m+1)...(m+k)) = (m+1+k)/(m+1)
    falling = falling * cpp_bin_float_100(n_next) / cpp_bin_float_100(m + 1);
  }
}

ExpSeries::~ExpSeries() = default;
ExpSeries::ExpSeries(ExpSeries&&) noexcept = default;
ExpSeries& ExpSeries::operator=(ExpSeries&&) noexcept = default;

std::size_t ExpSeries::terms() const { return t_->d.size(); }

int ExpSeries::last_tier() { return g_last_tier; }

namespace {

template <class R>
R horner(const std::vector<R>& a, std::size_t count, const R& y) {
  R s = a[count - 1];
  for (std::size_t m = count - 1; m-- > 0;) s = s * y + a[m];
  return s;
}

}  // namespace

double ExpSeries::operator()(double y, double rel_tol) const {
  if (std::fabs(y) > y_max_) {
    throw Error(ErrorKind::DomainError, "series argument " + std::to_string(y) +
                                            " beyond the tabulated range");
  }
  const std::size_t n = t_->d.size();
  // Magnitudes and per-tier truncation points.
  // Signed terms by ratio recurrence, so that |y|^m and a_m never over- or
  // underflow separately. Stops once past the largest term and below every
  // tier's resolution.
  const auto& r = t_->ratio;
  std::vector<double> term;
  std::vector<double> t;
  term.reserve(64);
  t.reserve(64);
  double mag = 0.0;
  double prev = 0.0;
  bool past_peak = false;
  for (std::size_t m = 0; m < n; ++m) {
    const double v = m == 0 ? r[0] : term.back() * y * r[m];
    term.push_back(v);
    t.push_back(std::fabs(v));
    mag += t.back();
    if (m > 0 && t.back() < prev) past_peak = true;
    prev = t.back();
    if (past_peak && t.back() < 1e-110 * mag) break;
  }
  const auto cut = [&](double rel) {
    std::size_t c = t.size();
    while (c > 1 && t[c - 1] < rel * mag) --c;
    return c;
  };

  constexpr double eps = std::numeric_limits<double>::epsilon();
  {
    const std::size_t c = cut(1e-3 * eps);
    Compensated<double> acc;
    for (std::size_t m = 0; m < c; ++m) acc.add(term[m]);
    const double v = acc.value();
    if (4.0 * eps * mag <= rel_tol * std::fabs(v)) {
      g_last_tier = 0;
      return v;
    }
  }
  {
    using R = boost::multiprecision::cpp_bin_float_50;
    const std::size_t c = cut(1e-53);
    const double v = horner(t_->b50, c, R(y)).convert_to<double>();
    if (1e-48 * mag <= rel_tol * std::fabs(v)) {
      g_last_tier = 1;
      return v;
    }
  }
  {
    using R = boost::multiprecision::cpp_bin_float_100;
    const std::size_t c = cut(1e-103);
    const double v = horner(t_->b100, c, R(y)).convert_to<double>();
    if (1e-98 * mag <= rel_tol * std::fabs(v)) {
      g_last_tier = 2;
      return v;
    }
  }
  throw Error(ErrorKind::NoConvergence,
              "cancellation in the exponential series exceeds 100 digits at y = " +
                  std::to_string(y));
}

double leibniz_defect(const PowerSeries& f, const PowerSeries& g, const DeformationParams& p) {
  if (!symmetric_exponents(p)) {
    throw Error(ErrorKind::InvalidParams,
                "product rule is stated for exponents (-1, 1, 1, -1) only");
  }
  const std::size_t t = std::min(f.trunc(), g.trunc());
  if (t < 2) return 0.0;
  const PowerSeries ft = f.truncated(t);
  const PowerSeries gt = g.truncated(t);
  const double q = p.q;
  const std::size_t out_len = t - 1;

  const PowerSeries lhs = deformed_derivative(ft * gt, p);
  const auto cut = [&](const PowerSeries& s) { return s.truncated(out_len); };
  const auto tcal = [&](const PowerSeries& s) { return scale_op(s, q, 1.0) - scale_op(s, q, -1.0); };

  const PowerSeries df = deformed_derivative(ft, p);
  const PowerSeries dg = deformed_derivative(gt, p);
  const PowerSeries t1 = cut(cut(df) * cut(scale_op(gt, q, -1.0)));
  const PowerSeries t2 = cut(cut(scale_op(ft, q, 1.0)) * cut(dg));
  const PowerSeries t3 =
      -p.mu * cut(cut(tcal(ft)) * cut(scale_op(gt.derivative(), q, -1.0).truncated(t)));
  const PowerSeries t4 =
      p.eta * cut(cut(scale_op(ft.derivative(), q, 1.0).truncated(t)) * cut(tcal(gt)));
  const PowerSeries rhs = t1 + t2 + t3 + t4;

  double scale = 1.0;
  for (std::size_t k = 0; k < out_len; ++k) {
    scale = std::max(scale, std::fabs(lhs[k]) + std::fabs(t1[k]) + std::fabs(t2[k]) +
                                std::fabs(t3[k]) + std::fabs(t4[k]));
  }
  return max_coeff_diff(lhs, rhs) / scale;
}

InverseExpansion inverse_expansion(const DeformationParams& p) {
  const double a = p.mu * std::pow(p.q, p.alpha + p.beta);
  const double b = p.eta * std::pow(p.q, p.gamma + p.delta);
  InverseExpansion e;
  if (p.q == 1.0) {
    // T_q is the identity: the operator is the scalar a + b.
    if (a + b == 0.0) throw Error(ErrorKind::ZeroDenominator, "operator weights cancel at q = 1");
    e.branch = std::fabs(a) >= std::fabs(b) ? ExpansionBranch::MuTerm : ExpansionBranch::EtaTerm;
    e.prefactor = 1.0 / (a + b);
    return e;
  }
  if (std::fabs(a) == std::fabs(b)) {
    throw Error(ErrorKind::ExpansionDivergence,
                "operator terms have equal weight; the inverse series has ratio 1");
  }
  if (std::fabs(a) > std::fabs(b)) {
    e.branch = ExpansionBranch::MuTerm;
    e.prefactor = 1.0 / a;
    e.ratio = -b / a;
    e.lead_power = -p.alpha;
    e.step_power = p.gamma - p.alpha;
  } else {
    e.branch = ExpansionBranch::EtaTerm;
    e.prefactor = 1.0 / b;
    e.ratio = -a / b;
    e.lead_power = -p.gamma;
    e.step_power = p.alpha - p.gamma;
  }
  e.halfline_ratio = e.ratio * std::pow(p.q, -e.step_power);
  return e;
}

DeformedIntegral deformed_integral_halfline(const std::function<double(double)>& f,
                                            const DeformationParams& p, double quad_tol) {
  DeformedIntegral out;
  const InverseExpansion e = inverse_expansion(p);
  out.branch = e.branch;
  if (!(std::fabs(e.halfline_ratio) < 1.0)) {
    throw Error(ErrorKind::ExpansionDivergence,
                "half-line terms of the inverse series do not contract (ratio " +
                    std::to_string(e.halfline_ratio) + ")");
  }
  const double rho = std::fabs(e.halfline_ratio);
  quad::HalfLineOptions hopt;
  hopt.rel_tol = std::min(1e-10, quad_tol);

  Compensated<double> acc;
  double coeff = e.prefactor;
  for (std::size_t n = 0; n < 2000; ++n) {
    // Term n: coeff * ∫ dx f(q^(lead + n step) x).
    const double scale = std::pow(p.q, e.lead_power + static_cast<double>(n) * e.step_power);
    // Panels follow the term's own length scale 1/scale.
    quad::HalfLineOptions term_opt = hopt;
    term_opt.first_panel = hopt.first_panel / scale;
    term_opt.max_x = hopt.max_x / scale;
    const quad::HalfLineResult r =
        quad::integrate_halfline([&](double x) { return f(scale * x); }, term_opt);
    const double term = coeff * r.value;
    acc.add(term);
    out.error += std::fabs(coeff) * r.error;
    out.regularized = out.regularized || r.regularized;
    out.residual = std::max(out.residual, std::fabs(coeff) * r.residual);
    out.cutoff = std::max(out.cutoff, r.cutoff);
    out.terms = n + 1;
    const double tail = std::fabs(term) * rho / (1.0 - rho);
    if (tail < quad_tol * std::fabs(acc.value()) || term == 0.0) {
      out.value = acc.value();
      out.error += tail;
      return out;
    }
    coeff *= e.ratio;
  }
  throw Error(ErrorKind::NoConvergence, "inverse-operator series did not reach tolerance");
}

double neg_qnumber_identity_defect(const DeformationParams& p, long k) {
  if (k == 0) return 0.0;
  const double kd = static_cast<double>(k);
  const double lhs = qnumber(p, -kd);
  const double rhs = -(kd / (kd + 2.0)) * qnumber(p.reflected(), kd + 2.0);
  const double scale = std::max(std::fabs(lhs), std::numeric_limits<double>::min());
  return std::fabs(lhs - rhs) / scale;
}

double halfline_moment(const DeformationParams& p, long n, double omega) {
  double out = 1.0 / omega;
  for (long k = 1; k <= n; ++k) out *= -qnumber(p, -static_cast<double>(k)) / omega;
  return out;
}

double reflected_moment(const DeformationParams& p, long n) {
  const double nd = static_cast<double>(n);
  return 2.0 * qfactorial(p, n + 2, false) / (qnumber(p, 2.0) * (nd + 1.0) * (nd + 2.0));
}

LogIntegral log_integral_identity(const DeformationParams& p) {
  LogIntegral out;
  out.value = 1.0 / (p.mu * std::pow(p.q, p.beta) + p.eta * std::pow(p.q, p.delta));
  const double radicand = std::max(0.0, 1.0 - 1.0 / p.mu);
  out.exists = p.q > std::sqrt(radicand);
  const EvalFn ln{[](double x) { return std::log(x); }, [](double x) { return 1.0 / x; }, 0.0,
                  std::numeric_limits<double>::infinity()};
  out.derivative_coefficient = deformed_derivative_fn(ln, p, 1.0);
  out.consistency = std::fabs(out.value * out.derivative_coefficient - 1.0);
  return out;
}

}  // namespace qtamm
