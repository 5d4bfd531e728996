#include "qtamm/finite_dim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qtamm/errors.hpp"
#include "qtamm/kernels.hpp"

namespace qtamm {

double FiniteParams::mu() const { return 1.0 / (1.0 - std::pow(q, 2.0 * static_cast<double>(d))); }

DeformationParams FiniteParams::as_deformation() const {
  DeformationParams p;
  const double q2d = std::pow(q, 2.0 * static_cast<double>(d));
  p.q = q;
  p.mu = 1.0 / (1.0 - q2d);
  // 1 - mu cancels when q^(2d) is tiny.
  p.eta = -q2d / (1.0 - q2d);
  p.alpha = 1.0;
  p.beta = -1.0;
  p.gamma = -1.0;
  p.delta = -1.0;
  p.normalized = true;
  return p;
}

void FiniteParams::validate() const {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::InvalidParams, "finite family needs 0 < q < 1");
  if (d == 0) throw Error(ErrorKind::InvalidParams, "dimension d must be nonzero");
}

double qnumber_d(const FiniteParams& fp, double n) {
  const double dd = static_cast<double>(fp.d);
  return n * (std::pow(fp.q, n - 1.0) - std::pow(fp.q, 2.0 * dd - n - 1.0)) /
         (1.0 - std::pow(fp.q, 2.0 * dd));
}

FockRep build_fock_d(const FiniteParams& fp) {
  fp.validate();
  if (fp.d < 1) throw Error(ErrorKind::InvalidParams, "representation needs d >= 1");
  const std::size_t dim = static_cast<std::size_t>(fp.d);
  std::vector<double> numbers(dim + 1);
  for (std::size_t n = 0; n <= dim; ++n) numbers[n] = qnumber_d(fp, static_cast<double>(n));
  return fock_from_numbers(fp.as_deformation(), std::move(numbers));
}

PowerSeries deformed_derivative_d(const PowerSeries& s, const FiniteParams& fp) {
  const std::size_t t = s.trunc();
  if (t <= 1) return PowerSeries::zeros(1);
  PowerSeries out = PowerSeries::zeros(t - 1);
  std::vector<double> nums(t - 1);
  for (std::size_t i = 0; i + 1 < t; ++i) nums[i] = qnumber_d(fp, static_cast<double>(i + 1));
  kernels::multiply(nums, s.coeffs().subspan(1), out.coeffs());
  return out;
}

PowerSeries deformed_derivative_d_operator(const PowerSeries& s, const FiniteParams& fp) {
  const double q2d = std::pow(fp.q, 2.0 * static_cast<double>(fp.d));
  const PowerSeries ds = s.derivative();
  const double c = 1.0 / (1.0 - q2d);
  return c * scale_op(ds, fp.q, 1.0) - (c * q2d / (fp.q * fp.q)) * scale_op(ds, fp.q, -1.0);
}

PowerSeries deformed_antiderivative_d(const PowerSeries& s, const FiniteParams& fp) {
  const std::size_t t = s.trunc();
  PowerSeries out = PowerSeries::zeros(t + 1);
  for (std::size_t n = 0; n < t; ++n) {
    if (s[n] == 0.0) continue;
    const double denom = qnumber_d(fp, static_cast<double>(n + 1));
    if (denom == 0.0) throw ZeroDenominator(static_cast<long>(n));
    out[n + 1] = s[n] / denom;
  }
  return out;
}

double leibniz_defect_d(const PowerSeries& f, const PowerSeries& g, const FiniteParams& fp) {
  const std::size_t t = std::min(f.trunc(), g.trunc());
  if (t < 2) return 0.0;
  const PowerSeries ft = f.truncated(t);
  const PowerSeries gt = g.truncated(t);
  const double q = fp.q;
  const double q2d = std::pow(q, 2.0 * static_cast<double>(fp.d));
  const std::size_t out_len = t - 1;
  const auto cut = [&](const PowerSeries& s) { return s.truncated(out_len); };
  const auto tcal = [&](const PowerSeries& s) {
    return (1.0 / (1.0 - q2d)) * (scale_op(s, q, 1.0) - scale_op(s, q, -1.0));
  };

  const PowerSeries lhs = deformed_derivative_d(ft * gt, fp);
  const PowerSeries t1 = cut(cut(deformed_derivative_d(ft, fp)) * cut(scale_op(gt, q, 1.0)));
  const PowerSeries t2 = cut(cut(scale_op(ft, q, -1.0)) * cut(deformed_derivative_d(gt, fp)));
  const PowerSeries t3 = cut(cut(tcal(ft)) * cut(scale_op(gt.derivative(), q, 1.0)));
  const PowerSeries t4 =
      (q2d / (q * q)) * cut(cut(scale_op(ft.derivative(), q, -1.0)) * cut(tcal(gt)));
  const PowerSeries rhs = t1 + t2 + t3 + t4;

  double scale = 1.0;
  for (std::size_t k = 0; k < out_len; ++k) {
    scale = std::max(scale, std::fabs(lhs[k]) + std::fabs(t1[k]) + std::fabs(t2[k]) +
                                std::fabs(t3[k]) + std::fabs(t4[k]));
  }
  return max_coeff_diff(lhs, rhs) / scale;
}

PowerSeries deformed_exp_d_series(const FiniteParams& fp, std::size_t trunc) {
  PowerSeries s = PowerSeries::zeros(trunc);
  const std::size_t top = fp.d > 0 ? static_cast<std::size_t>(fp.d) : 0;
  double c = 1.0;
  for (std::size_t n = 0; n < std::min(trunc, top); ++n) {
    s[n] = c;
    c /= qnumber_d(fp, static_cast<double>(n + 1));
  }
  return s;
}

double deformed_exp_d(const FiniteParams& fp, double x) {
  const std::size_t d = fp.d > 0 ? static_cast<std::size_t>(fp.d) : 0;
  return deformed_exp_d_series(fp, std::max<std::size_t>(d, 1)).eval(x);
}

double exp_d_eigen_defect(const FiniteParams& fp, double omega, double x) {
  const std::size_t d = std::max<long>(fp.d, 1);
  // E_d(w x) as a series in x, then D applied termwise.
  PowerSeries s = deformed_exp_d_series(fp, d + 1);
  for (std::size_t n = 0; n <= d; ++n) s[n] *= std::pow(omega, static_cast<double>(n));
  const PowerSeries ds = deformed_derivative_d(s, fp);
  return std::fabs(ds.eval(x) - omega * s.eval(x));
}

double neg_qnumber_d_identity_defect(const FiniteParams& fp, long k) {
  if (k == 0) return 0.0;
  const double kd = static_cast<double>(k);
  const double lhs = qnumber_d(fp, -kd);
  const double rhs = -qnumber_d(FiniteParams{fp.q, -fp.d}, kd);
  return std::fabs(lhs - rhs) / std::fabs(lhs);
}

MomentIdentityD moment_identity_d_check(const FiniteParams& fp, long n) {
  MomentIdentityD out;
  out.lhs = 1.0;
  out.rhs = 1.0;
  const FiniteParams mirror{fp.q, -fp.d};
  for (long k = 1; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    out.lhs *= -qnumber_d(fp, -kd);
    out.rhs *= qnumber_d(mirror, kd);
    out.max_link_defect = std::max(out.max_link_defect, neg_qnumber_d_identity_defect(fp, k));
  }
  out.rel_defect = std::fabs(out.lhs - out.rhs) / std::fabs(out.rhs);
  return out;
}

}  // namespace qtamm
