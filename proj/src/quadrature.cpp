#include "qtamm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "qtamm/errors.hpp"

namespace qtamm::quad {
namespace {

// Kronrod 15-point abscissae (positive half) and weights; Gauss 7-point
// weights on the odd Kronrod nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double a, double b, std::size_t& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  evals += 15;
  const double value = resk * h;
  const double error = std::fabs((resk - resg) * h);
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::QuadratureFailure, "non-finite integrand value");
  }
  return {a, b, value, error};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opt) {
  Result out;
  if (a == b) return out;
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b, out.evaluations);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  std::size_t intervals = 1;
  const double eps = 50.0 * 2.220446049250313e-16;
  while (true) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::fabs(total));
    if (total_err <= target) break;
    Segment worst = heap.top();
    // Nothing left to resolve below rounding.
    if (worst.error <= eps * std::fabs(worst.value) ||
        std::fabs(worst.b - worst.a) <= eps * std::max(std::fabs(worst.a), 1.0)) {
      if (total_err <= 1e3 * target) break;
      throw Error(ErrorKind::QuadratureFailure, "integrand not resolved at rounding level");
    }
    if (intervals >= opt.max_intervals) {
      throw Error(ErrorKind::QuadratureFailure, "subdivision limit reached");
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment l = gk15(f, worst.a, mid, out.evaluations);
    Segment r = gk15(f, mid, worst.b, out.evaluations);
    total += l.value + r.value - worst.value;
    total_err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
    ++intervals;
  }
  // Re-sum to avoid drift from the incremental updates.
  double sum = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.error = err;
  return out;
}

HalfLineResult integrate_halfline(const Integrand& f, const HalfLineOptions& opt) {
  HalfLineResult out;
  double sum = 0.0;
  double comp = 0.0;  // Neumaier compensation
  double err = 0.0;
  double peak = 0.0;
  double min_mag = INFINITY;
  double min_sum = 0.0;
  double min_err = 0.0;
  double min_x = 0.0;
  bool past_peak = false;
  double prev_mag = 0.0;

  double x0 = 0.0;
  double width = opt.first_panel;
  while (x0 < opt.max_x) {
    const double x1 = x0 + width;
    double env = 0.0;
    const Integrand tracked = [&](double x) {
      const double v = f(x);
      env = std::max(env, std::fabs(v));
      return v;
    };
    Options po;
    po.rel_tol = opt.rel_tol;
    po.abs_tol = 0.1 * opt.rel_tol * std::fabs(sum + comp);
    const Result r = integrate(tracked, x0, x1, po);
    const double mag = env * width;

    const double t = sum + r.value;
    comp += std::fabs(sum) >= std::fabs(r.value) ? (sum - t) + r.value : (r.value - t) + sum;
    sum = t;
    err += r.error;
    ++out.panels;

    if (mag < prev_mag) past_peak = true;
    prev_mag = mag;
    peak = std::max(peak, mag);
    if (past_peak && mag < min_mag) {
      min_mag = mag;
      min_sum = sum + comp;
      min_err = err;
      min_x = x1;
    }

    const double total = sum + comp;
    if (mag > 1e250) {
      throw Error(ErrorKind::QuadratureFailure,
                  "half-line integrand grows without reaching a plateau");
    }
    if (mag <= opt.rel_tol * std::fabs(total) || (total == 0.0 && mag == 0.0)) {
      out.value = total;
      out.error = err + mag;
      out.cutoff = x1;
      out.residual = mag;
      return out;
    }
    if (past_peak && mag > opt.rise_factor * min_mag) {
      if (!(min_mag < 0.1 * peak)) {
        throw Error(ErrorKind::QuadratureFailure,
                    "half-line integrand grows again before decaying below its peak");
      }
      out.value = min_sum;
      out.error = min_err + min_mag;
      out.cutoff = min_x;
      out.residual = min_mag;
      out.regularized = true;
      return out;
    }
    x0 = x1;
    width *= opt.growth;
  }
  throw Error(ErrorKind::QuadratureFailure, "half-line integrand neither decays nor grows");
}

}  // namespace qtamm::quad
