#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qtamm/calculus.hpp"
#include "qtamm/errors.hpp"
#include "qtamm/quadrature.hpp"

using namespace qtamm;
using Big = boost::multiprecision::cpp_bin_float_100;

namespace {

// sum y^n / {n}! in 100 digits, {n} formed from the defining formula.
double exp_oracle(const DeformationParams& p, double y) {
  const Big q(p.q), mu(p.mu), eta(p.eta), yb(y);
  Big term(1), sum(1);
  for (int n = 1; n < 4000; ++n) {
    const Big nb(n);
    term *= yb / (nb * (mu * pow(q, Big(p.alpha) * nb + Big(p.beta)) + eta * pow(q, Big(p.gamma) * nb + Big(p.delta))));
    sum += term;
    if (n > 20 && abs(term) < Big("1e-60") * abs(sum)) break;
  }
  return sum.convert_to<double>();
}

PowerSeries random_series(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PowerSeries s = PowerSeries::zeros(n);
  for (std::size_t k = 0; k < n; ++k) s[k] = u(rng);
  return s;
}

}  // namespace

TEST_SUITE("calculus") {

TEST_CASE("deformed derivative on monomials") {
  const auto p = DeformationParams::symmetric(0.5, 0.5);
  CHECK(deformed_derivative(PowerSeries({3.0}), p)[0] == 0.0);
  const PowerSeries d = deformed_derivative(PowerSeries::monomial(2, 3), p);
  CHECK(d[1] == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(d[0] == 0.0);
  std::mt19937_64 rng(1);
  for (double q : {0.3, 0.8, 1.4})
    for (double mu : {-0.5, 0.25, 0.9}) {
      const auto pp = DeformationParams::symmetric(q, mu);
      const PowerSeries f = random_series(rng, 20);
      const PowerSeries a = deformed_derivative(f, pp);
      const PowerSeries b = deformed_derivative_operator(f, pp);
      double scale = 1.0;
      for (double c : a.coeffs()) scale = std::max(scale, std::fabs(c));
      CHECK(max_coeff_diff(a, b) <= 1e-13 * scale);
    }
}

TEST_CASE("functional form: polynomials, ln x, classical case") {
  const auto p = DeformationParams::symmetric(0.5, 0.5);
  const PowerSeries x3 = PowerSeries::monomial(3, 4);
  EvalFn g{[&](double x) { return x3.eval(x); }, [&](double x) { return x3.derivative().eval(x); }};
  for (double x : {-1.0, 0.3, 2.0})
    CHECK(deformed_derivative_fn(g, p, x) == doctest::Approx(qnumber(p, 3) * x * x).epsilon(1e-14));

  EvalFn ln{[](double x) { return std::log(x); }, [](double x) { return 1.0 / x; }, 0.0};
  for (double x : {0.5, 1.0, 3.0})
    CHECK(deformed_derivative_fn(ln, p, x) == doctest::Approx((0.5 * 0.5 + 0.5 / 0.5) / x).epsilon(1e-14));
  CHECK_THROWS_AS(deformed_derivative_fn(ln, p, -1.0), Error);

  const auto c = DeformationParams::symmetric(1.0, 1.0);
  EvalFn s{[](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }};
  CHECK(deformed_derivative_fn(s, c, 0.7) == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
}

TEST_CASE("antiderivative") {
  const auto p = DeformationParams::symmetric(0.5, 0.5);
  CHECK(max_coeff_diff(deformed_antiderivative(PowerSeries::zeros(4), p), PowerSeries::zeros(5)) == 0.0);
  const PowerSeries i = deformed_antiderivative(PowerSeries::monomial(1, 2), p);
  CHECK(i[2] == doctest::Approx(1.0 / 2.5).epsilon(1e-15));
  std::mt19937_64 rng(2);
  const PowerSeries f = random_series(rng, 32);
  CHECK(max_coeff_diff(deformed_derivative(deformed_antiderivative(f, p), p), f) <= 1e-13);
}

TEST_CASE("deformed exponential against a 100-digit series") {
  const auto p = DeformationParams::symmetric(0.5, 0.5);
  CHECK(deformed_exp(p, 0.0) == 1.0);
  CHECK(deformed_exp(DeformationParams::symmetric(1.0, 0.3), 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(deformed_exp(p, 1.0) == doctest::Approx(exp_oracle(p, 1.0)).epsilon(1e-12));
  for (double q : {0.5, 0.9, 0.99})
    for (double mu : {0.25, 0.75})
      for (double x : {-3.0, -1.0, 0.5, 2.0}) {
        const auto pp = DeformationParams::symmetric(q, mu);
        CHECK(deformed_exp(pp, x) == doctest::Approx(exp_oracle(pp, x)).epsilon(1e-13));
      }
  const std::complex<double> z(0.3, -1.2);
  const auto ez = deformed_exp(p, z);
  CHECK(deformed_exp(p, std::conj(z)) == std::conj(ez));
}

TEST_CASE("ExpSeries escalates precision in the cancellation regime") {
  const auto p = DeformationParams::symmetric(0.9, 0.75);
  const ExpSeries e(p, 0, 200.0);
  for (double y : {1.0, -5.0, -40.0, -80.0, -160.0}) {
    CAPTURE(y);
    CHECK(e(y) == doctest::Approx(exp_oracle(p, y)).epsilon(1e-13));
  }
  (void)e(-160.0);
  CHECK(ExpSeries::last_tier() >= 1);
  CHECK_THROWS_AS(e(-400.0), Error);

  // derivative orders against the differentiated series
  const ExpSeries e2(p, 2, 10.0);
  const PowerSeries s = deformed_exp_series(p, 80).derivative().derivative();
  for (double y : {-2.0, 0.5, 3.0}) CHECK(e2(y) == doctest::Approx(s.eval(y)).epsilon(1e-13));
  for (double x : {-1.0, 0.7}) {
    const PowerSeries s1 = deformed_exp_series(p, 80).derivative();
    CHECK(deformed_exp_derivative(p, 2.0, x, 1) == doctest::Approx(2.0 * s1.eval(2.0 * x)).epsilon(1e-13));
  }
}

TEST_CASE("eigenfunction identity") {
  for (double q : {0.5, 0.9})
    for (double mu : {0.25, 0.75}) {
      const auto p = DeformationParams::symmetric(q, mu);
      for (double w : {-1.0, 0.5, 1.0, 2.0}) {
        EvalFn g{[&](double x) { return deformed_exp(p, w * x); },
                 [&](double x) { return deformed_exp_derivative(p, w, x, 1); }};
        for (int i = 0; i <= 30; ++i) {
          const double x = 0.1 * i;
          const double rhs = w * deformed_exp(p, w * x);
          CHECK(std::fabs(deformed_derivative_fn(g, p, x) - rhs) <= 1e-10 * std::fabs(rhs));
        }
      }
    }
}

TEST_CASE("Leibniz rule") {
  const auto p = DeformationParams::symmetric(0.5, 0.5);
  CHECK(leibniz_defect(PowerSeries({1.0, 0.0}), PowerSeries({1.0, 0.0}), p) == 0.0);
  CHECK(leibniz_defect(PowerSeries::monomial(1, 4), PowerSeries::monomial(1, 4), p) <= 1e-14);
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) worst = std::max(worst, leibniz_defect(random_series(rng, 16), random_series(rng, 16), p));
  CHECK(worst <= 1e-12);
  CHECK_THROWS_AS(leibniz_defect(PowerSeries({1.0}), PowerSeries({1.0}),
                                 DeformationParams::normalized_with(0.5, 0.5, 1, -1, -1, -1)),
                  Error);
}

TEST_CASE("negative deformed numbers") {
  const auto p = DeformationParams::symmetric(0.5, 0.5);
  CHECK(neg_qnumber_identity_defect(p, 0) == 0.0);
  CHECK(neg_qnumber_identity_defect(p, 1) <= 1e-14);
  for (double q : {0.3, 0.6, 0.9, 1.3})
    for (double mu : {0.1, 0.5, 0.75, 1.5})
      for (long k = 1; k <= 20; ++k) CHECK(neg_qnumber_identity_defect(DeformationParams::symmetric(q, mu), k) <= 1e-13);
}

TEST_CASE("log integral") {
  const LogIntegral li = log_integral_identity(DeformationParams::symmetric(0.5, 0.5));
  CHECK(li.exists);
  CHECK(li.value == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(li.consistency <= 1e-15);
  for (double mu : {0.0, 0.4, 1.0}) CHECK(log_integral_identity(DeformationParams::symmetric(0.3, mu)).exists);
}

TEST_CASE("inverse expansion branches") {
  CHECK_THROWS_AS(inverse_expansion(DeformationParams::symmetric(0.9, 0.5)), Error);
  const InverseExpansion hi = inverse_expansion(DeformationParams::symmetric(0.9, 0.75));
  CHECK(hi.branch == ExpansionBranch::MuTerm);
  CHECK(std::fabs(hi.halfline_ratio) < 1.0);
  const InverseExpansion lo = inverse_expansion(DeformationParams::symmetric(0.9, 0.25));
  CHECK(lo.branch == ExpansionBranch::EtaTerm);
}

TEST_CASE("deformed integral reduces to the ordinary one at q = 1") {
  const auto c = DeformationParams::symmetric(1.0, 0.3);
  boost::math::quadrature::exp_sinh<double> es;
  for (int n = 0; n <= 5; ++n) {
    const auto f = [n](double x) { return x > 700.0 ? 0.0 : std::exp(-x) * std::pow(x, n); };
    const double ref = es.integrate(f);
    CHECK(deformed_integral_halfline(f, c).value == doctest::Approx(ref).epsilon(1e-11));
  }
}

TEST_CASE("moment identities") {
  const auto p = DeformationParams::symmetric(0.99, 0.75);
  const ExpSeries e(p, 0, 4e6);
  const auto r0 = deformed_integral_halfline([&](double x) { return e(-x); }, p, 1e-10);
  CHECK(r0.value == doctest::Approx(1.0).epsilon(1e-8));
  for (double w : {0.5, 2.0})
    for (long n : {0L, 3L, 8L}) {
      const auto f = [&](double x) { return e(-w * x) * std::pow(x, static_cast<double>(n)); };
      CAPTURE(w); CAPTURE(n);
      CHECK(deformed_integral_halfline(f, p, 1e-10).value == doctest::Approx(halfline_moment(p, n, w)).epsilon(1e-8));
    }
  const auto pr = p.reflected();
  const ExpSeries er(pr, 0, 4e6);
  for (long n = 0; n <= 4; ++n) {
    CHECK(halfline_moment(pr, n) == doctest::Approx(reflected_moment(p, n)).epsilon(1e-13));
    const auto f = [&](double x) { return er(-x) * std::pow(x, static_cast<double>(n)); };
    CHECK(deformed_integral_halfline(f, pr, 1e-10).value == doctest::Approx(reflected_moment(p, n)).epsilon(1e-8));
  }
}

TEST_CASE("moment identity at q = 0.9 is only reached as a regularized plateau") {
  const auto p = DeformationParams::symmetric(0.9, 0.75);
  const ExpSeries e(p, 0, 4e6);
  const auto r = deformed_integral_halfline([&](double x) { return e(-x) * x * x; }, p, 1e-10);
  CHECK(r.regularized);
  const double err = std::fabs(r.value / halfline_moment(p, 2) - 1.0);
  CHECK(err > 1e-8);
  CHECK(err < 1e-2);
}

}

TEST_SUITE("quadrature") {

TEST_CASE("finite interval against tanh_sinh") {
  boost::math::quadrature::tanh_sinh<double> ts;
  const auto f = [](double x) { return std::sqrt(x) * std::cos(3 * x) + 1.0 / (1.0 + x * x); };
  const double ref = ts.integrate(f, 0.0, 4.0);
  CHECK(quad::integrate(f, 0.0, 4.0).value == doctest::Approx(ref).epsilon(1e-11));
}

TEST_CASE("half line: decaying, plateau, runaway") {
  boost::math::quadrature::exp_sinh<double> es;
  const auto f = [](double x) { return x > 700.0 ? 0.0 : x * x * x * std::exp(-x) / (1.0 + 0.1 * x); };
  const auto r = quad::integrate_halfline(f);
  CHECK_FALSE(r.regularized);
  CHECK(r.value == doctest::Approx(es.integrate(f)).epsilon(1e-11));

  // e^-x plus a piece that wakes up far out: cut at the envelope minimum
  const auto g = [](double x) { return std::exp(-x) + 1e-12 * std::exp(0.5 * x) * std::cos(x); };
  const auto rg = quad::integrate_halfline(g);
  CHECK(rg.regularized);
  CHECK(rg.cutoff == doctest::Approx(2.0 / 3.0 * std::log(1e12)).epsilon(0.2));
  CHECK(rg.value == doctest::Approx(1.0).epsilon(1e-7));

  CHECK_THROWS_AS(quad::integrate_halfline([](double x) { return std::exp(x); }), Error);
}

}
