#include <doctest.h>

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qtamm/algebra.hpp"
#include "qtamm/errors.hpp"
#include "qtamm/spectral.hpp"

using namespace qtamm;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// 2 ln b_n - ln b_(n-1) - ln b_(n+1) in 50 digits, b_n^2 = {n+1}.
double gap_oracle(double q, double mu, long n) {
  const Big qb(q), m(mu), e(1 - Big(mu));
  const auto qn = [&](long k) { const Big kb(k); return kb * (m * pow(qb, 1 - kb) + e * pow(qb, kb - 1)); };
  return (0.5 * (2 * log(qn(n + 1)) - log(qn(n)) - log(qn(n + 2)))).convert_to<double>();
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("ladder coefficients") {
  const auto p = DeformationParams::symmetric(0.5, 0.5);
  CHECK(ladder_coefficient(p, 0) == doctest::Approx(1.0));
  CHECK(ladder_coefficient(p, 1) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
  for (long n = 0; n < 20; ++n)
    CHECK(ladder_coefficient(DeformationParams::symmetric(1.0, 0.2), n) == doctest::Approx(std::sqrt(n + 1.0)));
  CHECK_THROWS_AS(ladder_coefficient(DeformationParams::symmetric(2.0, 2.0), 1), Error);
}

TEST_CASE("Jacobi matrices") {
  OscillatorConfig c;
  c.params = DeformationParams::symmetric(1.0, 0.5);
  c.dim = 2;
  const JacobiMatrix q2 = build_jacobi(c, JacobiKind::Q);
  REQUIRE(q2.offdiag.size() == 1);
  CHECK(q2.offdiag[0] == doctest::Approx(1.0));

  c.params = DeformationParams::symmetric(0.7, 0.4);
  c.dim = 64;
  c.m = 1.3;
  c.omega = 0.8;
  const JacobiMatrix jq = build_jacobi(c, JacobiKind::Q);
  const JacobiMatrix jp = build_jacobi(c, JacobiKind::P);
  for (std::size_t n = 0; n < jq.offdiag.size(); ++n) CHECK(jq.offdiag[n] == jp.offdiag[n]);
  for (const JacobiMatrix* j : {&jq, &jp}) {
    const auto m = j->dense();
    const std::size_t d = j->dim();
    for (std::size_t a = 0; a < d; ++a) {
      CHECK(m[a * d + a] == std::complex<double>(0.0, 0.0));
      for (std::size_t b = 0; b < d; ++b) CHECK(m[a * d + b] == std::conj(m[b * d + a]));
    }
  }
  // P off-diagonals are purely imaginary, Q's purely real
  const auto mp = jp.dense();
  CHECK(mp[1].real() == 0.0);
  CHECK(mp[1].imag() != 0.0);
}

TEST_CASE("energy levels and variances") {
  OscillatorConfig c;
  c.params = DeformationParams::symmetric(0.5, 0.5);
  CHECK(energy_level(c, 0) == doctest::Approx(0.5));
  CHECK(energy_level(c, 1) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(state_statistics(c, 0).uncertainty == doctest::Approx(0.5).epsilon(1e-14));
  for (long n = 0; n <= 20; ++n)
    CHECK(state_statistics(c, n).uncertainty * c.omega == doctest::Approx(energy_level(c, n)).epsilon(1e-12));

  OscillatorConfig h;
  h.params = DeformationParams::symmetric(1.0, 0.5);
  h.omega = 2.0;
  for (long n = 0; n < 30; ++n) CHECK(energy_level(h, n) == doctest::Approx(2.0 * (n + 0.5)));

  c.dim = 30;
  c.m = 0.7;
  const JacobiMatrix jq = build_jacobi(c, JacobiKind::Q);
  const JacobiMatrix jp = build_jacobi(c, JacobiKind::P);
  for (std::size_t n = 0; n + 2 < c.dim; ++n) {
    const StateStatistics st = state_statistics(c, static_cast<long>(n));
    CHECK(st.varQ == doctest::Approx(matrix_second_moment(jq, n)).epsilon(1e-12));
    CHECK(st.varP == doctest::Approx(matrix_second_moment(jp, n)).epsilon(1e-12));
    CHECK(st.meanQ == 0.0);
  }
}

TEST_CASE("energy is increasing") {
  for (double q : {0.3, 0.7, 0.95})
    for (double mu : {0.05, 0.5, 0.95}) {
      OscillatorConfig c;
      c.params = DeformationParams::symmetric(q, mu);
      double prev = -1.0;
      for (long n = 0; n <= 1000; ++n) {
        const double e = energy_level(c, n);
        if (!std::isfinite(e)) break;
        CHECK(e > prev);
        prev = e;
      }
    }
}

TEST_CASE("ratio test") {
  const auto d = selfadjointness_diagnostics(DeformationParams::symmetric(0.5, 0.5), 2000);
  CHECK(std::fabs(d.ratio_limit_estimate - std::sqrt(0.5)) <= 1e-3);
  CHECK(d.converging);
  const auto c = selfadjointness_diagnostics(DeformationParams::symmetric(1.0, 0.5), 2000);
  CHECK_FALSE(c.converging);
  // boson partial sums grow like 2 sqrt(n)
  CHECK(c.partial_sum > 80.0);
}

TEST_CASE("log-concavity gap against 50 digits") {
  for (double q : {0.3, 0.5, 0.9, 0.99})
    for (double mu : {0.1, 0.5, 0.9}) {
      const auto d = selfadjointness_diagnostics(DeformationParams::symmetric(q, mu), 400);
      double oracle_min = 1e300;
      long oracle_last = -1;
      for (long n = 1; n <= 400; ++n) {
        const double g = gap_oracle(q, mu, n);
        oracle_min = std::min(oracle_min, g);
        if (g < 0.0) oracle_last = n;
      }
      CAPTURE(q); CAPTURE(mu);
      CHECK(d.min_logconcavity_gap == doctest::Approx(oracle_min).epsilon(1e-8));
      CHECK(d.last_logconcavity_violation == oracle_last);
      CHECK(d.logconcavity_ok == (oracle_last < 0));
    }
}

TEST_CASE("log-concavity fails at small n for small q and mu, and holds eventually") {
  const auto d = selfadjointness_diagnostics(DeformationParams::symmetric(0.3, 0.1), 10000);
  CHECK_FALSE(d.logconcavity_ok);
  CHECK(d.first_logconcavity_violation == 1);
  CHECK(d.last_logconcavity_violation == 2);
  CHECK(selfadjointness_diagnostics(DeformationParams::symmetric(0.9, 0.9), 10000).logconcavity_ok);
}

}
