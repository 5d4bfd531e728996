#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qtamm/errors.hpp"
#include "qtamm/thermo.hpp"

using namespace qtamm;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// Occupation in the original (e^x - 1) arrangement, 50 digits.
double occupation_oracle(double x, double q, double mu) {
  const Big ex = exp(Big(x)), qb(q), m(mu);
  const Big v = (ex - 1) * (m / pow(ex - 1 / qb, 2) + (1 - m) / pow(ex - qb, 2));
  return v.convert_to<double>();
}

std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_SUITE("thermo") {

TEST_CASE("partition function and x_min") {
  CHECK(partition_function(std::log(2.0)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(partition_function(50.0) == doctest::Approx(1.0));
  double trace = 0.0;
  for (int n = 0; n < 200; ++n) trace += std::exp(-0.3 * n);
  CHECK(partition_function(0.3) == doctest::Approx(trace).epsilon(1e-13));
  CHECK_THROWS_AS(partition_function(0.0), Error);
  CHECK(x_min(1.0) == 0.0);
  CHECK(x_min(0.78) == doctest::Approx(0.248461).epsilon(1e-6));
  CHECK(x_min(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(x_min(1.5), Error);
}

TEST_CASE("mean occupation") {
  CHECK(mean_occupation(1.0, 1.0, 0.5) == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-12));
  for (double q : {0.3, 0.78, 0.95})
    for (double mu : {0.0, 0.1, 0.5, 0.9, 1.0})
      for (double dx : {1e-6, 1e-3, 0.1, 0.5, 2.0, 20.0}) {
        const double x = x_min(q) + dx;
        CAPTURE(q); CAPTURE(mu); CAPTURE(dx);
        // relative condition number ~ x / dx near the pole
        const double cond = std::max(1.0, x / dx);
        CHECK(mean_occupation(x, q, mu) == doctest::Approx(occupation_oracle(x, q, mu)).epsilon(1e-14 * cond));
        if (dx >= 0.1) CHECK(mean_occupation(x, q, mu) == doctest::Approx(occupation_partial_sum(x, q, mu, 20000)).epsilon(1e-10));
      }
  for (double q : {0.5, 0.78}) {
    try {
      (void)mean_occupation(x_min(q) - 0.01, q, 0.5);
      FAIL("expected BelowDomain");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BelowDomain);
    }
    CHECK(occupation_partial_sum(x_min(q) - 0.01, q, 0.5, 10000) > 1e20);
  }
  const ThermoPoint pt = thermo_point(0.1, 0.78, 0.5);
  CHECK_FALSE(pt.in_domain);
  CHECK(std::isnan(pt.occupation));
  CHECK(pt.note == ThermoNote::BelowXmin);
}

TEST_CASE("classical limit is approached monotonically") {
  double prev = 1e300;
  for (double q : {0.9, 0.99, 0.999}) {
    const double e = std::fabs(mean_occupation(1.0, q, 0.5) - 1.0 / std::expm1(1.0));
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("spectral density") {
  for (int i = 1; i <= 50; ++i) {
    const double nu = 0.2 * i;
    CHECK(spectral_density(nu, 1.0, 1.0, 0.3) == doctest::Approx(planck_density(nu, 1.0)).epsilon(1e-12));
  }
  CHECK(spectral_density(60.0, 1.0, 0.78, 0.5) < 1e-19);
  CHECK(spectral_density(80.0, 1.0, 0.78, 0.5) < 1e-27);
  PhysicalConstants k{2.0, 0.5, 3.0};
  const double x = 2.0 * 1.3 / (0.5 * 1.7);
  const double expect = 8 * std::numbers::pi * 2.0 * std::pow(1.3, 3) / 27.0 * occupation_oracle(x, 0.78, 0.5);
  CHECK(spectral_density(1.3, 1.7, 0.78, 0.5, k) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("radiation curves match the golden fixtures") {
  for (const char* mu_s : {"0.1", "0.5", "0.9"}) {
    const auto rows = read_csv(std::string(QTAMM_FIXTURE_DIR) + "/figure_q0.78_mu" + mu_s + ".csv");
    const RadiationCurve c = radiation_curve(0.78, std::stod(mu_s), 1.0, 10.0, 200);
    REQUIRE(rows.size() == c.nu.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(c.nu[i] == doctest::Approx(rows[i][0]).epsilon(1e-14));
      CHECK(c.I[i] == doctest::Approx(rows[i][1]).epsilon(1e-12));
      CHECK(c.I_planck[i] == doctest::Approx(rows[i][2]).epsilon(1e-12));
    }
  }
}

TEST_CASE("J at q = 1 against exp_sinh") {
  boost::math::quadrature::exp_sinh<double> es;
  const double ref = es.integrate([](double x) { return x > 700.0 ? 0.0 : x * x * x / std::expm1(x); });
  const double pi4 = std::pow(std::numbers::pi, 4) / 15.0;
  CHECK(ref == doctest::Approx(pi4).epsilon(1e-13));
  const JResult j = J_restricted(1.0, 0.5);
  CHECK(std::fabs(j.value - pi4) <= 1e-8 * pi4);
  CHECK(std::fabs(J_restricted(1.0, 0.5, 1e-10).value - j.value) <= 1e-9 * pi4);
}

TEST_CASE("J for q < 1, mu = 0 against exp_sinh") {
  const double q = 0.78;
  boost::math::quadrature::exp_sinh<double> es;
  const double xm = x_min(q);
  const double ref = es.integrate([&](double t) {
    const double x = xm + t;
    return x > 700.0 ? 0.0 : x * x * x * occupation_oracle(x, q, 0.0);
  });
  CHECK(J_restricted(q, 0.0).value == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("J for q < 1, mu > 0 is not integrable at x_min") {
  try {
    (void)J_restricted(0.78, 0.5);
    FAIL("expected NonIntegrableSingularity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonIntegrableSingularity);
  }
  // independent witness: the cut integral grows like 1/eps
  boost::math::quadrature::tanh_sinh<double> ts;
  const double xm = x_min(0.78);
  const auto f = [&](double x) { return x * x * x * occupation_oracle(x, 0.78, 0.5); };
  const double a = ts.integrate(f, xm + 1e-3, xm + 1.0);
  const double b = ts.integrate(f, xm + 1e-4, xm + 1.0);
  CHECK((b - a) / a > 5.0);
}

TEST_CASE("series forms of J") {
  const double pi4 = std::pow(std::numbers::pi, 4) / 15.0;
  CHECK(J_series(1.0, 0.5, 200000) == doctest::Approx(pi4).epsilon(1e-12));
  // the printed form telescopes to 6 (zeta(4) - 1)
  CHECK(J_series_printed(1.0, 0.5, 200000) == doctest::Approx(pi4 - 6.0).epsilon(1e-12));
  CHECK(J_series(0.78, 0.5, 2000) > 1e100);
}

TEST_CASE("T^4 scaling") {
  const TotalEnergy u1 = total_energy(1.0, 1.0, 0.5);
  const TotalEnergy u2 = total_energy(2.0, 1.0, 0.5);
  CHECK(u2.U / u1.U == doctest::Approx(16.0).epsilon(1e-10));
  CHECK(u1.a_q == doctest::Approx(8 * std::numbers::pi * std::pow(std::numbers::pi, 4) / 15.0).epsilon(1e-8));
}

}
