#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qtamm/algebra.hpp"
#include "qtamm/errors.hpp"
#include "qtamm/power_series.hpp"

using namespace qtamm;
using Big = boost::multiprecision::cpp_bin_float_50;

TEST_SUITE("core-algebra") {

TEST_CASE("qnumber examples") {
  const auto p = DeformationParams::symmetric(0.5, 0.5);
  CHECK(qnumber(p, 0) == 0.0);
  CHECK(qnumber(p, 1) == doctest::Approx(1.0).epsilon(1e-15));
  // 2 (0.5 * 0.5^-1 + 0.5 * 0.5) in 50 digits
  const Big ref = Big(2) * (Big("0.5") / Big("0.5") + Big("0.5") * Big("0.5"));
  CHECK(qnumber(p, 2) == doctest::Approx(ref.convert_to<double>()).epsilon(1e-15));
  CHECK(qnumber(DeformationParams::symmetric(1.0, 0.3), 7) == 7.0);
}

TEST_CASE("qnumber is total in n and matches a 50-digit evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uq(0.2, 3.0), um(-2.0, 3.0), un(-30.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    const auto p = DeformationParams::normalized_with(uq(rng), um(rng), -1.0, 1.0, 1.0, -1.0);
    const double n = un(rng);
    const Big q(p.q), mu(p.mu), eta(p.eta), nb(n);
    const Big ref = nb * (mu * pow(q, -nb + 1) + eta * pow(q, nb - 1));
    const double r = ref.convert_to<double>();
    // relative to the larger of the two terms, which bounds the rounding
    const double scale = std::fabs(n) * (std::fabs(p.mu) * std::pow(p.q, 1 - n) + std::fabs(p.eta) * std::pow(p.q, n - 1));
    CHECK(std::fabs(qnumber(p, n) - r) <= 1e-14 * scale);
  }
}

TEST_CASE("qfactorial") {
  const auto p = DeformationParams::symmetric(0.5, 0.5);
  CHECK(qfactorial(p, 0) == 1.0);
  CHECK(qfactorial(p, 2) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(qfactorial(DeformationParams::symmetric(1.0, 0.7), 5) == doctest::Approx(120.0).epsilon(1e-15));
  for (long n = 0; n < 40; ++n) {
    CHECK(qfactorial(p, n + 1) == doctest::Approx(qfactorial(p, n) * qnumber(p, n + 1)).epsilon(1e-14));
  }
  // q = 2, mu = 2: {2} = 2(2 * 2^-1 - 2) = -2
  const auto bad = DeformationParams::symmetric(2.0, 2.0);
  CHECK_THROWS_AS(qfactorial(bad, 3), Error);
  CHECK(qfactorial(bad, 2, false) == -2.0);
  CHECK(qfactorial(bad, 3, false) == 21.0);
}

TEST_CASE("parameter validation") {
  DeformationParams p = DeformationParams::symmetric(0.5, 0.5);
  p.q = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = DeformationParams::symmetric(0.5, 0.5);
  p.gamma = p.alpha;
  try {
    p.validate();
    FAIL("expected DegenerateExponents");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateExponents);
  }
  p = DeformationParams::symmetric(0.5, 0.5);
  p.eta = 0.6;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("positivity classification agrees with the sign of {n}") {
  for (double mu : {0.0, 0.5, 1.0}) CHECK(classify_positivity(DeformationParams::symmetric(0.7, mu)).regime == Regime::AllN);
  std::mt19937_64 rng(3);
  const double qs[] = {0.5, 0.8, 1.3, 2.0};
  const double exps[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  const double mus[] = {-1.5, -0.3, 0.4, 1.7, 3.0};
  int checked = 0;
  for (double q : qs)
    for (double a : exps)
      for (double g : exps) {
        if (a == g) continue;
        for (double mu : mus) {
          const auto p = DeformationParams::normalized_with(q, mu, a, 1.0, g, -1.0);
          const PositivityReport r = classify_positivity(p);
          for (long n = 1; n <= 60; ++n) {
            const double v = qnumber(p, static_cast<double>(n));
            if (std::fabs(v) < 1e-9 * std::fabs(n)) continue;
            CAPTURE(q); CAPTURE(a); CAPTURE(g); CAPTURE(mu); CAPTURE(n);
            CHECK(r.admissible.contains(n) == (v > 0.0));
            ++checked;
          }
        }
      }
  CHECK(checked > 10000);
}

TEST_CASE("Type I and Type III examples") {
  // q > 1, alpha > gamma, mu > 1: {n} >= 0 from a bound on
  const auto p1 = DeformationParams::normalized_with(2.0, 3.0, 1.0, 0.0, -1.0, 0.0);
  const auto r1 = classify_positivity(p1);
  CHECK(r1.regime == Regime::TypeI);
  CHECK(r1.lower_bound);
  // q = 0.5, alpha = 1, gamma = -1, log_q(1 - 1/mu) = 2d with d = 3
  const double q = 0.5;
  const double mu = 1.0 / (1.0 - std::pow(q, 6.0));
  const auto p3 = DeformationParams::normalized_with(q, mu, 1.0, -1.0, -1.0, -1.0);
  const auto r3 = classify_positivity(p3);
  CHECK(r3.regime == Regime::TypeIII);
  REQUIRE(r3.bound);
  const long b = static_cast<long>(std::floor(*r3.bound + 1e-9));
  CHECK(qnumber(p3, b - 1) > 0.0);
  CHECK(qnumber(p3, b + 1) < 0.0);
  CHECK(r3.admissible.bounded());
}

TEST_CASE("Fock representation") {
  const auto p = DeformationParams::symmetric(0.5, 0.5);
  const FockRep r = build_fock(p, 3);
  REQUIRE(r.ladder().size() == 2);
  CHECK(r.ladder()[0] == doctest::Approx(1.0));
  CHECK(r.ladder()[1] == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
  const FockRep c = build_fock(DeformationParams::symmetric(1.0, 0.5), 4);
  for (std::size_t n = 0; n < 3; ++n) CHECK(c.ladder()[n] == doctest::Approx(std::sqrt(n + 1.0)).epsilon(1e-15));

  // q = 2, mu = 2: direct scan finds {2} < 0
  const auto bad = DeformationParams::symmetric(2.0, 2.0);
  long first = -1;
  for (long n = 1; n < 8 && first < 0; ++n)
    if (qnumber(bad, n) < 0.0) first = n;
  REQUIRE(first == 2);
  try {
    (void)build_fock(bad, 6);
    FAIL("expected RepresentationBreakdown");
  } catch (const RepresentationBreakdown& e) {
    CHECK(e.index() == first);
  }
}

TEST_CASE("commutator residuals") {
  const FockRep two = build_fock(DeformationParams::symmetric(0.5, 0.5), 2);
  CHECK(commutator_residuals(two).na == 0.0);
  for (double q : {0.3, 0.5, 0.7, 0.9, 0.99})
    for (double mu : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      CAPTURE(q); CAPTURE(mu);
      CHECK(commutator_residuals(build_fock(DeformationParams::symmetric(q, mu), 64)).max() <= 1e-12);
    }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uq(0.4, 1.6), um(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const auto p = DeformationParams::symmetric(uq(rng), um(rng));
    CHECK(commutator_residuals(build_fock(p, 64)).max() <= 1e-12);
  }
}

TEST_CASE("commutators from an independent dense construction") {
  const auto p = DeformationParams::symmetric(0.7, 0.3);
  const std::size_t d = 12;
  const FockRep r = build_fock(p, d);
  const Matrix a = r.annihilation();
  const Matrix ad = r.creation();
  const Matrix comm = a * ad - ad * a;
  for (std::size_t n = 0; n + 1 < d; ++n) {
    const double expect = qnumber(p, n + 1.0) - qnumber(p, static_cast<double>(n));
    CHECK(comm(n, n) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(a(n, n + 1) == doctest::Approx(std::sqrt(qnumber(p, n + 1.0))).epsilon(1e-15));
  }
}

TEST_CASE("structure function") {
  const auto one = [](long) { return 1.0; };
  for (long n = 0; n <= 20; ++n) CHECK(structure_function_general(one, one, n) == doctest::Approx(n));
  const auto p = DeformationParams::symmetric(0.6, 0.4);
  const auto F = [](long) { return 0.6; };
  const auto G = [&](long k) { return 0.4 * std::pow(0.6, -k + 1.0) + 0.6 * std::pow(0.6, k - 1.0); };
  bool differs = false;
  for (long n = 0; n < 30; ++n) {
    const double lhs = structure_function_general(F, G, n + 1) - F(n) * structure_function_general(F, G, n);
    CHECK(lhs == doctest::Approx(G(n)).epsilon(1e-12));
    if (std::fabs(structure_function_general(F, G, n) - qnumber(p, n)) > 1e-6) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("fock monomial normalisation") {
  const auto p = DeformationParams::symmetric(0.5, 0.5);
  const PowerSeries m = PowerSeries::fock_monomial(p, 2, 4);
  CHECK(m[2] == doctest::Approx(1.0 / std::sqrt(2.5)));
  CHECK(m[0] == 0.0);
}

TEST_CASE("scaling operator") {
  const PowerSeries x2 = PowerSeries::monomial(2, 3);
  CHECK(scale_op(x2, 0.5, 0.0)[2] == 1.0);
  CHECK(scale_op(x2, 0.5, 1.0)[2] == 0.25);
  CHECK(scale_op(x2, 0.5, -1.0)[2] == 4.0);
}

}
