#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qtamm/kernels.hpp"

using namespace qtamm::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar and avx2 kernels agree on every length") {
  if (!isa_supported(Isa::Avx2)) {
    MESSAGE("avx2 not available; equivalence skipped");
    return;
  }
  const KernelTable& s = table_for(Isa::Scalar);
  const KernelTable& v = table_for(Isa::Avx2);
  std::mt19937_64 rng(7);
  for (std::size_t n = 0; n < 70; ++n) {
    CAPTURE(n);
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);
    // reductions are reassociated: bound by n eps times the absolute sum
    double abs_dot = 0.0, abs_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      abs_dot += std::fabs(a[i] * b[i]);
      abs_sq += a[i] * a[i];
    }
    const double eps = 1e-16 * (n + 1);
    CHECK(std::fabs(s.dot(a.data(), b.data(), n) - v.dot(a.data(), b.data(), n)) <= eps * abs_dot);
    CHECK(std::fabs(s.sum_squares(a.data(), n) - v.sum_squares(a.data(), n)) <= eps * abs_sq);
    CHECK(s.max_abs(a.data(), n) == v.max_abs(a.data(), n));
    CHECK(s.max_abs_diff(a.data(), b.data(), n) == v.max_abs_diff(a.data(), b.data(), n));

    auto y1 = b, y2 = b;
    s.axpy(0.37, a.data(), y1.data(), n);
    v.axpy(0.37, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(y1[i] - y2[i]) <= 1e-15 * (std::fabs(y1[i]) + 1.0));

    auto x1 = a, x2 = a;
    s.scale(-1.5, x1.data(), n);
    v.scale(-1.5, x2.data(), n);
    CHECK(x1 == x2);

    std::vector<double> m1(n), m2(n);
    s.multiply(a.data(), b.data(), m1.data(), n);
    v.multiply(a.data(), b.data(), m2.data(), n);
    CHECK(m1 == m2);

    auto g1 = a, g2 = a;
    s.geometric_scale(g1.data(), 0.93, n);
    v.geometric_scale(g2.data(), 0.93, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(g1[i] - g2[i]) <= 1e-14 * std::fabs(g1[i]));
  }
}

TEST_CASE("geometric_scale against pow") {
  std::vector<double> x(40, 1.0);
  geometric_scale(x, 0.5);
  for (std::size_t n = 0; n < x.size(); ++n) CHECK(x[n] == doctest::Approx(std::pow(0.5, n)).epsilon(1e-14));
}

TEST_CASE("active table is one of the known ISAs") {
  const KernelTable& t = active();
  CHECK((t.isa == Isa::Scalar || t.isa == Isa::Avx2));
  CHECK(isa_name(Isa::Scalar) == "scalar");
}

}
