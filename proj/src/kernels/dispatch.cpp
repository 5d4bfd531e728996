#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qtamm/kernels.hpp"

namespace qtamm::kernels {

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(QTAMM_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

const KernelTable& table_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("kernel ISA not supported: " + std::string(isa_name(isa)));
  }
#if defined(QTAMM_HAVE_AVX2)
  if (isa == Isa::Avx2) return avx2::table();
#endif
  return scalar::table();
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("QTAMM_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return scalar::table();
  if (isa_supported(Isa::Avx2)) return table_for(Isa::Avx2);
  return scalar::table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& t = select();
  return t;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

double sum_squares(std::span<const double> a) {
  return active().sum_squares(a.data(), a.size());
}

double max_abs(std::span<const double> a) { return active().max_abs(a.data(), a.size()); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().max_abs_diff(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> x) { active().scale(alpha, x.data(), x.size()); }

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().multiply(a.data(), b.data(), out.data(), a.size());
}

void geometric_scale(std::span<double> x, double ratio) {
  active().geometric_scale(x.data(), ratio, x.size());
}

}  // namespace qtamm::kernels
