#pragma once

// Data-parallel inner loops used by the series, matrix and state code.
// Every kernel has a scalar reference implementation; an AVX2/FMA variant
// is selected at runtime when the CPU supports it. Set QTAMM_SIMD=scalar
// to force the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace qtamm::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* a, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scale)(double alpha, double* x, std::size_t n);
  void (*multiply)(const double* a, const double* b, double* out, std::size_t n);
  void (*geometric_scale)(double* x, double ratio, std::size_t n);
};

bool isa_supported(Isa isa);
std::string_view isa_name(Isa isa);

/// Table for a specific ISA; throws std::invalid_argument when unsupported.
const KernelTable& table_for(Isa isa);

/// Table chosen at first use from CPU features and QTAMM_SIMD.
const KernelTable& active();

double dot(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> a);
double max_abs(std::span<const double> a);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
/// x[n] *= ratio^n
void geometric_scale(std::span<double> x, double ratio);

namespace scalar {
const KernelTable& table();
}
#if defined(QTAMM_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif

}  // namespace qtamm::kernels
