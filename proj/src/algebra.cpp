#include "qtamm/algebra.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qtamm/errors.hpp"
#include "qtamm/kernels.hpp"

namespace qtamm {

DeformationParams DeformationParams::symmetric(double q, double mu) {
  return normalized_with(q, mu, -1.0, 1.0, 1.0, -1.0);
}

DeformationParams DeformationParams::normalized_with(double q, double mu, double alpha,
                                                     double beta, double gamma, double delta) {
  DeformationParams p;
  p.q = q;
  p.mu = mu;
  p.eta = 1.0 - mu;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.delta = delta;
  p.normalized = true;
  return p;
}

DeformationParams DeformationParams::reflected() const {
  DeformationParams p = *this;
  p.mu = eta;
  p.eta = mu;
  return p;
}

void DeformationParams::validate() const {
  const double fields[] = {q, mu, eta, alpha, beta, gamma, delta};
  for (double v : fields) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidParams, "non-finite parameter");
  }
  if (!(q > 0.0)) throw Error(ErrorKind::InvalidParams, "q must be positive");
  if (normalized && std::fabs(mu + eta - 1.0) > 1e-14 * std::fmax(1.0, std::fmax(std::fabs(mu), std::fabs(eta)))) {
    throw Error(ErrorKind::InvalidParams, "normalized parameters require mu + eta = 1");
  }
  if (alpha == gamma) {
    throw Error(ErrorKind::DegenerateExponents, "alpha must differ from gamma");
  }
}

double qnumber(const DeformationParams& p, double n) { return qnumber_as<double>(p, n); }

double qfactorial(const DeformationParams& p, long n, bool strict) {
  double out = 1.0;
  for (long k = 1; k <= n; ++k) {
    const double f = qnumber(p, static_cast<double>(k));
    if (strict && f < 0.0) {
      throw Error(ErrorKind::NegativeFactor,
                  "negative factor {" + std::to_string(k) + "} in deformed factorial");
    }
    out *= f;
  }
  return out;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::AllN: return "AllN";
    case Regime::TypeI: return "TypeI";
    case Regime::TypeII: return "TypeII";
    case Regime::TypeIII: return "TypeIII";
    case Regime::TypeIV: return "TypeIV";
    case Regime::Empty: return "Empty";
  }
  return "?";
}

namespace {

// Snap to an integer when the bound is one up to rounding; the equality
// case {n} = 0 is admissible.
constexpr double kBoundSnap = 1e-9;

long floor_snap(double x) {
  const double r = std::round(x);
  return std::fabs(x - r) < kBoundSnap ? static_cast<long>(r) : static_cast<long>(std::floor(x));
}

long ceil_snap(double x) {
  const double r = std::round(x);
  return std::fabs(x - r) < kBoundSnap ? static_cast<long>(r) : static_cast<long>(std::ceil(x));
}

}  // namespace

PositivityReport classify_positivity(const DeformationParams& p) {
  if (p.alpha == p.gamma) {
    throw Error(ErrorKind::DegenerateExponents, "alpha must differ from gamma");
  }
  PositivityReport rep;
  const auto all_n = [&] {
    rep.regime = Regime::AllN;
    rep.admissible = IntRange{0, std::nullopt};
    rep.fock_valid_from_zero = true;
    return rep;
  };
  const auto empty = [&] {
    rep.regime = Regime::Empty;
    rep.admissible = IntRange{1, 0};
    rep.fock_valid_from_zero = false;
    return rep;
  };

  if (p.q == 1.0) return (p.mu + p.eta >= 0.0) ? all_n() : empty();
  if (p.mu >= 0.0 && p.eta >= 0.0) return all_n();
  if (p.mu < 0.0 && p.eta < 0.0) return empty();

  // Positive term c_pos q^(a n + a0) must dominate |c_neg| q^(b n + b0).
  const bool mu_positive = p.mu > 0.0;
  const double c_pos = mu_positive ? p.mu : p.eta;
  const double c_neg = mu_positive ? -p.eta : -p.mu;
  const double a = mu_positive ? p.alpha : p.gamma;
  const double a0 = mu_positive ? p.beta : p.delta;
  const double b = mu_positive ? p.gamma : p.alpha;
  const double b0 = mu_positive ? p.delta : p.beta;

  const double log_q_ratio = std::log(c_neg / c_pos) / std::log(p.q);
  const double bound = (b0 - a0 + log_q_ratio) / (a - b);
  const bool q_above_one = p.q > 1.0;
  const bool gap_positive = a > b;

  if (q_above_one) {
    rep.regime = gap_positive ? Regime::TypeI : Regime::TypeII;
  } else {
    rep.regime = gap_positive ? Regime::TypeIII : Regime::TypeIV;
  }
  rep.bound = bound;
  rep.lower_bound = (q_above_one == gap_positive);
  if (rep.lower_bound) {
    rep.admissible = IntRange{std::max(0L, ceil_snap(bound)), std::nullopt};
  } else {
    const long hi = floor_snap(bound);
    rep.admissible = hi < 0 ? IntRange{1, 0} : IntRange{0, hi};
  }
  rep.fock_valid_from_zero = rep.admissible.contains(1);
  return rep;
}

FockRep::FockRep(DeformationParams params, std::vector<double> numbers, bool closed)
    : params_(params), numbers_(std::move(numbers)), closed_(closed) {
  const std::size_t d = dim();
  ladder_.resize(d > 0 ? d - 1 : 0);
  for (std::size_t n = 0; n + 1 < d; ++n) ladder_[n] = std::sqrt(numbers_[n + 1]);
}

Matrix FockRep::annihilation() const {
  Matrix a(dim(), dim());
  for (std::size_t n = 0; n < ladder_.size(); ++n) a(n, n + 1) = ladder_[n];
  return a;
}

Matrix FockRep::creation() const { return annihilation().transposed(); }

Matrix FockRep::number() const {
  Matrix m(dim(), dim());
  for (std::size_t n = 0; n < dim(); ++n) m(n, n) = static_cast<double>(n);
  return m;
}

void FockRep::lower(std::span<const double> x, std::span<double> out) const {
  const std::size_t d = dim();
  if (d == 0) return;
  kernels::multiply(ladder_, x.subspan(1, d - 1), out.first(d - 1));
  out[d - 1] = 0.0;
}

void FockRep::raise(std::span<const double> x, std::span<double> out) const {
  const std::size_t d = dim();
  if (d == 0) return;
  out[0] = 0.0;
  kernels::multiply(ladder_, x.first(d - 1), out.subspan(1, d - 1));
}

namespace {

double term_scale(const DeformationParams& p, double n) {
  return std::fabs(n) * (std::fabs(p.mu) * std::pow(p.q, p.alpha * n + p.beta) +
                         std::fabs(p.eta) * std::pow(p.q, p.gamma * n + p.delta));
}

// Rounding can leave a boundary zero ({n} = 0 exactly) slightly off zero.
double snap_zero(const DeformationParams& p, double n, double value) {
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() * term_scale(p, n);
  return std::fabs(value) <= tol ? 0.0 : value;
}

}  // namespace

FockRep build_fock(const DeformationParams& p, std::size_t dim) {
  p.validate();
  if (dim == 0) throw Error(ErrorKind::InvalidParams, "Fock dimension must be positive");
  std::vector<double> numbers(dim + 1);
  for (std::size_t n = 0; n <= dim; ++n) {
    const double x = static_cast<double>(n);
    numbers[n] = snap_zero(p, x, qnumber(p, x));
    if (n >= 1 && n < dim && numbers[n] < 0.0) {
      throw RepresentationBreakdown(static_cast<long>(n), numbers[n]);
    }
  }
  const bool closed = numbers[dim] == 0.0;
  return FockRep(p, std::move(numbers), closed);
}

FockRep fock_from_numbers(const DeformationParams& p, std::vector<double> numbers) {
  if (numbers.size() < 2) throw Error(ErrorKind::InvalidParams, "need {0}..{dim} with dim >= 1");
  const std::size_t dim = numbers.size() - 1;
  for (std::size_t n = 1; n < dim; ++n) {
    if (numbers[n] < 0.0) throw RepresentationBreakdown(static_cast<long>(n), numbers[n]);
  }
  const bool closed = numbers[dim] == 0.0;
  return FockRep(p, std::move(numbers), closed);
}

namespace {

Matrix abs_of(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = std::fabs(m(i, j));
  return out;
}

// max_ij |residual_ij| / max(1, scale_ij) over rows [0, rows).
double scaled_max(const Matrix& residual, const Matrix& scale, std::size_t rows) {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < residual.cols(); ++j)
      worst = std::fmax(worst, std::fabs(residual(i, j)) / std::fmax(1.0, scale(i, j)));
  return worst;
}

}  // namespace

CommutatorResiduals commutator_residuals(const FockRep& rep) {
  const std::size_t d = rep.dim();
  const Matrix a = rep.annihilation();
  const Matrix ad = rep.creation();
  const Matrix n = rep.number();
  const auto& num = rep.numbers();

  std::vector<double> gap(d);
  std::vector<double> gap_mag(d);
  for (std::size_t k = 0; k < d; ++k) {
    gap[k] = num[k + 1] - num[k];
    gap_mag[k] = std::fabs(num[k + 1]) + std::fabs(num[k]);
  }

  const Matrix abs_a = abs_of(a);
  const Matrix abs_ad = abs_of(ad);

  CommutatorResiduals out;
  const Matrix c1 = a * ad - ad * a - Matrix::diagonal(gap);
  const Matrix s1 = abs_a * abs_ad + abs_ad * abs_a + Matrix::diagonal(gap_mag);
  const std::size_t rows = rep.closed() ? d : (d > 0 ? d - 1 : 0);
  out.aadag = scaled_max(c1, s1, rows);

  const Matrix s2 = n * abs_a + abs_a * n + abs_a;
  out.na = scaled_max(n * a - a * n + a, s2, d);
  const Matrix s3 = n * abs_ad + abs_ad * n + abs_ad;
  out.nadag = scaled_max(n * ad - ad * n - ad, s3, d);
  return out;
}

double structure_function_general(const std::function<double(long)>& F,
                                  const std::function<double(long)>& G, long n) {
  double sum = 0.0;
  double suffix = 1.0;  // F(k+1) ... F(n-1)
  for (long k = n - 1; k >= 0; --k) {
    sum += G(k) * suffix;
    suffix *= F(k);
  }
  return sum;
}

}  // namespace qtamm
