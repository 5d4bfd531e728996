#pragma once

// Deformed numbers, factorials, positivity regimes and Fock-space
// representations of the generalized q-deformed Tamm-Dancoff algebra
//
//   a a^+ - a^+ a = {N+1} - {N},   [N, a^+] = a^+,   [N, a] = -a.

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "qtamm/matrix.hpp"
#include "qtamm/params.hpp"

namespace qtamm {

/// {n} evaluated in an arbitrary floating type. Used directly by the
/// extended-precision verification path; `qnumber` is the double instance.
template <class Real>
Real qnumber_as(const DeformationParams& p, const Real& n) {
  using std::pow;
  if (p.q == 1.0) {
    if (p.normalized) return n;
    return n * (Real(p.mu) + Real(p.eta));
  }
  const Real q(p.q);
  return n * (Real(p.mu) * pow(q, Real(p.alpha) * n + Real(p.beta)) +
              Real(p.eta) * pow(q, Real(p.gamma) * n + Real(p.delta)));
}

/// n (mu q^(alpha n + beta) + eta q^(gamma n + delta)). Total in n: negative
/// arguments are needed for the {-k} identities.
double qnumber(const DeformationParams& p, double n);

/// {n}! = {1}{2}...{n}, {0}! = 1. In strict mode a negative factor raises
/// Error(NegativeFactor).
double qfactorial(const DeformationParams& p, long n, bool strict = true);

template <class Real>
Real qfactorial_as(const DeformationParams& p, long n) {
  Real out(1);
  for (long k = 1; k <= n; ++k) out *= qnumber_as<Real>(p, Real(k));
  return out;
}

enum class Regime { AllN, TypeI, TypeII, TypeIII, TypeIV, Empty };

const char* to_string(Regime r);

/// Integer interval [lo, hi]; hi == nullopt means unbounded above.
struct IntRange {
  long lo = 0;
  std::optional<long> hi;

  bool empty() const { return hi && *hi < lo; }
  bool contains(long n) const { return n >= lo && (!hi || n <= *hi); }
  bool bounded() const { return hi.has_value(); }
};

/// Where {n} >= 0 holds. n = 0 is always admissible ({0} = 0) and is not
/// reflected in `admissible`, which describes the inequality itself.
struct PositivityReport {
  Regime regime = Regime::AllN;
  std::optional<double> bound;
  /// true when the inequality reads n >= bound, false for n <= bound.
  bool lower_bound = true;
  IntRange admissible;
  /// n = 1 is admissible, i.e. a nontrivial Fock space grows from the vacuum.
  bool fock_valid_from_zero = true;
};

/// Solves {n} >= 0 for n. With both weights positive every n is admissible;
/// with one negative weight the answer is one of the four half-line types,
/// labelled by (q > 1 ?, sign of the exponent gap of the positive term).
PositivityReport classify_positivity(const DeformationParams& p);

/// Truncated (or exactly finite) Fock representation.
///
/// Matrices use the <m|X|n> convention: a has entries a(n-1, n) = ladder[n-1]
/// on the superdiagonal, a^+ is its transpose.
class FockRep {
 public:
  FockRep(DeformationParams params, std::vector<double> numbers, bool closed);

  std::size_t dim() const { return numbers_.size() - 1; }
  const DeformationParams& params() const { return params_; }
  /// ladder[n] = sqrt({n+1}), n = 0 .. dim-2.
  const std::vector<double>& ladder() const { return ladder_; }
  /// {0}, {1}, ..., {dim}; the last entry is used by the top commutator row.
  const std::vector<double>& numbers() const { return numbers_; }
  /// True when {dim} = 0, i.e. the representation is exactly finite.
  bool closed() const { return closed_; }

  Matrix annihilation() const;
  Matrix creation() const;
  Matrix number() const;

  /// out = a x, length dim.
  void lower(std::span<const double> x, std::span<double> out) const;
  /// out = a^+ x, length dim (the component leaving the space is dropped).
  void raise(std::span<const double> x, std::span<double> out) const;

 private:
  DeformationParams params_;
  std::vector<double> numbers_;
  std::vector<double> ladder_;
  bool closed_;
};

/// Fock representation of dimension `dim`. Raises RepresentationBreakdown
/// at the first n in 1..dim-1 with {n} < 0.
FockRep build_fock(const DeformationParams& p, std::size_t dim);

/// Builds a representation from precomputed deformed numbers {0}..{dim}.
/// Used by the finite-dimensional specialization.
FockRep fock_from_numbers(const DeformationParams& p, std::vector<double> numbers);

struct CommutatorResiduals {
  double aadag = 0.0;  ///< max |a a^+ - a^+ a - diag({n+1} - {n})|
  double na = 0.0;     ///< max |[N, a] + a|
  double nadag = 0.0;  ///< max |[N, a^+] - a^+|

  double max() const { return std::fmax(aadag, std::fmax(na, nadag)); }
};

/// Dense-matrix check of the defining relations. Each entry is measured
/// relative to max(1, magnitude of the terms that produce it), since {n}
/// grows like q^(-n) in the symmetric family. The top row of the first
/// relation is excluded unless the representation is closed: truncation
/// removes the a a^+ contribution of the highest state.
CommutatorResiduals commutator_residuals(const FockRep& rep);

/// phi(n) = [F(n-1)]! sum_{k<n} G(k) / [F(k)]!, evaluated as
/// sum_k G(k) F(k+1)...F(n-1) so that zeros of F do not divide.
double structure_function_general(const std::function<double(long)>& F,
                                  const std::function<double(long)>& G, long n);

}  // namespace qtamm
