#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qtamm {

/// Failure categories. The CLI maps Domain-class kinds to exit status 1
/// and Numerical-class kinds to exit status 2.
enum class ErrorKind {
  InvalidParams,
  DegenerateExponents,
  NegativeFactor,
  RepresentationBreakdown,
  DomainError,
  BelowDomain,
  ZeroDenominator,
  ZeroPhi,
  ExpansionDivergence,
  NoConvergence,
  QuadratureFailure,
  NonIntegrableSingularity,
};

std::string_view to_string(ErrorKind kind);
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by build_fock and friends; carries the first index with {n} < 0.
class RepresentationBreakdown : public Error {
 public:
  RepresentationBreakdown(long index, double value);
  long index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  long index_;
  double value_;
};

class ZeroDenominator : public Error {
 public:
  explicit ZeroDenominator(long index);
  long index() const noexcept { return index_; }

 private:
  long index_;
};

}  // namespace qtamm
