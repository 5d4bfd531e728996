#include "qtamm/errors.hpp"

namespace qtamm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DegenerateExponents: return "DegenerateExponents";
    case ErrorKind::NegativeFactor: return "NegativeFactor";
    case ErrorKind::RepresentationBreakdown: return "RepresentationBreakdown";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BelowDomain: return "BelowDomain";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::ZeroPhi: return "ZeroPhi";
    case ErrorKind::ExpansionDivergence: return "ExpansionDivergence";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NonIntegrableSingularity: return "NonIntegrableSingularity";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ExpansionDivergence:
    case ErrorKind::NoConvergence:
    case ErrorKind::QuadratureFailure:
    case ErrorKind::NonIntegrableSingularity:
      return true;
    default:
      return false;
  }
}

RepresentationBreakdown::RepresentationBreakdown(long index, double value)
    : Error(ErrorKind::RepresentationBreakdown,
            "representation breaks down: {" + std::to_string(index) +
                "} = " + std::to_string(value) + " < 0"),
      index_(index),
      value_(value) {}

ZeroDenominator::ZeroDenominator(long index)
    : Error(ErrorKind::ZeroDenominator,
            "zero deformed-number denominator at n = " + std::to_string(index)),
      index_(index) {}

}  // namespace qtamm
