#pragma once

// Built-in verification suite. Each module contributes named checks with a
// measured defect and the threshold it is held to; checks that document a
// known limitation are recorded with status Reported and never fail.

#include <string>
#include <vector>

#include "qtamm/finite_dim.hpp"
#include "qtamm/output.hpp"
#include "qtamm/params.hpp"

namespace qtamm {

enum class CheckStatus { Pass, Fail, Reported };

const char* to_string(CheckStatus s);

struct CheckRecord {
  std::string module;
  std::string check;
  double measured = 0.0;
  /// NaN for reported checks.
  double threshold = 0.0;
  CheckStatus status = CheckStatus::Pass;
  /// "double" or "extended" (50-digit oracle).
  std::string oracle = "double";
  std::string note;
};

struct VerifyConfig {
  /// Parameters used by the parameter-specific checks; the grid checks use
  /// fixed grids regardless.
  DeformationParams params = DeformationParams::symmetric(0.5, 0.5);
  FiniteParams finite{0.5, 3};
  /// Adds 50-digit oracle comparisons.
  bool extended = false;
};

/// "core-algebra", "calculus", "spectral", "coherent", "finite-dim",
/// "thermo", "cli".
const std::vector<std::string>& verification_modules();

/// Error(InvalidParams) for an unknown module name.
std::vector<CheckRecord> verify_module(const std::string& module, const VerifyConfig& cfg);

/// suite is a module name or "all".
std::vector<CheckRecord> run_verification(const std::string& suite, const VerifyConfig& cfg);

/// True when QTAMM_PRECISION is set to "extended".
bool extended_precision_requested();

Table verification_table(const std::vector<CheckRecord>& records);

}  // namespace qtamm
