#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcdual {

enum class ErrorCode {
  NonPositiveMass,
  NonPositiveKappa,
  NegativeOmega,
  CouplingTooStrong,
  NonPositiveN,
  NonNegativeEnergy,
  EpsilonBelowMass,
  MassNonPositive,
  ImaginaryFrequency,
  NonPositiveS,
  InconsistentMap,
  UnmatchedHydrogenLevel,
  InvalidGrid,
  DomainNotCovered,
  OriginOnGrid,
  ZeroField,
  CountExceedsDimension,
  ConvergenceFailure,
  NegativeDiscriminant,
  MaxIterExceeded,
  DegenerateEnergy,
  NotRelativistic,
  InvalidArgument,
  MalformedFile,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library is reported through this exception; `code()`
/// is stable and is what the command-line front end prints.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lcdual
