#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace patchladder {

enum class ErrorCode {
  // geometry files
  MissingDimension,
  NonPositiveValue,
  UnknownKey,
  MalformedLine,
  // element formulas
  NonPositiveDimension,
  NonPositiveElement,
  NonPositiveFrequency,
  // netlist
  UnknownTopology,
  BadValueSuffix,
  DuplicatePort,
  MissingPort,
  DuplicateSectionName,
  MissingRequiredParameter,
  ForbiddenParameter,
  InvalidParameterValue,
  UnknownSection,
  // network engine
  EmptyCascade,
  SingularTermination,
  DegenerateDenominator,
  OutOfRange,
  InvalidGrid,
  InvalidTrace,
  // analysis
  EmptyTrace,
  BandOutsideTrace,
  NoOverlap,
  // fitting
  InvalidBounds,
  NoFreeParameters,
  // touchstone / csv
  BadOptionLine,
  NonMonotoneFrequency,
  MalformedRow,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

/// True for failures of the numerics (singular networks, degenerate
/// denominators) as opposed to malformed input.
bool is_numerical(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable code, the offending name (a
/// dimension, parameter or section) and, for text inputs, a 1-based line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string subject, std::size_t line = 0,
        const std::string& detail = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& subject() const noexcept { return subject_; }
  /// 0 when the error is not tied to a line of text.
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::string subject_;
  std::size_t line_;
};

}  // namespace patchladder
