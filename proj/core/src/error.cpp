#include "patchladder/error.hpp"

namespace patchladder {

namespace {

std::string compose(ErrorCode code, const std::string& subject, std::size_t line,
                    const std::string& detail) {
  std::string msg = to_string(code);
  if (!subject.empty()) msg += "(" + subject + ")";
  if (line != 0) msg += " at line " + std::to_string(line);
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingDimension: return "MissingDimension";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::NonPositiveDimension: return "NonPositiveDimension";
    case ErrorCode::NonPositiveElement: return "NonPositiveElement";
    case ErrorCode::NonPositiveFrequency: return "NonPositiveFrequency";
    case ErrorCode::UnknownTopology: return "UnknownTopology";
    case ErrorCode::BadValueSuffix: return "BadValueSuffix";
    case ErrorCode::DuplicatePort: return "DuplicatePort";
    case ErrorCode::MissingPort: return "MissingPort";
    case ErrorCode::DuplicateSectionName: return "DuplicateSectionName";
    case ErrorCode::MissingRequiredParameter: return "MissingRequiredParameter";
    case ErrorCode::ForbiddenParameter: return "ForbiddenParameter";
    case ErrorCode::InvalidParameterValue: return "InvalidParameterValue";
    case ErrorCode::UnknownSection: return "UnknownSection";
    case ErrorCode::EmptyCascade: return "EmptyCascade";
    case ErrorCode::SingularTermination: return "SingularTermination";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidTrace: return "InvalidTrace";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::BandOutsideTrace: return "BandOutsideTrace";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::NoFreeParameters: return "NoFreeParameters";
    case ErrorCode::BadOptionLine: return "BadOptionLine";
    case ErrorCode::NonMonotoneFrequency: return "NonMonotoneFrequency";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyCascade:
    case ErrorCode::SingularTermination:
    case ErrorCode::DegenerateDenominator:
    case ErrorCode::OutOfRange:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, std::string subject, std::size_t line,
             const std::string& detail)
    : std::runtime_error(compose(code, subject, line, detail)),
      code_(code),
      subject_(std::move(subject)),
      line_(line) {}

}  // namespace patchladder
