#include "ima/errors.hpp"

namespace ima {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRankDeficient: return "RankDeficient";
    case ErrorKind::kNonFinite: return "NonFinite";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kZeroColumn: return "ZeroColumn";
    case ErrorKind::kOutOfDomain: return "OutOfDomain";
    case ErrorKind::kOnKnot: return "OnKnot";
    case ErrorKind::kNearPole: return "NearPole";
    case ErrorKind::kSupportError: return "SupportError";
    case ErrorKind::kNonPositiveDensity: return "NonPositiveDensity";
    case ErrorKind::kNormalizationError: return "NormalizationError";
    case ErrorKind::kOutOfTable: return "OutOfTable";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kDegenerateMap: return "DegenerateMap";
    case ErrorKind::kTrivialRotation: return "TrivialRotation";
    case ErrorKind::kNonMonotone: return "NonMonotone";
    case ErrorKind::kValidation: return "Validation";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

bool is_numerical_failure(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRankDeficient:
    case ErrorKind::kNonFinite:
    case ErrorKind::kZeroColumn:
    case ErrorKind::kNormalizationError:
    case ErrorKind::kDegenerateMap:
      return true;
    default:
      return false;
  }
}

}  // namespace ima
