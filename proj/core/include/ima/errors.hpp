#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ima {

enum class ErrorKind {
  kRankDeficient,
  kNonFinite,
  kDomainError,
  kZeroColumn,
  kOutOfDomain,
  kOnKnot,
  kNearPole,
  kSupportError,
  kNonPositiveDensity,
  kNormalizationError,
  kOutOfTable,
  kDimensionMismatch,
  kDegenerateMap,
  kTrivialRotation,
  kNonMonotone,
  kValidation,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` carries the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// True for failures caused by numerics rather than bad input.
bool is_numerical_failure(ErrorKind kind);

}  // namespace ima
