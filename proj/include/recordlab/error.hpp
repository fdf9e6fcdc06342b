#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace recordlab {

enum class ErrorKind {
  InvalidArgument,
  NotPositiveDefinite,
  EmptyPartition,
  DimensionCap,
  DegenerateNormalization,
  RankDeficient,
  AcceptanceTooLow,
  DegenerateCorrelation,
  InvalidGamma,
  InvalidTimes,
  TailNotConverged,
  AllZeroCoefficients,
  InvalidDeltaMatrix,
  MissingDelta,
  SubsetExplosion,
  InsufficientExceedances,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Numerical failures (TailNotConverged) map to CLI exit code 3, everything
// else is a validation failure (exit code 2).
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) raise(kind, message);
}

}  // namespace recordlab
