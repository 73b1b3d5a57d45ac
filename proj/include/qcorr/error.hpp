#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcorr {

enum class ErrorCode {
  NotHermitian,
  NotPSD,
  ConvergenceFailure,
  InvalidPartition,
  NotNormalized,
  ThetaOutOfRange,
  WrongDimension,
  OptimizerFailure,
  InternalInconsistency,
  Unsupported,
  DomainError,
  NoBranch,
  PatternUnsupported,
  ZeroMeasure,
  AssertionFailure,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable error code. Every failure raised by
/// the library is an Error; the C API maps the code to a status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qcorr
