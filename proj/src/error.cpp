#include "qcorr/error.hpp"

namespace qcorr {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::OptimizerFailure: return "OptimizerFailure";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoBranch: return "NoBranch";
    case ErrorCode::PatternUnsupported: return "PatternUnsupported";
    case ErrorCode::ZeroMeasure: return "ZeroMeasure";
    case ErrorCode::AssertionFailure: return "AssertionFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace qcorr
