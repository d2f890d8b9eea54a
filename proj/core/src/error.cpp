#include "aqc/error.hpp"

namespace aqc {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorCode::UnderflowRisk: return "UnderflowRisk";
    case ErrorCode::TabulatedOutOfRange: return "TabulatedOutOfRange";
    case ErrorCode::EigensolverFailure: return "EigensolverFailure";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::DegenerateRatio: return "DegenerateRatio";
    case ErrorCode::UndefinedQ: return "UndefinedQ";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::IOFailure: return "IOFailure";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  return 2 + static_cast<int>(code);
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

}  // namespace aqc
