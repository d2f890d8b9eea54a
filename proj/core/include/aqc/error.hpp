#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aqc {

enum class ErrorCode {
  ConfigInvalid,
  TruncationInsufficient,
  UnderflowRisk,
  TabulatedOutOfRange,
  EigensolverFailure,
  ConfigMismatch,
  DegenerateRatio,
  UndefinedQ,
  GridTooSmall,
  IOFailure,
};

std::string_view error_name(ErrorCode code);

// Distinct process exit status per category, used by the CLI.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace aqc
