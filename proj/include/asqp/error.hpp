#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace asqp {

enum class ErrorCode {
  InvalidMatrix,
  InvalidInput,
  NoActiveRows,
  NotPositiveDefinite,
  InfeasibleStart,
  MissingStart,
  RankDeficientWorkingSet,
  EmptyNullSpace,
  OracleInconclusive,
  InvalidGeneratorSpec,
  MalformedProblemFile,
  MalformedCsv,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable error code. Every failure raised by
/// the library is one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace asqp
