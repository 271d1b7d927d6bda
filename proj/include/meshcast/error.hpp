#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace meshcast {

enum class ErrorCode {
  InvalidArgument,
  Unsatisfiable,
  UnreachableReceiver,
  Uncoverable,
  MissingSi,
  ContractViolation,
  NoPath,
  ParseError,
  ValidationError,
  SchemaMismatch,
  EmptyInput,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto a diagnostic without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace meshcast
