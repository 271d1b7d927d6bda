#include "meshcast/error.hpp"

namespace meshcast {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::Unsatisfiable: return "UNSATISFIABLE";
    case ErrorCode::UnreachableReceiver: return "UNREACHABLE_RECEIVER";
    case ErrorCode::Uncoverable: return "UNCOVERABLE";
    case ErrorCode::MissingSi: return "MISSING_SI";
    case ErrorCode::ContractViolation: return "CONTRACT_VIOLATION";
    case ErrorCode::NoPath: return "NO_PATH";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::ValidationError: return "VALIDATION_ERROR";
    case ErrorCode::SchemaMismatch: return "SCHEMA_MISMATCH";
    case ErrorCode::EmptyInput: return "EMPTY_INPUT";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace meshcast
