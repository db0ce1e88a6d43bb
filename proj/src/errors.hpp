#pragma once

#include <stdexcept>
#include <string>

namespace bcn {

enum class ErrorCode {
    None = 0,
    SyntaxError,
    UnknownIdentifier,
    SchemaError,
    ConflictingDefinition,
    DimensionMismatch,
    IndexOutOfRange,
    NotLogicalResult,
    ArityMismatch,
    SearchSpaceTooLarge,
    BudgetExceeded,
    Unclassifiable,
    InconsistentTrace,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* errorCodeName(ErrorCode c) {
    switch (c) {
        case ErrorCode::None: return "none";
        case ErrorCode::SyntaxError: return "syntax_error";
        case ErrorCode::UnknownIdentifier: return "unknown_identifier";
        case ErrorCode::SchemaError: return "schema_error";
        case ErrorCode::ConflictingDefinition: return "conflicting_definition";
        case ErrorCode::DimensionMismatch: return "dimension_mismatch";
        case ErrorCode::IndexOutOfRange: return "index_out_of_range";
        case ErrorCode::NotLogicalResult: return "not_logical_result";
        case ErrorCode::ArityMismatch: return "arity_mismatch";
        case ErrorCode::SearchSpaceTooLarge: return "search_space_too_large";
        case ErrorCode::BudgetExceeded: return "budget_exceeded";
        case ErrorCode::Unclassifiable: return "unclassifiable";
        case ErrorCode::InconsistentTrace: return "inconsistent_trace";
        case ErrorCode::IoError: return "io_error";
    }
    return "unknown";
}

} // namespace bcn
