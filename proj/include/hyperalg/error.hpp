#ifndef HYPERALG_ERROR_HPP
#define HYPERALG_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperalg {

enum class ErrorCode {
    NotPrime,
    Reducible,
    OrderTooLarge,
    DivisionByZero,
    FieldMismatch,
    TooManyVectors,
    BasisTooLarge,
    DimensionMismatch,
    ShapeMismatch,
    ParseError,
    InfeasibleSize,
    BadInputs,
    SearchTooLarge,
    InsufficientPoints,
    GuardViolation,
    IoError,
    ConfigError,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::Reducible: return "Reducible";
        case ErrorCode::OrderTooLarge: return "OrderTooLarge";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::TooManyVectors: return "TooManyVectors";
        case ErrorCode::BasisTooLarge: return "BasisTooLarge";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InfeasibleSize: return "InfeasibleSize";
        case ErrorCode::BadInputs: return "BadInputs";
        case ErrorCode::SearchTooLarge: return "SearchTooLarge";
        case ErrorCode::InsufficientPoints: return "InsufficientPoints";
        case ErrorCode::GuardViolation: return "GuardViolation";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace hyperalg

#endif // HYPERALG_ERROR_HPP
