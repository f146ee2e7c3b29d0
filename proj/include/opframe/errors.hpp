#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opframe {

enum class ErrorKind {
    NotPositive,
    DegenerateDenominator,
    DimensionMismatch,
    MeasureMismatch,
    CountMismatch,
    NotAFrame,
    ZeroK,
    BadParameter,
    IndexOutOfRange,
    ParseError,
    ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code logic) can branch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::MeasureMismatch: return "MeasureMismatch";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::ZeroK: return "ZeroK";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

}  // namespace opframe
