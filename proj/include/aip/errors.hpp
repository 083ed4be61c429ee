#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aip {

enum class ErrorKind {
    NotHermitian,
    NotPsd,
    DimensionMismatch,
    NotIsometric,
    IllDefined,
    SingularResolvent,
    NotContractive,
    DegenerateInput,
    PreconditionViolation,
    InvalidInput,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers what went
/// wrong and `value()` carries the offending number when there is one
/// (an eigenvalue, a residual norm, ...).
class AipError : public std::runtime_error {
public:
    AipError(ErrorKind kind, const std::string& detail,
             std::optional<double> value = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<double> value() const noexcept { return value_; }

private:
    ErrorKind kind_;
    std::optional<double> value_;
};

} // namespace aip
