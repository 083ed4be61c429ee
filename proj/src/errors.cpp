#include "aip/errors.hpp"

namespace aip {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotIsometric: return "NotIsometric";
    case ErrorKind::IllDefined: return "IllDefined";
    case ErrorKind::SingularResolvent: return "SingularResolvent";
    case ErrorKind::NotContractive: return "NotContractive";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

AipError::AipError(ErrorKind kind, const std::string& detail, std::optional<double> value)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail)
    , kind_(kind)
    , value_(value)
{
}

} // namespace aip
