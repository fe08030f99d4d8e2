#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtq {

enum class ErrorCode {
    DomainError,
    NotPolynomial,
    InternalIntegralityViolation,
    BudgetExceeded,
    UnknownIdentity,
    ArityMismatch,
    NonInvertibleConstantTerm,
    NonzeroConstantTerm,
    ConstantTermNotOne,
    NotSymmetric,
    IntegralityFailure,
    ZeroDimVector,
    NotSymmetricOnSlope,
    ZeroFraming,
    MissingCount,
    MalformedRelation,
    NotPolynomialCount,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotPolynomial: return "NotPolynomial";
    case ErrorCode::InternalIntegralityViolation: return "InternalIntegralityViolation";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnknownIdentity: return "UnknownIdentity";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NonInvertibleConstantTerm: return "NonInvertibleConstantTerm";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::ConstantTermNotOne: return "ConstantTermNotOne";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::IntegralityFailure: return "IntegralityFailure";
    case ErrorCode::ZeroDimVector: return "ZeroDimVector";
    case ErrorCode::NotSymmetricOnSlope: return "NotSymmetricOnSlope";
    case ErrorCode::ZeroFraming: return "ZeroFraming";
    case ErrorCode::MissingCount: return "MissingCount";
    case ErrorCode::MalformedRelation: return "MalformedRelation";
    case ErrorCode::NotPolynomialCount: return "NotPolynomialCount";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a stable code; the CLI maps
/// codes to exit statuses.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace dtq
