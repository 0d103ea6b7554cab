#ifndef DIRACRED_CORE_ERRORS_HPP
#define DIRACRED_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace diracred {

enum class ErrorKind {
    SyntaxError,
    UnknownCoordinate,
    DivisionByZeroPolynomial,
    ChartMismatch,
    ZeroDenominatorAfterSubstitution,
    NonNormalizedWeight,
    NonRationalIntegral,
    DenominatorVanishes,
    NotASubbundle,
    GeneratorMismatch,
    NotInvariant,
    NotIsotropic,
    RankDeficient,
    NotDescending,
    NotExpressibleAtBound,
    NotTangentToStratum,
    PresentationMismatch,
    RankDeficientOnStratum,
    MembershipFailure,
    UnknownScene,
    ParseError,
    ValidationError,
    InvalidArgument,
    Internal,
};

const char* error_kind_name(ErrorKind k);

/// Core exception type. `pos` is a 0-based offset into the offending input
/// for parser errors, -1 otherwise.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, long pos = -1)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind), pos_(pos) {}

    ErrorKind kind() const { return kind_; }
    long position() const { return pos_; }

private:
    ErrorKind kind_;
    long pos_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownCoordinate: return "UnknownCoordinate";
        case ErrorKind::DivisionByZeroPolynomial: return "DivisionByZeroPolynomial";
        case ErrorKind::ChartMismatch: return "ChartMismatch";
        case ErrorKind::ZeroDenominatorAfterSubstitution: return "ZeroDenominatorAfterSubstitution";
        case ErrorKind::NonNormalizedWeight: return "NonNormalizedWeight";
        case ErrorKind::NonRationalIntegral: return "NonRationalIntegral";
        case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
        case ErrorKind::NotASubbundle: return "NotASubbundle";
        case ErrorKind::GeneratorMismatch: return "GeneratorMismatch";
        case ErrorKind::NotInvariant: return "NotInvariant";
        case ErrorKind::NotIsotropic: return "NotIsotropic";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::NotDescending: return "NotDescending";
        case ErrorKind::NotExpressibleAtBound: return "NotExpressibleAtBound";
        case ErrorKind::NotTangentToStratum: return "NotTangentToStratum";
        case ErrorKind::PresentationMismatch: return "PresentationMismatch";
        case ErrorKind::RankDeficientOnStratum: return "RankDeficientOnStratum";
        case ErrorKind::MembershipFailure: return "MembershipFailure";
        case ErrorKind::UnknownScene: return "UnknownScene";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::Internal: return "Internal";
    }
    return "Error";
}

} // namespace diracred

#endif
