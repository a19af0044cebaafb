#pragma once

#include <stdexcept>
#include <string>

namespace linext {

/// Reason codes for precondition and input violations. Partial arithmetic
/// (an illegal extended sum) is not an error code: add() reports it through
/// its return value so callers can branch without exception machinery.
enum class Errc {
    DimensionMismatch,
    ZeroVector,
    NotOrthogonal,
    TailNotOrthogonal,
    TooDeep,
    DependentInput,
    NoSupport,
    ContainsOrigin,
    PreconditionViolated,
    EmptyPolytope,
    UnknownLabel,
    DuplicateLabel,
    UnknownPred,
    BadDistribution,
    BadInterval,
    NotMonotone,
    NotRegular,
    NotProper,
    NotFiniteAtPoint,
    PredOutsideDomain,
    SelectorUnavailable,
    AnchorOutsideDomain,
    NonBinary,
    ParseError,
    UnknownName,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::ZeroVector: return "ZeroVector";
        case Errc::NotOrthogonal: return "NotOrthogonal";
        case Errc::TailNotOrthogonal: return "TailNotOrthogonal";
        case Errc::TooDeep: return "TooDeep";
        case Errc::DependentInput: return "DependentInput";
        case Errc::NoSupport: return "NoSupport";
        case Errc::ContainsOrigin: return "ContainsOrigin";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::EmptyPolytope: return "EmptyPolytope";
        case Errc::UnknownLabel: return "UnknownLabel";
        case Errc::DuplicateLabel: return "DuplicateLabel";
        case Errc::UnknownPred: return "UnknownPred";
        case Errc::BadDistribution: return "BadDistribution";
        case Errc::BadInterval: return "BadInterval";
        case Errc::NotMonotone: return "NotMonotone";
        case Errc::NotRegular: return "NotRegular";
        case Errc::NotProper: return "NotProper";
        case Errc::NotFiniteAtPoint: return "NotFiniteAtPoint";
        case Errc::PredOutsideDomain: return "PredOutsideDomain";
        case Errc::SelectorUnavailable: return "SelectorUnavailable";
        case Errc::AnchorOutsideDomain: return "AnchorOutsideDomain";
        case Errc::NonBinary: return "NonBinary";
        case Errc::ParseError: return "ParseError";
        case Errc::UnknownName: return "UnknownName";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace linext
