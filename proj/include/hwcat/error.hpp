#pragma once

// Error taxonomy for the engine.  Failures that certify a mathematical fact
// (a witness of infinite dimension, an ill-formed relation, ...) carry a kind
// tag plus human-readable detail; decision-style results ("false, because")
// are ordinary return values, not exceptions.

#include <stdexcept>
#include <string>

namespace hwcat {

enum class ErrorKind {
    NotFiniteDimensional,
    IllFormedRelation,
    UnknownVertex,
    UnknownArrow,
    DimensionMismatch,
    AlgebraMismatch,
    RelationViolated,
    NotAModuleMap,
    DecomposableInput,
    Undecided,
    NotSplit,
    TruncationTooShallow,
    TruncatedComplex,
    InfiniteGlobalDimension,
    NotExceptional,
    NotExceptionalPair,
    NotExceptionalSequence,
    NotStandarizable,
    NonTerminating,
    CriterionNotCertified,
    NonModuleStandard,
    ReportIncomplete,
    ParseError,
    Internal,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotFiniteDimensional: return "NotFiniteDimensional";
        case ErrorKind::IllFormedRelation: return "IllFormedRelation";
        case ErrorKind::UnknownVertex: return "UnknownVertex";
        case ErrorKind::UnknownArrow: return "UnknownArrow";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
        case ErrorKind::RelationViolated: return "RelationViolated";
        case ErrorKind::NotAModuleMap: return "NotAModuleMap";
        case ErrorKind::DecomposableInput: return "DecomposableInput";
        case ErrorKind::Undecided: return "Undecided";
        case ErrorKind::NotSplit: return "NotSplit";
        case ErrorKind::TruncationTooShallow: return "TruncationTooShallow";
        case ErrorKind::TruncatedComplex: return "TruncatedComplex";
        case ErrorKind::InfiniteGlobalDimension: return "InfiniteGlobalDimension";
        case ErrorKind::NotExceptional: return "NotExceptional";
        case ErrorKind::NotExceptionalPair: return "NotExceptionalPair";
        case ErrorKind::NotExceptionalSequence: return "NotExceptionalSequence";
        case ErrorKind::NotStandarizable: return "NotStandarizable";
        case ErrorKind::NonTerminating: return "NonTerminating";
        case ErrorKind::CriterionNotCertified: return "CriterionNotCertified";
        case ErrorKind::NonModuleStandard: return "NonModuleStandard";
        case ErrorKind::ReportIncomplete: return "ReportIncomplete";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

class EngineError : public std::runtime_error {
public:
    EngineError(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
    throw EngineError(kind, detail);
}

inline void require(bool cond, ErrorKind kind, const std::string& detail) {
    if (!cond) fail(kind, detail);
}

} // namespace hwcat
