#pragma once

#include <stdexcept>
#include <string>

namespace pm {

// Error taxonomy shared by all modules. Each condition named in the module
// contracts maps to one enumerator so callers (and the CLI) can switch on it.
enum class Err {
    RaggedInput,
    IsolatedVertex,
    UnbalancedGraph,
    EmptySelection,
    TooLarge,
    NoPerfectMatching,
    NotConvexPresentation,
    NotMonotonePresentation,
    NotGammaFree,
    Disconnected,
    BadBoundary,
    TooShort,
    NotAlternatingCycle,
    NotMonotone,
    InvariantViolation,
    TransitoryState,
    GenerationFailed,
    BadInput,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Err code() const { return code_; }
    const char* code_name() const {
        switch (code_) {
        case Err::RaggedInput: return "RaggedInput";
        case Err::IsolatedVertex: return "IsolatedVertex";
        case Err::UnbalancedGraph: return "UnbalancedGraph";
        case Err::EmptySelection: return "EmptySelection";
        case Err::TooLarge: return "TooLarge";
        case Err::NoPerfectMatching: return "NoPerfectMatching";
        case Err::NotConvexPresentation: return "NotConvexPresentation";
        case Err::NotMonotonePresentation: return "NotMonotonePresentation";
        case Err::NotGammaFree: return "NotGammaFree";
        case Err::Disconnected: return "Disconnected";
        case Err::BadBoundary: return "BadBoundary";
        case Err::TooShort: return "TooShort";
        case Err::NotAlternatingCycle: return "NotAlternatingCycle";
        case Err::NotMonotone: return "NotMonotone";
        case Err::InvariantViolation: return "InvariantViolation";
        case Err::TransitoryState: return "TransitoryState";
        case Err::GenerationFailed: return "GenerationFailed";
        case Err::BadInput: return "BadInput";
        case Err::Internal: return "Internal";
        }
        return "Unknown";
    }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool cond, Err code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace pm
