#include "utp2/error.hpp"

namespace utp2 {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::IncompleteBinding: return "IncompleteBinding";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NoSuchChild: return "NoSuchChild";
    case ErrorCode::AtRoot: return "AtRoot";
    case ErrorCode::NoSibling: return "NoSibling";
    case ErrorCode::UnifyFail: return "UnifyFail";
    case ErrorCode::OccursCheck: return "OccursCheck";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::UnknownTheory: return "UnknownTheory";
    case ErrorCode::UnknownRow: return "UnknownRow";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnknownLaw: return "UnknownLaw";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::SideConditionViolated: return "SideConditionViolated";
    case ErrorCode::UnknownConjecture: return "UnknownConjecture";
    case ErrorCode::StrategyInapplicable: return "StrategyInapplicable";
    case ErrorCode::ProofAlreadyComplete: return "ProofAlreadyComplete";
    case ErrorCode::NothingToUndo: return "NothingToUndo";
    case ErrorCode::NotComplete: return "NotComplete";
    }
    return "Unknown";
}

} // namespace utp2
