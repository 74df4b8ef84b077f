#include "zkagree/errors.hpp"

namespace zkagree {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::TooManyInputs: return "TooManyInputs";
        case ErrorCode::EntropyFailure: return "EntropyFailure";
        case ErrorCode::MalformedKey: return "MalformedKey";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::TypeError: return "TypeError";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::UnsupportedBackend: return "UnsupportedBackend";
        case ErrorCode::RelationUnsatisfied: return "RelationUnsatisfied";
        case ErrorCode::MalformedProof: return "MalformedProof";
        case ErrorCode::BadSignature: return "BadSignature";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::StaleRoot: return "StaleRoot";
        case ErrorCode::NoOutcome: return "NoOutcome";
        case ErrorCode::InsufficientFunds: return "InsufficientFunds";
        case ErrorCode::InsufficientEscrow: return "InsufficientEscrow";
        case ErrorCode::TreeFull: return "TreeFull";
        case ErrorCode::UnknownLeaf: return "UnknownLeaf";
        case ErrorCode::InvalidValue: return "InvalidValue";
        case ErrorCode::NullifierSpent: return "NullifierSpent";
        case ErrorCode::InvalidProof: return "InvalidProof";
        case ErrorCode::IllegalTransition: return "IllegalTransition";
        case ErrorCode::ParameterMismatch: return "ParameterMismatch";
        case ErrorCode::ScenarioError: return "ScenarioError";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace zkagree
