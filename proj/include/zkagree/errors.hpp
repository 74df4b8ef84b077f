#ifndef ZKAGREE_ERRORS_HPP
#define ZKAGREE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zkagree {

enum class ErrorCode {
    // crypto
    EmptyInput,
    TooManyInputs,
    EntropyFailure,
    MalformedKey,
    // clc
    ParseError,
    TypeError,
    SchemaError,
    // proofsys
    UnsupportedBackend,
    RelationUnsatisfied,
    MalformedProof,
    // enclave
    BadSignature,
    SchemaViolation,
    StaleRoot,
    NoOutcome,
    // ledger
    InsufficientFunds,
    InsufficientEscrow,
    TreeFull,
    UnknownLeaf,
    InvalidValue,
    NullifierSpent,
    InvalidProof,
    // orchestrator / cli
    IllegalTransition,
    ParameterMismatch,
    ScenarioError,
    IoError,
};

const char* error_code_name(ErrorCode code);

// Protocol-level failure. Ledger reverts, relation violations and input
// validation all surface as an Error carrying the code named in the
// operation contract.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace zkagree

#endif
