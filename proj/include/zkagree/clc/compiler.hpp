#ifndef ZKAGREE_CLC_COMPILER_HPP
#define ZKAGREE_CLC_COMPILER_HPP

#include "zkagree/clc/document.hpp"

namespace zkagree::clc {

// Compiles a contract template into a validated document. The same grammar
// accepts hand-written templates (free whitespace, `#` comments, else-if
// chains) and the canonical form, so canonical(doc) always re-parses to an
// equal document. The returned contract starts its lifecycle in INIT.
//
// Throws ParseError with <origin>:<line>:<col>, TypeError naming the
// offending expression, or SchemaError for undeclared inputs and broken
// document invariants.
ContractDocument compile_contract(const std::string& text, const std::string& origin = "<template>");

ContractDocument compile_contract_file(const std::string& path);

}  // namespace zkagree::clc

#endif
