#ifndef ZKAGREE_CLC_DOCUMENT_HPP
#define ZKAGREE_CLC_DOCUMENT_HPP

#include "zkagree/clc/logic.hpp"

namespace zkagree::clc {

enum class Lifecycle { INIT, EXECUTION, EVALUATION, COMPLETED };
enum class Phase { NONE, AWAITING_INSPECTION, AWAITING_TENANT_DECISION, APPROVED, DISPUTED };

const char* lifecycle_name(Lifecycle s);
const char* phase_name(Phase p);
Lifecycle lifecycle_from_name(const std::string& s);

// Lifecycle and phase move only along the allowed chain
// INIT -> EXECUTION -> EVALUATION -> COMPLETED; a phase other than NONE is
// legal only while the contract is in EXECUTION or EVALUATION.
class LifecycleState {
public:
    Lifecycle lifecycle() const { return lifecycle_; }
    Phase phase() const { return phase_; }

    // Throws IllegalTransition unless `next` is the immediate successor.
    void advance(Lifecycle next);
    // Throws IllegalTransition when the phase is not legal in the current
    // lifecycle state.
    void set_phase(Phase p);

    bool operator==(const LifecycleState&) const = default;

private:
    Lifecycle lifecycle_ = Lifecycle::INIT;
    Phase phase_ = Phase::NONE;
};

// The compiled agreement: parties and their keys, typed terms, the escrow
// value, payout routing, the external-data schema and the evaluation logic.
// Immutable once compiled; runtime state lives in LifecycleState.
struct ContractDocument {
    std::string title;
    std::string legal_text;  // optional natural-language text
    Parties parties;
    std::string buyer_role;
    std::string seller_role;
    Terms terms;
    uint64_t value_v = 0;
    std::string ratio_payee;
    std::string complement_payee;
    DataSchema schema;
    LogicProgram logic;

    const Party& party(const std::string& role) const;
};

// Deterministic, injective serialization: sections and keys lexicographically
// sorted, integers in decimal, byte fields as lowercase hex inside string
// literals, no insignificant whitespace. The output re-parses through
// compile_contract to an identical document.
Bytes canonical(const ContractDocument& doc);

// c = digest_document(canonical(doc)); what both parties sign.
crypto::Digest contract_digest(const ContractDocument& doc);

struct SignedContract {
    ContractDocument doc;
    crypto::Signature sigma_buy{};
    crypto::Signature sigma_sel{};
};

// Both signatures over contract_digest(doc). The two Sign calls are
// independent; at desk scale they run in-process.
SignedContract sign_contract(const crypto::SecretKey& sk_buy, const crypto::SecretKey& sk_sel,
                             const ContractDocument& doc);

// True iff both signatures verify under the document's buyer/seller keys.
bool verify_signed(const SignedContract& sc);

// canonical(doc) followed by both raw signatures; the preimage of the
// program digest pd.
Bytes signed_canonical(const SignedContract& sc);

crypto::Digest program_digest(const SignedContract& sc);

}  // namespace zkagree::clc

#endif
