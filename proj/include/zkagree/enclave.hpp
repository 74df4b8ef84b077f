#ifndef ZKAGREE_ENCLAVE_HPP
#define ZKAGREE_ENCLAVE_HPP

#include <optional>

#include <nlohmann/json.hpp>

#include "zkagree/clc/document.hpp"
#include "zkagree/proofsys.hpp"

namespace zkagree::enclave {

// Public output of an evaluation run. The quote is an ordinary signature by
// the per-instance attestation key, standing in for a hardware remote
// attestation chain.
struct AttestedOutcome {
    clc::Outcome outcome;
    crypto::Digest measurement;
    crypto::PublicKey attestation_pk{};
    crypto::Digest output_digest;
    crypto::Signature quote{};

    nlohmann::json to_json() const;
};

// Digest the quote signs: measurement, outcome and (once available) the
// settlement statement fields.
crypto::Digest attested_output_digest(const crypto::Digest& measurement,
                                      const clc::Outcome& outcome,
                                      const std::optional<proofsys::EvalStatement>& statement);

bool verify_attestation(const AttestedOutcome& att);

// Simulated TEE instance. The signed contract is sealed at install time and
// never leaves: the only outputs are the measurement, attested outcomes and
// settlement statements/proofs. One instance is single-threaded; evaluate
// before proving.
class EnclaveInstance {
public:
    // Verifies both contract signatures and seals the contract. Throws
    // BadSignature when either check fails. The evaluator key becomes part
    // of the statement's parties digest; the attestation keypair is fresh
    // per instance.
    static EnclaveInstance install(const clc::SignedContract& contract,
                                   const crypto::PublicKey& evaluator_pk, Rng& rng);

    // measurement = digest of the canonical evaluation logic, fixed at
    // install time.
    const crypto::Digest& measurement() const { return measurement_; }
    const crypto::PublicKey& attestation_pk() const { return attestation_keys_.pk; }

    // Runs the sealed contract logic on schema-conforming inputs. REJECT is
    // a value, not an error; SchemaViolation is thrown before any
    // evaluation happens.
    AttestedOutcome execute_evaluation(const clc::ExternalInputs& inputs);

    bool has_outcome() const { return last_outcome_.has_value(); }

    struct SettlementProof {
        proofsys::EvalStatement statement;
        proofsys::ProofBundle bundle;
        AttestedOutcome attestation;
    };

    // Assembles the witness from sealed data plus the nullifier and Merkle
    // material supplied over the sealed channel, then proves the evaluation
    // relation. Throws NoOutcome before a successful evaluation, StaleRoot
    // when the path does not reach rt.
    SettlementProof generate_settlement_proof(const proofsys::Srs& srs,
                                              const crypto::FieldElement& k,
                                              const crypto::FieldElement& rt,
                                              std::span<const crypto::FieldElement> merkle_path,
                                              std::span<const bool> merkle_dirs);

private:
    EnclaveInstance() = default;

    clc::SignedContract sealed_contract_;  // never exposed
    crypto::KeyPair attestation_keys_;
    crypto::PublicKey evaluator_pk_{};
    crypto::Digest measurement_;
    std::optional<clc::Outcome> last_outcome_;
};

}  // namespace zkagree::enclave

#endif
