#include "zkagree/enclave.hpp"

namespace zkagree::enclave {

nlohmann::json AttestedOutcome::to_json() const {
    return nlohmann::json{
        {"measurement_hex", measurement.to_hex()},
        {"attestation_pk_hex", crypto::pk_hex(attestation_pk)},
        {"outcome",
         {{"kind", clc::outcome_kind_name(outcome.kind)},
          {"numerator", clc::u128_to_string(outcome.numerator)}}},
        {"output_digest_hex", output_digest.to_hex()},
        {"quote_hex", crypto::sig_hex(quote)}};
}

crypto::Digest attested_output_digest(const crypto::Digest& measurement,
                                      const clc::Outcome& outcome,
                                      const std::optional<proofsys::EvalStatement>& statement) {
    Bytes buf;
    auto m = measurement.element.to_bytes_be();
    buf.insert(buf.end(), m.begin(), m.end());
    buf.push_back(static_cast<uint8_t>(outcome.kind));
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<uint8_t>(outcome.numerator >> (8 * i)));
    if (statement) {
        buf.push_back(1);
        append_bytes(buf, statement->to_bytes());
    } else {
        buf.push_back(0);
    }
    return crypto::digest_document(buf);
}

bool verify_attestation(const AttestedOutcome& att) {
    return crypto::verify(att.attestation_pk, att.output_digest, att.quote);
}

EnclaveInstance EnclaveInstance::install(const clc::SignedContract& contract,
                                         const crypto::PublicKey& evaluator_pk, Rng& rng) {
    if (!clc::verify_signed(contract))
        raise(ErrorCode::BadSignature, "contract signature check failed, installation refused");

    EnclaveInstance inst;
    inst.sealed_contract_ = contract;
    inst.evaluator_pk_ = evaluator_pk;
    std::array<uint8_t, crypto::kKeySeedSize> seed{};
    rng.fill(seed.data(), seed.size());
    inst.attestation_keys_ = crypto::keygen_from_seed(seed);

    std::string logic = clc::logic_canonical(contract.doc.logic);
    inst.measurement_ = crypto::digest_document(Bytes(logic.begin(), logic.end()));
    return inst;
}

AttestedOutcome EnclaveInstance::execute_evaluation(const clc::ExternalInputs& inputs) {
    clc::validate_inputs(sealed_contract_.doc.schema, inputs);

    clc::Outcome outcome =
        clc::evaluate_logic(sealed_contract_.doc.logic, sealed_contract_.doc.terms,
                            sealed_contract_.doc.value_v, sealed_contract_.doc.parties, inputs);
    last_outcome_ = outcome;

    AttestedOutcome att;
    att.outcome = outcome;
    att.measurement = measurement_;
    att.attestation_pk = attestation_keys_.pk;
    att.output_digest = attested_output_digest(measurement_, outcome, std::nullopt);
    att.quote = crypto::sign(attestation_keys_.sk, att.output_digest);
    return att;
}

EnclaveInstance::SettlementProof EnclaveInstance::generate_settlement_proof(
    const proofsys::Srs& srs, const crypto::FieldElement& k, const crypto::FieldElement& rt,
    std::span<const crypto::FieldElement> merkle_path, std::span<const bool> merkle_dirs) {
    if (!last_outcome_ || last_outcome_->kind == clc::Outcome::Kind::Reject)
        raise(ErrorCode::NoOutcome, "no successful evaluation to settle");
    if (merkle_path.size() != proofsys::kMerkleDepth || merkle_dirs.size() != proofsys::kMerkleDepth)
        raise(ErrorCode::StaleRoot, "merkle path has wrong depth");

    crypto::Digest pd = clc::program_digest(sealed_contract_);
    crypto::FieldElement h = crypto::hash_fields({k});
    crypto::FieldElement clc_comm = crypto::hash_fields({k, pd.element});
    crypto::FieldElement recomputed = proofsys::fold_merkle_path(clc_comm, merkle_path, merkle_dirs);
    if (recomputed != rt)
        raise(ErrorCode::StaleRoot, "merkle path does not reach the supplied root");

    const clc::ContractDocument& doc = sealed_contract_.doc;
    crypto::FieldElement parties_digest =
        crypto::hash_fields({crypto::pk_to_field(doc.party(doc.buyer_role).pk),
                             crypto::pk_to_field(doc.party(doc.seller_role).pk),
                             crypto::pk_to_field(evaluator_pk_)});

    proofsys::EvalStatement statement;
    statement.rt = rt;
    statement.h = h;
    statement.parties_digest = parties_digest;
    statement.rat_numerator = last_outcome_->numerator;
    statement.v = doc.value_v;

    proofsys::EvalWitness witness;
    witness.k = k;
    witness.pd = pd.element;
    std::copy(merkle_path.begin(), merkle_path.end(), witness.merkle_path.begin());
    std::copy(merkle_dirs.begin(), merkle_dirs.end(), witness.merkle_dirs.begin());

    proofsys::ProofBundle bundle = proofsys::prove_eval(srs, witness, statement);

    AttestedOutcome att;
    att.outcome = *last_outcome_;
    att.measurement = measurement_;
    att.attestation_pk = attestation_keys_.pk;
    att.output_digest = attested_output_digest(measurement_, *last_outcome_, statement);
    att.quote = crypto::sign(attestation_keys_.sk, att.output_digest);

    return SettlementProof{statement, bundle, att};
}

}  // namespace zkagree::enclave
