#include "zkagree/orchestrator.hpp"

#include <fstream>

namespace zkagree::orch {

const char* step_name(Step s) {
    switch (s) {
        case Step::Compile: return "compile";
        case Step::Sign: return "sign";
        case Step::Commit: return "commit";
        case Step::Submit: return "submit";
        case Step::Install: return "install";
        case Step::Evaluate: return "evaluate";
        case Step::Prove: return "prove";
        case Step::Settle: return "settle";
    }
    return "?";
}

namespace {

constexpr Step kStepOrder[] = {Step::Compile, Step::Sign,     Step::Commit, Step::Submit,
                               Step::Install, Step::Evaluate, Step::Prove,  Step::Settle};

std::optional<Step> step_from_name(const std::string& s) {
    for (Step step : kStepOrder)
        if (s == step_name(step)) return step;
    return std::nullopt;
}

clc::Value scenario_value_from_json(const json& j) {
    if (j.contains("int")) return clc::Value::of_int(clc::int128_from_string(j.at("int").get<std::string>()));
    if (j.contains("string")) return clc::Value::of_str(j.at("string").get<std::string>());
    if (j.contains("bytes")) return clc::Value::of_bytes(from_hex(j.at("bytes").get<std::string>()));
    raise(ErrorCode::ScenarioError, "input needs one of int/string/bytes/sign");
}

}  // namespace

Scenario Scenario::from_json(const json& j, const std::string& base_dir) {
    Scenario sc;
    sc.name = j.value("name", "");
    if (j.contains("template_text")) {
        sc.template_text = j.at("template_text").get<std::string>();
        sc.template_origin = "<inline>";
    } else {
        std::string rel = j.at("template").get<std::string>();
        std::string path = (!rel.empty() && rel[0] == '/') ? rel : base_dir + "/" + rel;
        std::ifstream in(path, std::ios::binary);
        if (!in) raise(ErrorCode::IoError, "cannot open template: " + path);
        sc.template_text.assign((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
        sc.template_origin = path;
    }
    for (const auto& [role, seed] : j.at("seeds").items())
        sc.seeds[role] = seed.get<uint64_t>();
    sc.master_seed = j.value("master_seed", uint64_t{0});
    for (const auto& f : j.value("funding", json::array()))
        sc.funding.push_back(Funding{f.at("role").get<std::string>(),
                                     clc::u64_from_string(f.at("amount").get<std::string>())});
    sc.depositor_role = j.at("depositor").get<std::string>();
    for (const auto& in : j.value("inputs", json::array())) {
        ScenarioInput si;
        si.name = in.at("name").get<std::string>();
        if (in.contains("sign")) {
            ScenarioInput::SignDirective d;
            const auto& s = in.at("sign");
            d.signer_role = s.at("signer").get<std::string>();
            for (const auto& m : s.at("message")) d.message_inputs.push_back(m.get<std::string>());
            d.forge = s.value("forge", false);
            si.sign = d;
        } else {
            si.literal = scenario_value_from_json(in);
        }
        sc.inputs.push_back(std::move(si));
    }
    if (j.contains("expect")) {
        const auto& e = j.at("expect");
        if (e.contains("lifecycle"))
            sc.expect.lifecycle = clc::lifecycle_from_name(e.at("lifecycle").get<std::string>());
        for (const auto& b : e.value("balances", json::array()))
            sc.expect.balances.emplace_back(b.at("role").get<std::string>(),
                                            clc::u128_from_string(b.at("amount").get<std::string>()));
    }
    return sc;
}

Scenario Scenario::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IoError, "cannot open scenario: " + path);
    json j = json::parse(in, nullptr, true, true);
    std::string dir = ".";
    auto slash = path.find_last_of('/');
    if (slash != std::string::npos) dir = path.substr(0, slash);
    Scenario sc = from_json(j, dir);
    if (sc.name.empty()) sc.name = path;
    return sc;
}

json Scenario::to_json() const {
    json seeds_j = json::object();
    for (const auto& [role, seed] : seeds) seeds_j[role] = seed;
    json funding_j = json::array();
    for (const auto& f : funding)
        funding_j.push_back(json{{"role", f.role}, {"amount", clc::u128_to_string(f.amount)}});
    return json{{"name", name},
                {"seeds", seeds_j},
                {"master_seed", master_seed},
                {"funding", funding_j},
                {"depositor", depositor_role}};
}

namespace {

struct Actors {
    std::map<std::string, crypto::KeyPair> keys;  // party roles + "evaluator"

    const crypto::KeyPair& at(const std::string& role) const {
        auto it = keys.find(role);
        if (it == keys.end()) raise(ErrorCode::ScenarioError, "no key seed for role '" + role + "'");
        return it->second;
    }
};

Actors make_actors(const Scenario& scenario, const clc::ContractDocument& doc) {
    Actors actors;
    for (const auto& [role, party] : doc.parties) {
        (void)party;
        auto it = scenario.seeds.find(role);
        if (it == scenario.seeds.end())
            raise(ErrorCode::ScenarioError, "scenario lacks a seed for party '" + role + "'");
        actors.keys[role] = crypto::keygen_from_seed(it->second);
    }
    auto eva = scenario.seeds.find("evaluator");
    if (eva == scenario.seeds.end())
        raise(ErrorCode::ScenarioError, "scenario lacks an 'evaluator' seed");
    actors.keys["evaluator"] = crypto::keygen_from_seed(eva->second);
    return actors;
}

clc::ExternalInputs resolve_inputs(const Scenario& scenario, const Actors& actors, Rng& rng) {
    clc::ExternalInputs inputs;
    for (const auto& si : scenario.inputs) {
        if (si.literal) {
            inputs[si.name] = *si.literal;
            continue;
        }
        const auto& directive = *si.sign;
        std::vector<clc::Value> message;
        for (const auto& ref : directive.message_inputs) {
            auto it = inputs.find(ref);
            if (it == inputs.end())
                raise(ErrorCode::ScenarioError,
                      "sign directive references unbound input '" + ref + "'");
            message.push_back(it->second);
        }
        crypto::Digest digest = clc::message_digest(message);
        crypto::SecretKey sk;
        if (directive.forge) {
            std::array<uint8_t, crypto::kKeySeedSize> seed{};
            Rng forge_rng = rng.fork("forged-signer");
            forge_rng.fill(seed.data(), seed.size());
            sk = crypto::keygen_from_seed(seed).sk;
        } else {
            sk = actors.at(directive.signer_role).sk;
        }
        crypto::Signature sig = crypto::sign(sk, digest);
        inputs[si.name] = clc::Value::of_bytes(Bytes(sig.begin(), sig.end()));
    }
    return inputs;
}

void record_event(SessionResult& r, Step step, json detail) {
    detail["step"] = step_name(step);
    detail["lifecycle"] = clc::lifecycle_name(r.state.lifecycle());
    detail["phase"] = clc::phase_name(r.state.phase());
    r.events.push_back(std::move(detail));
}

[[noreturn]] void step_error(Step step, const Error& e) {
    throw Error(e.code(), std::string("at step '") + step_name(step) + "': " + e.what());
}

}  // namespace

SessionResult run_session(const Scenario& scenario, ledger::LedgerState& ledger,
                          const proofsys::Srs& srs, const RunOptions& options) {
    SessionResult r;
    Rng session_rng(scenario.master_seed);

    // Compile
    clc::ContractDocument doc;
    Actors actors;
    try {
        doc = clc::compile_contract(scenario.template_text, scenario.template_origin);
        actors = make_actors(scenario, doc);
        for (auto& [role, party] : doc.parties) party.pk = actors.at(role).pk;
    } catch (const Error& e) {
        step_error(Step::Compile, e);
    }
    record_event(r, Step::Compile,
                 json{{"value", clc::u128_to_string(doc.value_v)},
                      {"contract_digest", clc::contract_digest(doc).to_hex()}});

    // Sign
    try {
        r.contract = clc::sign_contract(actors.at(doc.buyer_role).sk, actors.at(doc.seller_role).sk,
                                        doc);
        if (!clc::verify_signed(r.contract))
            raise(ErrorCode::BadSignature, "freshly signed contract failed verification");
    } catch (const Error& e) {
        step_error(Step::Sign, e);
    }
    r.actor_keys = actors.keys;
    record_event(r, Step::Sign,
                 json{{"sigma_buy", crypto::sig_hex(r.contract.sigma_buy)},
                      {"sigma_sel", crypto::sig_hex(r.contract.sigma_sel)}});

    // Commit: sample the nullifier and derive (h, clc_comm) inside the
    // commitment relation. The statement stays off-chain between the
    // parties; only clc_comm reaches the ledger.
    try {
        Rng nullifier_rng = session_rng.fork("nullifier");
        uint8_t raw[32];
        nullifier_rng.fill(raw, sizeof raw);
        r.nullifier_k = crypto::FieldElement::from_bytes_le(raw, sizeof raw);
        proofsys::CommitWitness witness{r.nullifier_k, clc::program_digest(r.contract).element};
        auto [statement, bundle] = proofsys::prove_commit(srs, witness);
        if (!proofsys::verify(srs, statement.to_bytes(), bundle))
            raise(ErrorCode::InvalidProof, "commitment proof did not verify");
        r.commit_statement = statement;
        r.commit_proof = bundle;
    } catch (const Error& e) {
        step_error(Step::Commit, e);
    }
    record_event(r, Step::Commit,
                 json{{"h", r.commit_statement.h.to_hex()},
                      {"clc_comm", r.commit_statement.clc_comm.to_hex()},
                      {"proof", to_hex(r.commit_proof.serialize())}});

    // Submit
    ledger::Transaction commit_tx;
    try {
        for (const auto& f : scenario.funding) ledger.fund(actors.at(f.role).pk, f.amount);
        commit_tx = ledger.submit_commitment(r.commit_statement.clc_comm, doc.value_v,
                                             actors.at(scenario.depositor_role).pk);
        r.leaf_index = commit_tx.fields.at("leaf_index").get<uint64_t>();
        r.state.advance(clc::Lifecycle::EXECUTION);
        r.state.set_phase(clc::Phase::AWAITING_INSPECTION);
    } catch (const Error& e) {
        step_error(Step::Submit, e);
    }
    record_event(r, Step::Submit,
                 json{{"height", commit_tx.height},
                      {"leaf_index", r.leaf_index},
                      {"root", commit_tx.fields.at("root")}});

    // Install
    std::optional<enclave::EnclaveInstance> instance;
    try {
        Rng enclave_rng = session_rng.fork("enclave");
        instance = enclave::EnclaveInstance::install(r.contract, actors.at("evaluator").pk,
                                                     enclave_rng);
    } catch (const Error& e) {
        step_error(Step::Install, e);
    }
    record_event(r, Step::Install,
                 json{{"measurement", instance->measurement().to_hex()},
                      {"attestation_pk", crypto::pk_hex(instance->attestation_pk())}});

    // Evaluate
    try {
        clc::ExternalInputs inputs = resolve_inputs(scenario, actors, session_rng);
        r.attestation = instance->execute_evaluation(inputs);
        if (!enclave::verify_attestation(*r.attestation))
            raise(ErrorCode::BadSignature, "attestation quote failed verification");
        r.state.advance(clc::Lifecycle::EVALUATION);
        r.state.set_phase(r.attestation->outcome.kind == clc::Outcome::Kind::ApproveFull
                              ? clc::Phase::APPROVED
                              : clc::Phase::DISPUTED);
    } catch (const Error& e) {
        step_error(Step::Evaluate, e);
    }
    record_event(r, Step::Evaluate, json{{"attestation", r.attestation->to_json()}});

    if (r.attestation->outcome.kind == clc::Outcome::Kind::Reject) {
        // No settlement path; the deposit stays locked until a later valid
        // evaluation.
        r.halted = true;
        r.halt_reason = "evaluation rejected";
        return r;
    }

    // Prove
    try {
        ledger::InclusionProof membership = ledger.inclusion_proof(r.leaf_index);
        std::vector<bool> dirs(membership.dirs.begin(), membership.dirs.end());
        auto proof = instance->generate_settlement_proof(
            srs, r.nullifier_k, membership.root,
            std::span<const crypto::FieldElement>(membership.siblings),
            std::span<const bool>(dirs));
        if (proof.statement.rat_numerator != proof.attestation.outcome.numerator)
            raise(ErrorCode::InvalidProof, "statement numerator diverged from attested outcome");
        r.eval_statement = proof.statement;
        r.eval_proof = proof.bundle;
        r.attestation = proof.attestation;
    } catch (const Error& e) {
        step_error(Step::Prove, e);
    }
    record_event(r, Step::Prove,
                 json{{"statement",
                       {{"rt", r.eval_statement->rt.to_hex()},
                        {"h", r.eval_statement->h.to_hex()},
                        {"parties_digest", r.eval_statement->parties_digest.to_hex()},
                        {"rat_numerator", clc::u128_to_string(r.eval_statement->rat_numerator)},
                        {"v", clc::u128_to_string(r.eval_statement->v)}}},
                      {"proof", to_hex(r.eval_proof->serialize())},
                      {"attestation", r.attestation->to_json()}});

    if (!options.settle) return r;

    // Settle
    try {
        const auto& doc_ref = r.contract.doc;
        r.settle_tx = ledger.settle(*r.eval_proof, *r.eval_statement,
                                    doc_ref.party(doc_ref.ratio_payee).pk,
                                    doc_ref.party(doc_ref.complement_payee).pk);
        r.state.advance(clc::Lifecycle::COMPLETED);
    } catch (const Error& e) {
        step_error(Step::Settle, e);
    }
    record_event(r, Step::Settle, json{{"height", r.settle_tx->height}});
    return r;
}

json SessionResult::to_json() const {
    json j{{"schema_version", 1},
           {"final_lifecycle", clc::lifecycle_name(state.lifecycle())},
           {"final_phase", clc::phase_name(state.phase())},
           {"halted", halted},
           {"events", events}};
    if (!halt_reason.empty()) j["halt_reason"] = halt_reason;
    j["commit_statement"] = {{"h", commit_statement.h.to_hex()},
                             {"clc_comm", commit_statement.clc_comm.to_hex()}};
    if (eval_statement) {
        j["eval_statement"] = {{"rt", eval_statement->rt.to_hex()},
                               {"h", eval_statement->h.to_hex()},
                               {"parties_digest", eval_statement->parties_digest.to_hex()},
                               {"rat_numerator", clc::u128_to_string(eval_statement->rat_numerator)},
                               {"v", clc::u128_to_string(eval_statement->v)}};
    }
    if (attestation) j["attestation"] = attestation->to_json();
    if (settle_tx) j["settle_height"] = settle_tx->height;
    return j;
}

std::vector<std::string> check_expectations(const Scenario& scenario, const SessionResult& result,
                                            const ledger::LedgerState& ledger) {
    std::vector<std::string> failures;
    if (scenario.expect.lifecycle &&
        result.state.lifecycle() != *scenario.expect.lifecycle) {
        failures.push_back(std::string("lifecycle: expected ") +
                           clc::lifecycle_name(*scenario.expect.lifecycle) + ", got " +
                           clc::lifecycle_name(result.state.lifecycle()));
    }
    for (const auto& [role, amount] : scenario.expect.balances) {
        auto it = result.actor_keys.find(role);
        if (it == result.actor_keys.end()) {
            failures.push_back("expected balance for unknown role '" + role + "'");
            continue;
        }
        ledger::Amount actual = ledger.balance(it->second.pk);
        if (actual != amount) {
            failures.push_back("balance of " + role + ": expected " + clc::u128_to_string(amount) +
                               ", got " + clc::u128_to_string(actual));
        }
    }
    return failures;
}

json public_transcript(const ledger::LedgerState& ledger, const SessionResult& result) {
    json txs = json::array();
    for (const auto& tx : ledger.tx_log()) txs.push_back(tx.to_json());
    json j{{"tx_log", txs}};
    if (result.eval_statement) {
        j["statements"] = {{"eval",
                            {{"rt", result.eval_statement->rt.to_hex()},
                             {"h", result.eval_statement->h.to_hex()},
                             {"parties_digest", result.eval_statement->parties_digest.to_hex()},
                             {"rat_numerator", clc::u128_to_string(result.eval_statement->rat_numerator)},
                             {"v", clc::u128_to_string(result.eval_statement->v)}}}};
    }
    return j;
}

namespace {

void diff_walk(const json& a, const json& b, const std::string& path,
               std::vector<std::string>& out) {
    if (a.type() != b.type()) {
        out.push_back(path + "!shape");
        return;
    }
    if (a.is_object()) {
        for (const auto& [key, value] : a.items()) {
            if (!b.contains(key)) out.push_back(path + "." + key + "!shape");
            else diff_walk(value, b.at(key), path.empty() ? key : path + "." + key, out);
        }
        for (const auto& [key, value] : b.items()) {
            (void)value;
            if (!a.contains(key)) out.push_back(path + "." + key + "!shape");
        }
        return;
    }
    if (a.is_array()) {
        if (a.size() != b.size()) {
            out.push_back(path + "!shape");
            return;
        }
        for (size_t i = 0; i < a.size(); ++i)
            diff_walk(a[i], b[i], path + "[" + std::to_string(i) + "]", out);
        return;
    }
    if (a != b) out.push_back(path);
}

}  // namespace

std::vector<std::string> transcript_diff(const json& a, const json& b) {
    std::vector<std::string> out;
    diff_walk(a, b, "", out);
    return out;
}

PrivacyGameResult privacy_game(const Scenario& scenario0, const Scenario& scenario1,
                               const proofsys::Srs& srs) {
    clc::ContractDocument doc0 = clc::compile_contract(scenario0.template_text, "clc_0");
    clc::ContractDocument doc1 = clc::compile_contract(scenario1.template_text, "clc_1");

    if (doc0.value_v != doc1.value_v)
        raise(ErrorCode::ParameterMismatch, "contract values differ");

    auto role_pk = [](const Scenario& sc, const std::string& role) {
        auto it = sc.seeds.find(role);
        if (it == sc.seeds.end())
            raise(ErrorCode::ParameterMismatch, "missing seed for role '" + role + "'");
        return crypto::keygen_from_seed(it->second).pk;
    };
    auto check_pk = [&](const std::string& role0, const std::string& role1, const char* what) {
        if (role_pk(scenario0, role0) != role_pk(scenario1, role1))
            raise(ErrorCode::ParameterMismatch, std::string(what) + " public keys differ");
    };
    check_pk(doc0.ratio_payee, doc1.ratio_payee, "ratio payee");
    check_pk(doc0.complement_payee, doc1.complement_payee, "complement payee");
    check_pk(doc0.buyer_role, doc1.buyer_role, "buyer");
    check_pk(doc0.seller_role, doc1.seller_role, "seller");
    check_pk("evaluator", "evaluator", "evaluator");

    if (scenario0.master_seed == scenario1.master_seed)
        raise(ErrorCode::ParameterMismatch, "sessions must use independent nullifier randomness");

    PrivacyGameResult out;
    ledger::LedgerState ledger0(srs);
    ledger::LedgerState ledger1(srs);
    out.session0 = run_session(scenario0, ledger0, srs);
    out.session1 = run_session(scenario1, ledger1, srs);

    bool rat0 = out.session0.eval_statement.has_value();
    bool rat1 = out.session1.eval_statement.has_value();
    if (rat0 != rat1 ||
        (rat0 && out.session0.eval_statement->rat_numerator !=
                     out.session1.eval_statement->rat_numerator))
        raise(ErrorCode::ParameterMismatch, "scripted inputs produced different outcomes");

    out.transcript0 = public_transcript(ledger0, out.session0);
    out.transcript1 = public_transcript(ledger1, out.session1);
    return out;
}

SettleAttempt soundness_game(ledger::LedgerState& ledger, const SessionResult& pending,
                             Mutation mutation, Rng& rng,
                             const std::optional<crypto::FieldElement>& spent_nullifier) {
    if (!pending.eval_statement || !pending.eval_proof)
        raise(ErrorCode::ScenarioError, "soundness game needs a proven session");

    proofsys::EvalStatement statement = *pending.eval_statement;
    proofsys::ProofBundle proof = *pending.eval_proof;

    auto random_field = [&rng] {
        uint8_t raw[32];
        rng.fill(raw, sizeof raw);
        return crypto::FieldElement::from_bytes_le(raw, sizeof raw);
    };

    switch (mutation) {
        case Mutation::ProofBitFlip: {
            size_t byte = rng.next_below(proof.proof.size());
            proof.proof[byte] ^= static_cast<uint8_t>(1u << rng.next_below(8));
            break;
        }
        case Mutation::StatementRt: statement.rt = random_field(); break;
        case Mutation::StatementH: statement.h = random_field(); break;
        case Mutation::StatementRat:
            statement.rat_numerator += 1 + rng.next_below(1024);
            break;
        case Mutation::StatementPartiesDigest: statement.parties_digest = random_field(); break;
        case Mutation::ReplayNullifier:
            if (!spent_nullifier)
                raise(ErrorCode::ScenarioError, "ReplayNullifier needs a spent nullifier");
            statement.h = *spent_nullifier;
            break;
    }

    const auto& doc = pending.contract.doc;
    SettleAttempt attempt;
    try {
        ledger.settle(proof, statement, doc.party(doc.ratio_payee).pk,
                      doc.party(doc.complement_payee).pk);
        attempt.settled = true;
    } catch (const Error& e) {
        attempt.revert_code = e.code();
    }
    return attempt;
}

json non_repudiation_check(const SessionResult& session, const ledger::LedgerState& ledger) {
    json flags = json::array();
    crypto::Digest c = clc::contract_digest(session.contract.doc);
    const auto& doc = session.contract.doc;

    bool buyer_ok = crypto::verify(doc.party(doc.buyer_role).pk, c, session.contract.sigma_buy);
    bool seller_ok = crypto::verify(doc.party(doc.seller_role).pk, c, session.contract.sigma_sel);
    if (!buyer_ok) flags.push_back("buyer signature missing or invalid");
    if (!seller_ok) flags.push_back("seller signature missing or invalid");

    std::string registered = session.commit_statement.clc_comm.to_hex();
    bool tx_present = false;
    for (const auto& tx : ledger.tx_log()) {
        if (tx.kind == ledger::Transaction::Kind::Commit &&
            tx.fields.value("clc_comm", "") == registered) {
            tx_present = true;
            break;
        }
    }
    if (!tx_present) flags.push_back("registration transaction not found in tx log");

    bool chain_ok = ledger.validate_tx_chain();
    if (!chain_ok) flags.push_back("tx log digest chain mismatch");

    return json{{"buyer_signature_ok", buyer_ok},
                {"seller_signature_ok", seller_ok},
                {"registration_tx_present", tx_present},
                {"tx_chain_ok", chain_ok},
                {"ok", buyer_ok && seller_ok && tx_present && chain_ok},
                {"flags", flags}};
}

bool fsm_accepts_transcript(const json& events) {
    if (!events.is_array()) return false;
    size_t expected = 0;
    clc::Lifecycle lifecycle = clc::Lifecycle::INIT;
    for (const auto& event : events) {
        if (!event.is_object() || !event.contains("step") || !event.contains("lifecycle"))
            return false;
        auto step = step_from_name(event.at("step").get<std::string>());
        if (!step) return false;
        if (expected >= std::size(kStepOrder) || *step != kStepOrder[expected]) return false;
        ++expected;

        clc::Lifecycle after;
        try {
            after = clc::lifecycle_from_name(event.at("lifecycle").get<std::string>());
        } catch (const Error&) {
            return false;
        }
        bool legal =
            after == lifecycle ||
            (lifecycle == clc::Lifecycle::INIT && after == clc::Lifecycle::EXECUTION) ||
            (lifecycle == clc::Lifecycle::EXECUTION && after == clc::Lifecycle::EVALUATION) ||
            (lifecycle == clc::Lifecycle::EVALUATION && after == clc::Lifecycle::COMPLETED);
        if (!legal) return false;
        // Lifecycle advances are tied to specific steps.
        if (*step == Step::Submit && after != clc::Lifecycle::EXECUTION) return false;
        if (*step == Step::Evaluate && after != clc::Lifecycle::EVALUATION) return false;
        if (*step == Step::Settle && after != clc::Lifecycle::COMPLETED) return false;
        lifecycle = after;
    }
    return true;
}

}  // namespace zkagree::orch
