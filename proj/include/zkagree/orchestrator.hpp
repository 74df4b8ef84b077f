#ifndef ZKAGREE_ORCHESTRATOR_HPP
#define ZKAGREE_ORCHESTRATOR_HPP

#include "zkagree/clc/compiler.hpp"
#include "zkagree/enclave.hpp"
#include "zkagree/ledger.hpp"

namespace zkagree::orch {

using nlohmann::json;

// The seven protocol steps plus compilation, in FSM order.
enum class Step { Compile, Sign, Commit, Submit, Install, Evaluate, Prove, Settle };

const char* step_name(Step s);

// External-input binding: either a literal value or a signature produced by
// a scenario actor over previously bound inputs. `forge` signs with a wrong
// key to model a dishonest artifact.
struct ScenarioInput {
    std::string name;
    std::optional<clc::Value> literal;

    struct SignDirective {
        std::string signer_role;
        std::vector<std::string> message_inputs;
        bool forge = false;
    };
    std::optional<SignDirective> sign;
};

struct Funding {
    std::string role;
    uint64_t amount = 0;
};

struct Expectation {
    std::optional<clc::Lifecycle> lifecycle;
    std::vector<std::pair<std::string, ledger::Amount>> balances;  // role -> final balance
};

// A deterministic end-to-end protocol run: contract template, per-role key
// seeds, funding, scripted evidence, and the expected outcome.
struct Scenario {
    std::string name;
    std::string template_text;
    std::string template_origin;
    std::map<std::string, uint64_t> seeds;  // party roles plus "evaluator"
    uint64_t master_seed = 0;               // nullifier + attestation randomness
    std::vector<Funding> funding;
    std::string depositor_role;
    std::vector<ScenarioInput> inputs;
    Expectation expect;

    static Scenario from_json(const json& j, const std::string& base_dir);
    static Scenario load_file(const std::string& path);
    json to_json() const;
};

struct RunOptions {
    bool settle = true;  // false: stop after Prove and leave the escrow locked
};

// Everything a finished (or halted) session produced. Secret material
// (nullifier, secret keys) stays out of to_json().
struct SessionResult {
    clc::LifecycleState state;
    bool halted = false;
    std::string halt_reason;

    clc::SignedContract contract;
    std::map<std::string, crypto::KeyPair> actor_keys;  // roles + "evaluator"
    crypto::FieldElement nullifier_k;                   // secret

    proofsys::CommitStatement commit_statement;
    proofsys::ProofBundle commit_proof;
    uint64_t leaf_index = 0;

    std::optional<enclave::AttestedOutcome> attestation;
    std::optional<proofsys::EvalStatement> eval_statement;
    std::optional<proofsys::ProofBundle> eval_proof;
    std::optional<ledger::Transaction> settle_tx;

    json events = json::array();  // FSM transcript, one record per step

    json to_json() const;         // the SessionReport
};

// Executes compile -> sign -> commit -> submit -> install -> evaluate ->
// prove -> settle against the given ledger. A REJECT evaluation halts the
// session in EVALUATION with funds still escrowed. Errors are rethrown
// annotated with the step at which they occurred.
SessionResult run_session(const Scenario& scenario, ledger::LedgerState& ledger,
                          const proofsys::Srs& srs, const RunOptions& options = {});

// Checks a SessionReport's expectations; returns failure descriptions,
// empty when everything matches.
std::vector<std::string> check_expectations(const Scenario& scenario, const SessionResult& result,
                                            const ledger::LedgerState& ledger);

// The public on-chain view of a session: the ledger tx log plus the
// settlement statement. This is what the privacy game diffs.
json public_transcript(const ledger::LedgerState& ledger, const SessionResult& result);

// Recursive field-by-field diff; returns dot-joined paths of differing
// leaves (or paths suffixed with "!shape" on structural mismatch).
std::vector<std::string> transcript_diff(const json& a, const json& b);

// Runs both scenarios on fresh ledgers with independent nullifiers and
// returns their public transcripts. Throws ParameterMismatch unless the
// public parameters (value, payee/signer/evaluator keys, funding) agree.
struct PrivacyGameResult {
    json transcript0;
    json transcript1;
    SessionResult session0;
    SessionResult session1;
};
PrivacyGameResult privacy_game(const Scenario& scenario0, const Scenario& scenario1,
                               const proofsys::Srs& srs);

// Targeted single-field mutations applied to an honest pending settlement.
enum class Mutation {
    ProofBitFlip,
    StatementRt,
    StatementH,
    StatementRat,
    StatementPartiesDigest,
    ReplayNullifier,
};

struct SettleAttempt {
    bool settled = false;
    std::optional<ErrorCode> revert_code;
};

// Applies the mutation to a copy of the pending settlement and attempts to
// settle; an honest ledger must revert. `spent_nullifier` feeds the
// ReplayNullifier mutation.
SettleAttempt soundness_game(ledger::LedgerState& ledger, const SessionResult& pending,
                             Mutation mutation, Rng& rng,
                             const std::optional<crypto::FieldElement>& spent_nullifier = {});

// Verifies both contract signatures against the committed digest and the
// integrity of the registration record in the tx log.
json non_repudiation_check(const SessionResult& session, const ledger::LedgerState& ledger);

// Standalone FSM checker: accepts a transcript iff its steps form a prefix
// of the protocol order and every recorded lifecycle transition follows
// INIT -> EXECUTION -> EVALUATION -> COMPLETED.
bool fsm_accepts_transcript(const json& events);

}  // namespace zkagree::orch

#endif
