#ifndef ZKAGREE_LEDGER_HPP
#define ZKAGREE_LEDGER_HPP

#include <deque>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "zkagree/merkle.hpp"
#include "zkagree/proofsys.hpp"
#include "zkagree/signature.hpp"

namespace zkagree::ledger {

using nlohmann::json;

// Contract values fit in 64 bits; aggregate positions (balances, escrow
// pool, total supply) use 128 bits so long stress runs cannot wrap.
using Amount = unsigned __int128;

struct Transaction {
    enum class Kind { Commit, Settle };

    Kind kind = Kind::Commit;
    uint64_t height = 0;
    json fields;  // kind-specific payload, hex/decimal encoded
    crypto::Digest prev_digest;
    crypto::Digest digest;

    json to_json() const;
    static Transaction from_json(const json& j);
};

const char* tx_kind_name(Transaction::Kind k);

// Simulated on-chain contract: commitment tree, recent-root ring, nullifier
// table, pooled escrow and per-key balances. Transactions apply in a single
// total order; every failed settle leaves the state byte-identical.
class LedgerState {
public:
    explicit LedgerState(proofsys::Srs verifier_srs, size_t tree_depth = 20,
                         size_t root_history = 30);

    // Explicit deposit; the only operation that grows the total supply.
    void fund(const crypto::PublicKey& who, uint64_t amount);

    // Locks v from the depositor and appends clc_comm to the tree. Returns
    // the COMMIT transaction carrying the leaf index and the new root.
    Transaction submit_commitment(const crypto::FieldElement& clc_comm, uint64_t v,
                                  const crypto::PublicKey& depositor);

    InclusionProof inclusion_proof(uint64_t leaf_index) const;

    // Proof-gated settlement. Checks run in transaction order: spent
    // nullifier, then root recency, then proof verification; any failure
    // reverts with the state untouched. On success the nullifier is spent
    // forever, rat_numerator goes to payee_ratio and v - rat_numerator to
    // payee_complement.
    Transaction settle(const proofsys::ProofBundle& proof, const proofsys::EvalStatement& statement,
                       const crypto::PublicKey& payee_ratio,
                       const crypto::PublicKey& payee_complement);

    Amount balance(const crypto::PublicKey& who) const;
    Amount escrow_pool() const { return escrow_pool_; }
    Amount total_deposits() const { return total_deposits_; }
    uint64_t next_height() const { return next_height_; }

    bool is_recent_root(const crypto::FieldElement& rt) const;
    bool nullifier_spent(const crypto::FieldElement& h) const;
    size_t nullifier_count() const { return nullifiers_.size(); }

    const MerkleTree& tree() const { return tree_; }
    const std::vector<Transaction>& tx_log() const { return tx_log_; }
    const proofsys::Srs& verifier_srs() const { return srs_; }

    // Sum of balances plus escrow equals everything ever deposited.
    bool conservation_holds() const;

    // Digest of the full serialized state; equal digests mean equal states.
    crypto::Digest state_digest() const;

    json snapshot() const;
    static LedgerState restore(const json& snap);

    // One JSON record per line, append-only order.
    std::string tx_log_ldjson() const;

    // Recomputes the digest chain; false if any record was altered.
    bool validate_tx_chain() const;

private:
    Transaction append_tx(Transaction::Kind kind, json fields);
    void push_root(const crypto::FieldElement& rt);

    proofsys::Srs srs_;
    MerkleTree tree_;
    size_t root_history_;
    std::deque<std::string> recent_roots_;  // hex, newest at the back
    std::set<std::string> nullifiers_;      // hex
    std::map<std::string, Amount> balances_;  // pk hex -> amount
    std::vector<std::pair<uint64_t, uint64_t>> escrow_locks_;  // (leaf index, v) audit trail
    Amount escrow_pool_ = 0;
    Amount total_deposits_ = 0;
    uint64_t next_height_ = 0;
    std::vector<Transaction> tx_log_;
};

}  // namespace zkagree::ledger

#endif
