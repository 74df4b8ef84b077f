#include "zkagree/ledger.hpp"

#include "zkagree/clc/value.hpp"

namespace zkagree::ledger {

namespace {

constexpr int kSchemaVersion = 1;

std::string amount_str(Amount v) { return clc::u128_to_string(v); }

Amount amount_from(const json& j) { return clc::u128_from_string(j.get<std::string>()); }

}  // namespace

const char* tx_kind_name(Transaction::Kind k) {
    return k == Transaction::Kind::Commit ? "COMMIT" : "SETTLE";
}

json Transaction::to_json() const {
    return json{{"height", height},
                {"kind", tx_kind_name(kind)},
                {"fields", fields},
                {"prev_digest", prev_digest.to_hex()},
                {"digest", digest.to_hex()}};
}

Transaction Transaction::from_json(const json& j) {
    Transaction tx;
    tx.height = j.at("height").get<uint64_t>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "COMMIT") tx.kind = Kind::Commit;
    else if (kind == "SETTLE") tx.kind = Kind::Settle;
    else raise(ErrorCode::ParseError, "unknown tx kind: " + kind);
    tx.fields = j.at("fields");
    tx.prev_digest = crypto::Digest::from_hex(j.at("prev_digest").get<std::string>());
    tx.digest = crypto::Digest::from_hex(j.at("digest").get<std::string>());
    return tx;
}

LedgerState::LedgerState(proofsys::Srs verifier_srs, size_t tree_depth, size_t root_history)
    : srs_(std::move(verifier_srs)), tree_(tree_depth), root_history_(root_history) {
    if (root_history_ == 0) raise(ErrorCode::InvalidValue, "root history must be positive");
    push_root(tree_.root());
}

void LedgerState::push_root(const crypto::FieldElement& rt) {
    recent_roots_.push_back(rt.to_hex());
    while (recent_roots_.size() > root_history_) recent_roots_.pop_front();
}

bool LedgerState::is_recent_root(const crypto::FieldElement& rt) const {
    std::string hex = rt.to_hex();
    for (const auto& r : recent_roots_)
        if (r == hex) return true;
    return false;
}

bool LedgerState::nullifier_spent(const crypto::FieldElement& h) const {
    return nullifiers_.count(h.to_hex()) > 0;
}

Amount LedgerState::balance(const crypto::PublicKey& who) const {
    auto it = balances_.find(crypto::pk_hex(who));
    return it == balances_.end() ? 0 : it->second;
}

void LedgerState::fund(const crypto::PublicKey& who, uint64_t amount) {
    if (amount == 0) raise(ErrorCode::InvalidValue, "deposit must be positive");
    balances_[crypto::pk_hex(who)] += amount;
    total_deposits_ += amount;
}

Transaction LedgerState::append_tx(Transaction::Kind kind, json fields) {
    Transaction tx;
    tx.kind = kind;
    tx.height = next_height_;
    tx.fields = std::move(fields);
    tx.prev_digest = tx_log_.empty() ? crypto::Digest{crypto::FieldElement::zero()}
                                     : tx_log_.back().digest;
    json preimage{{"height", tx.height},
                  {"kind", tx_kind_name(kind)},
                  {"fields", tx.fields},
                  {"prev_digest", tx.prev_digest.to_hex()}};
    std::string dump = preimage.dump();
    tx.digest = crypto::digest_document(Bytes(dump.begin(), dump.end()));
    ++next_height_;
    tx_log_.push_back(tx);
    return tx;
}

Transaction LedgerState::submit_commitment(const crypto::FieldElement& clc_comm, uint64_t v,
                                           const crypto::PublicKey& depositor) {
    if (v == 0) raise(ErrorCode::InvalidValue, "contract value must be positive");
    if (tree_.full()) raise(ErrorCode::TreeFull, "commitment tree is full");
    std::string pk = crypto::pk_hex(depositor);
    auto it = balances_.find(pk);
    if (it == balances_.end() || it->second < v)
        raise(ErrorCode::InsufficientFunds, "depositor balance below contract value");

    it->second -= v;
    escrow_pool_ += v;
    uint64_t leaf_index = tree_.insert(clc_comm);
    escrow_locks_.emplace_back(leaf_index, v);
    push_root(tree_.root());

    return append_tx(Transaction::Kind::Commit,
                     json{{"clc_comm", clc_comm.to_hex()},
                          {"v", amount_str(v)},
                          {"leaf_index", leaf_index},
                          {"root", tree_.root().to_hex()},
                          {"depositor", pk}});
}

InclusionProof LedgerState::inclusion_proof(uint64_t leaf_index) const {
    return tree_.inclusion_proof(leaf_index);
}

Transaction LedgerState::settle(const proofsys::ProofBundle& proof,
                                const proofsys::EvalStatement& statement,
                                const crypto::PublicKey& payee_ratio,
                                const crypto::PublicKey& payee_complement) {
    // Check order mirrors the on-chain contract; nothing below mutates state
    // until every check has passed.
    if (nullifier_spent(statement.h))
        raise(ErrorCode::NullifierSpent, "nullifier hash already spent");
    if (!is_recent_root(statement.rt))
        raise(ErrorCode::StaleRoot, "statement root is not a recent tree root");
    if (!proofsys::verify(srs_, statement.to_bytes(), proof))
        raise(ErrorCode::InvalidProof, "proof verification failed");
    if (escrow_pool_ < statement.v)
        raise(ErrorCode::InsufficientEscrow, "escrow pool below settlement value");

    uint64_t ratio_amount = statement.rat_numerator;
    uint64_t complement_amount = statement.v - statement.rat_numerator;

    nullifiers_.insert(statement.h.to_hex());
    escrow_pool_ -= statement.v;
    balances_[crypto::pk_hex(payee_ratio)] += ratio_amount;
    balances_[crypto::pk_hex(payee_complement)] += complement_amount;

    return append_tx(Transaction::Kind::Settle,
                     json{{"h", statement.h.to_hex()},
                          {"rt", statement.rt.to_hex()},
                          {"parties_digest", statement.parties_digest.to_hex()},
                          {"rat_numerator", amount_str(statement.rat_numerator)},
                          {"v", amount_str(statement.v)},
                          {"payee_ratio", crypto::pk_hex(payee_ratio)},
                          {"payee_complement", crypto::pk_hex(payee_complement)},
                          {"proof", to_hex(proof.serialize())}});
}

bool LedgerState::conservation_holds() const {
    Amount total = escrow_pool_;
    for (const auto& [pk, bal] : balances_) {
        (void)pk;
        total += bal;
    }
    return total == total_deposits_;
}

json LedgerState::snapshot() const {
    json leaves = json::array();
    for (const auto& leaf : tree_.leaves()) leaves.push_back(leaf.to_hex());
    json roots = json::array();
    for (const auto& r : recent_roots_) roots.push_back(r);
    json nulls = json::array();
    for (const auto& n : nullifiers_) nulls.push_back(n);
    json bals = json::object();
    for (const auto& [pk, bal] : balances_) bals[pk] = amount_str(bal);
    json locks = json::array();
    for (const auto& [idx, v] : escrow_locks_)
        locks.push_back(json{{"leaf_index", idx}, {"v", amount_str(v)}});
    json txs = json::array();
    for (const auto& tx : tx_log_) txs.push_back(tx.to_json());

    return json{{"schema_version", kSchemaVersion},
                {"tree_depth", tree_.depth()},
                {"root_history", root_history_},
                {"srs", {{"backend_id", srs_.backend_id},
                         {"parameters", to_hex(srs_.parameters)},
                         {"max_relation_size", srs_.max_relation_size}}},
                {"leaves", leaves},
                {"recent_roots", roots},
                {"nullifiers", nulls},
                {"balances", bals},
                {"escrow_locks", locks},
                {"escrow_pool", amount_str(escrow_pool_)},
                {"total_deposits", amount_str(total_deposits_)},
                {"tx_log", txs}};
}

LedgerState LedgerState::restore(const json& snap) {
    if (snap.at("schema_version").get<int>() != kSchemaVersion)
        raise(ErrorCode::ParseError, "unsupported ledger snapshot version");
    proofsys::Srs srs;
    srs.backend_id = snap.at("srs").at("backend_id").get<std::string>();
    srs.parameters = from_hex(snap.at("srs").at("parameters").get<std::string>());
    srs.max_relation_size = snap.at("srs").at("max_relation_size").get<uint64_t>();

    LedgerState out(srs, snap.at("tree_depth").get<size_t>(), snap.at("root_history").get<size_t>());
    out.recent_roots_.clear();
    for (const auto& leaf : snap.at("leaves"))
        out.tree_.insert(crypto::FieldElement::from_hex(leaf.get<std::string>()));
    for (const auto& r : snap.at("recent_roots")) out.recent_roots_.push_back(r.get<std::string>());
    for (const auto& n : snap.at("nullifiers")) out.nullifiers_.insert(n.get<std::string>());
    for (const auto& [pk, bal] : snap.at("balances").items())
        out.balances_[pk] = amount_from(bal);
    for (const auto& lock : snap.at("escrow_locks"))
        out.escrow_locks_.emplace_back(lock.at("leaf_index").get<uint64_t>(),
                                       clc::u64_from_string(lock.at("v").get<std::string>()));
    out.escrow_pool_ = amount_from(snap.at("escrow_pool"));
    out.total_deposits_ = amount_from(snap.at("total_deposits"));
    for (const auto& tx : snap.at("tx_log")) out.tx_log_.push_back(Transaction::from_json(tx));
    out.next_height_ = out.tx_log_.empty() ? 0 : out.tx_log_.back().height + 1;
    return out;
}

crypto::Digest LedgerState::state_digest() const {
    std::string dump = snapshot().dump();
    return crypto::digest_document(Bytes(dump.begin(), dump.end()));
}

std::string LedgerState::tx_log_ldjson() const {
    std::string out;
    for (const auto& tx : tx_log_) {
        out += tx.to_json().dump();
        out += '\n';
    }
    return out;
}

bool LedgerState::validate_tx_chain() const {
    crypto::Digest prev{crypto::FieldElement::zero()};
    for (const auto& tx : tx_log_) {
        if (tx.prev_digest != prev) return false;
        json preimage{{"height", tx.height},
                      {"kind", tx_kind_name(tx.kind)},
                      {"fields", tx.fields},
                      {"prev_digest", tx.prev_digest.to_hex()}};
        std::string dump = preimage.dump();
        if (tx.digest != crypto::digest_document(Bytes(dump.begin(), dump.end()))) return false;
        prev = tx.digest;
    }
    return true;
}

}  // namespace zkagree::ledger
