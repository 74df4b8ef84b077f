#ifndef ZKAGREE_PROOFSYS_HPP
#define ZKAGREE_PROOFSYS_HPP

#include <optional>

#include "zkagree/hash.hpp"

namespace zkagree::proofsys {

using crypto::FieldElement;

inline constexpr size_t kMerkleDepth = 20;

// Public parameters of the active proof backend. The transparent backend
// derives them deterministically, so setup is untrusted and repeatable.
struct Srs {
    std::string backend_id;
    Bytes parameters;
    uint64_t max_relation_size = 0;

    FieldElement srs_digest() const;
};

// Commitment relation:
//   h = hash_fields([k])  and  clc_comm = hash_fields([k, pd])
struct CommitStatement {
    FieldElement h;
    FieldElement clc_comm;

    bool operator==(const CommitStatement&) const = default;
    Bytes to_bytes() const;
    static CommitStatement from_bytes(const Bytes& b);
};

struct CommitWitness {
    FieldElement k;   // nullifier
    FieldElement pd;  // program digest
};

// Evaluation relation: the commitment recomputed from (k, pd) is a member of
// the Merkle tree with root rt along (siblings, dirs), h is the nullifier
// hash, and 0 <= rat_numerator <= v. parties_digest and the pair
// (rat_numerator, v) are carried as public inputs; clc_comm itself never
// appears in the statement.
struct EvalStatement {
    FieldElement rt;
    FieldElement h;
    FieldElement parties_digest;
    uint64_t rat_numerator = 0;
    uint64_t v = 0;

    bool operator==(const EvalStatement&) const = default;
    Bytes to_bytes() const;
    static EvalStatement from_bytes(const Bytes& b);
};

struct EvalWitness {
    FieldElement k;
    FieldElement pd;
    std::array<FieldElement, kMerkleDepth> merkle_path{};
    std::array<bool, kMerkleDepth> merkle_dirs{};  // true: leaf side is the right child
};

// Statement bytes plus opaque proof bytes from the active backend.
struct ProofBundle {
    std::string backend_id;
    Bytes statement;
    Bytes proof;

    // Length-prefixed binary layout, stable across runs for the transparent
    // backend.
    Bytes serialize() const;
    static ProofBundle deserialize(const Bytes& b);
};

inline constexpr const char* kTransparentBackend = "transparent-v1";

// Deterministic for the transparent backend; max_relation_size must cover
// both protocol relations (the evaluation relation needs 22 hash
// invocations).
Srs setup(uint32_t security_param, uint64_t max_relation_size);

// Derives the statement from the witness, so the result satisfies the
// commitment relation by construction.
std::pair<CommitStatement, ProofBundle> prove_commit(const Srs& srs, const CommitWitness& witness);

// Throws RelationUnsatisfied when the witness does not satisfy the relation
// against the given statement (stale root, wrong nullifier, ratio out of
// bounds).
ProofBundle prove_eval(const Srs& srs, const EvalWitness& witness, const EvalStatement& statement);

// Deterministic accept/reject. Malformed bytes reject rather than throw.
bool verify(const Srs& srs, const Bytes& statement, const ProofBundle& proof);

// Straight-line relation checks, shared by prover and verifier. These are
// the only places protocol hashes happen inside the proof system, which is
// what the relation-size benchmark counts.
bool check_commit_relation(const CommitStatement& st, const CommitWitness& w);
bool check_eval_relation(const EvalStatement& st, const EvalWitness& w);

// Merkle fold used by the evaluation relation; exposed for oracles/tests.
FieldElement fold_merkle_path(const FieldElement& leaf,
                              std::span<const FieldElement> siblings,
                              std::span<const bool> dirs);

}  // namespace zkagree::proofsys

#endif
