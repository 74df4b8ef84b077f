#ifndef ZKAGREE_MERKLE_HPP
#define ZKAGREE_MERKLE_HPP

#include <vector>

#include "zkagree/hash.hpp"

namespace zkagree::ledger {

using crypto::FieldElement;

struct InclusionProof {
    std::vector<FieldElement> siblings;  // one per level, leaf to root
    std::vector<bool> dirs;              // true: node is the right child at that level
    FieldElement root;
    uint64_t leaf_index = 0;
};

// Append-only Merkle tree over field elements. Leaves fill left to right;
// absent subtrees hash as the zero-subtree digest of their level, so the
// root is defined at every fill level. Node hash is
// hash_fields({left, right}).
class MerkleTree {
public:
    explicit MerkleTree(size_t depth = 20);

    size_t depth() const { return depth_; }
    uint64_t capacity() const { return uint64_t{1} << depth_; }
    uint64_t next_index() const { return next_index_; }
    bool full() const { return next_index_ >= capacity(); }

    FieldElement root() const;

    // Appends a leaf, returns its index. Throws TreeFull.
    uint64_t insert(const FieldElement& leaf);

    // Proof for any previously inserted leaf against the current root.
    // Throws UnknownLeaf for indexes never inserted.
    InclusionProof inclusion_proof(uint64_t leaf_index) const;

    const std::vector<FieldElement>& leaves() const { return levels_[0]; }

    // Zero-subtree digest chain: zero_digest(0) = 0,
    // zero_digest(i+1) = H(zero_digest(i), zero_digest(i)).
    static const FieldElement& zero_digest(size_t level);

private:
    FieldElement node(size_t level, uint64_t index) const;

    size_t depth_;
    uint64_t next_index_ = 0;
    // levels_[l][i] = known node i at level l (level 0 = leaves).
    std::vector<std::vector<FieldElement>> levels_;
};

// Recomputes a root by walking an inclusion path; the verifier-side fold.
FieldElement recompute_root(const FieldElement& leaf, const InclusionProof& proof);

}  // namespace zkagree::ledger

#endif
