#include "zkagree/merkle.hpp"

namespace zkagree::ledger {

namespace {
constexpr size_t kMaxDepth = 32;
}

const FieldElement& MerkleTree::zero_digest(size_t level) {
    static const std::vector<FieldElement> chain = [] {
        std::vector<FieldElement> out;
        out.push_back(FieldElement::zero());
        for (size_t i = 0; i < kMaxDepth; ++i)
            out.push_back(crypto::hash_fields({out.back(), out.back()}));
        return out;
    }();
    return chain.at(level);
}

MerkleTree::MerkleTree(size_t depth) : depth_(depth), levels_(depth + 1) {
    if (depth == 0 || depth > kMaxDepth)
        raise(ErrorCode::InvalidValue, "merkle depth out of range");
}

FieldElement MerkleTree::node(size_t level, uint64_t index) const {
    const auto& row = levels_[level];
    return index < row.size() ? row[index] : zero_digest(level);
}

FieldElement MerkleTree::root() const { return node(depth_, 0); }

uint64_t MerkleTree::insert(const FieldElement& leaf) {
    if (full()) raise(ErrorCode::TreeFull, "merkle tree is full");
    uint64_t index = next_index_++;
    levels_[0].push_back(leaf);

    uint64_t idx = index;
    for (size_t level = 0; level < depth_; ++level) {
        uint64_t parent = idx >> 1;
        FieldElement left = node(level, parent * 2);
        FieldElement right = node(level, parent * 2 + 1);
        FieldElement digest = crypto::hash_fields({left, right});
        auto& row = levels_[level + 1];
        if (parent < row.size()) row[parent] = digest;
        else row.push_back(digest);  // parents materialize left to right too
        idx = parent;
    }
    return index;
}

InclusionProof MerkleTree::inclusion_proof(uint64_t leaf_index) const {
    if (leaf_index >= next_index_)
        raise(ErrorCode::UnknownLeaf, "leaf " + std::to_string(leaf_index) + " was never inserted");
    InclusionProof proof;
    proof.leaf_index = leaf_index;
    proof.siblings.reserve(depth_);
    proof.dirs.reserve(depth_);
    uint64_t idx = leaf_index;
    for (size_t level = 0; level < depth_; ++level) {
        proof.dirs.push_back(idx & 1);
        proof.siblings.push_back(node(level, idx ^ 1));
        idx >>= 1;
    }
    proof.root = root();
    return proof;
}

FieldElement recompute_root(const FieldElement& leaf, const InclusionProof& proof) {
    FieldElement cur = leaf;
    for (size_t i = 0; i < proof.siblings.size(); ++i) {
        cur = proof.dirs[i] ? crypto::hash_fields({proof.siblings[i], cur})
                            : crypto::hash_fields({cur, proof.siblings[i]});
    }
    return cur;
}

}  // namespace zkagree::ledger
