#ifndef ZKAGREE_HASH_HPP
#define ZKAGREE_HASH_HPP

#include <span>
#include <vector>

#include "zkagree/field.hpp"

namespace zkagree::crypto {

// Field-native digest. Every protocol hash (nullifier hash, program digest,
// commitment, Merkle nodes, statement binding) is one of these.
struct Digest {
    FieldElement element;

    bool operator==(const Digest& o) const { return element == o.element; }
    bool operator!=(const Digest& o) const { return element != o.element; }
    std::string to_hex() const { return element.to_hex(); }
    static Digest from_hex(const std::string& h) { return Digest{FieldElement::from_hex(h)}; }
};

inline constexpr size_t kMaxHashInputs = 16;

// Algebraic sponge over the BN254 scalar field (t=3 permutation, x^5 S-box,
// 8 full / 56 partial rounds, capacity seeded with the input length).
// Accepts 1..16 elements. hash_fields({left, right}) doubles as the Merkle
// node hash.
FieldElement hash_fields(std::span<const FieldElement> inputs);
FieldElement hash_fields(std::initializer_list<FieldElement> inputs);

// Digest of a canonical byte string: 31-byte little-endian chunks, the last
// chunk zero-padded, folded left through hash_fields. The empty string maps
// to hash_fields({0}).
Digest digest_document(std::span<const uint8_t> doc);
Digest digest_document(const Bytes& doc);

}  // namespace zkagree::crypto

#endif
