#ifndef ZKAGREE_SIGNATURE_HPP
#define ZKAGREE_SIGNATURE_HPP

#include <array>

#include "zkagree/hash.hpp"

namespace zkagree::crypto {

inline constexpr size_t kPublicKeySize = 32;
inline constexpr size_t kSecretKeySize = 64;
inline constexpr size_t kSignatureSize = 64;
inline constexpr size_t kKeySeedSize = 32;

using PublicKey = std::array<uint8_t, kPublicKeySize>;
using SecretKey = std::array<uint8_t, kSecretKeySize>;
using Signature = std::array<uint8_t, kSignatureSize>;

struct KeyPair {
    PublicKey pk{};
    SecretKey sk{};
};

// Fresh keypair from the system entropy source (Ed25519).
KeyPair keygen();

// Deterministic keypair from a 32-byte seed; used by seeded scenarios.
KeyPair keygen_from_seed(const std::array<uint8_t, kKeySeedSize>& seed);
KeyPair keygen_from_seed(uint64_t seed);

// Signs the 32-byte big-endian encoding of the digest.
Signature sign(const SecretKey& sk, const Digest& msg);

// Accept/reject; malformed inputs reject rather than throw.
bool verify(const PublicKey& pk, const Digest& msg, const Signature& sig);

// Field encoding of a public key for use inside proof statements.
FieldElement pk_to_field(const PublicKey& pk);

std::string pk_hex(const PublicKey& pk);
std::string sk_hex(const SecretKey& sk);
std::string sig_hex(const Signature& sig);
PublicKey pk_from_hex(const std::string& h);
SecretKey sk_from_hex(const std::string& h);
Signature sig_from_hex(const std::string& h);

}  // namespace zkagree::crypto

#endif
