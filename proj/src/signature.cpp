#include "zkagree/signature.hpp"

#include <sodium.h>

namespace zkagree::crypto {

namespace {

void ensure_sodium() {
    static const int rc = sodium_init();
    if (rc < 0) raise(ErrorCode::EntropyFailure, "libsodium initialization failed");
}

bool sk_well_formed(const SecretKey& sk) {
    // Ed25519 expanded secret keys carry the public key in the upper half;
    // an all-zero upper half never comes out of keygen.
    for (size_t i = 32; i < 64; ++i)
        if (sk[i] != 0) return true;
    return false;
}

}  // namespace

KeyPair keygen() {
    ensure_sodium();
    KeyPair kp;
    if (crypto_sign_keypair(kp.pk.data(), kp.sk.data()) != 0)
        raise(ErrorCode::EntropyFailure, "keypair generation failed");
    return kp;
}

KeyPair keygen_from_seed(const std::array<uint8_t, kKeySeedSize>& seed) {
    ensure_sodium();
    KeyPair kp;
    if (crypto_sign_seed_keypair(kp.pk.data(), kp.sk.data(), seed.data()) != 0)
        raise(ErrorCode::EntropyFailure, "seeded keypair generation failed");
    return kp;
}

KeyPair keygen_from_seed(uint64_t seed) {
    std::array<uint8_t, kKeySeedSize> raw{};
    Rng rng(seed);
    rng.fill(raw.data(), raw.size());
    return keygen_from_seed(raw);
}

Signature sign(const SecretKey& sk, const Digest& msg) {
    ensure_sodium();
    if (!sk_well_formed(sk)) raise(ErrorCode::MalformedKey, "secret key is not well-formed");
    auto bytes = msg.element.to_bytes_be();
    Signature sig{};
    if (crypto_sign_detached(sig.data(), nullptr, bytes.data(), bytes.size(), sk.data()) != 0)
        raise(ErrorCode::MalformedKey, "signing failed");
    return sig;
}

bool verify(const PublicKey& pk, const Digest& msg, const Signature& sig) {
    ensure_sodium();
    auto bytes = msg.element.to_bytes_be();
    return crypto_sign_verify_detached(sig.data(), bytes.data(), bytes.size(), pk.data()) == 0;
}

FieldElement pk_to_field(const PublicKey& pk) {
    Bytes raw(pk.begin(), pk.end());
    return digest_document(raw).element;
}

std::string pk_hex(const PublicKey& pk) { return to_hex(pk.data(), pk.size()); }
std::string sk_hex(const SecretKey& sk) { return to_hex(sk.data(), sk.size()); }
std::string sig_hex(const Signature& sig) { return to_hex(sig.data(), sig.size()); }

namespace {
template <size_t N>
std::array<uint8_t, N> array_from_hex(const std::string& h, const char* what) {
    Bytes b = from_hex(h);
    if (b.size() != N) raise(ErrorCode::ParseError, std::string(what) + ": bad length");
    std::array<uint8_t, N> out{};
    std::copy(b.begin(), b.end(), out.begin());
    return out;
}
}  // namespace

PublicKey pk_from_hex(const std::string& h) { return array_from_hex<32>(h, "public key"); }
SecretKey sk_from_hex(const std::string& h) { return array_from_hex<64>(h, "secret key"); }
Signature sig_from_hex(const std::string& h) { return array_from_hex<64>(h, "signature"); }

}  // namespace zkagree::crypto
