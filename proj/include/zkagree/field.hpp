#ifndef ZKAGREE_FIELD_HPP
#define ZKAGREE_FIELD_HPP

#include <array>
#include <cstdint>
#include <cstring>
#include <string>

#include "zkagree/bytes.hpp"
#include "zkagree/errors.hpp"

namespace zkagree::crypto {

// Thread-local tallies of field multiplications/additions, read by the
// relation-size benchmark.
struct OpCounters {
    uint64_t hash_calls = 0;
    uint64_t field_muls = 0;
    uint64_t field_adds = 0;
};

namespace detail {
inline thread_local OpCounters tl_counters;
}

inline OpCounters op_counters() { return detail::tl_counters; }
inline void reset_op_counters() { detail::tl_counters = OpCounters{}; }

// 256-bit little-endian limb vector.
struct U256 {
    uint64_t limbs[4];

    constexpr U256() : limbs{0, 0, 0, 0} {}
    constexpr explicit U256(uint64_t v) : limbs{v, 0, 0, 0} {}
    constexpr U256(uint64_t l0, uint64_t l1, uint64_t l2, uint64_t l3)
        : limbs{l0, l1, l2, l3} {}

    constexpr bool is_zero() const {
        return (limbs[0] | limbs[1] | limbs[2] | limbs[3]) == 0;
    }
    constexpr bool operator==(const U256& o) const {
        return limbs[0] == o.limbs[0] && limbs[1] == o.limbs[1] &&
               limbs[2] == o.limbs[2] && limbs[3] == o.limbs[3];
    }
    constexpr bool operator!=(const U256& o) const { return !(*this == o); }

    constexpr bool operator>=(const U256& o) const {
        for (int i = 3; i >= 0; --i) {
            if (limbs[i] > o.limbs[i]) return true;
            if (limbs[i] < o.limbs[i]) return false;
        }
        return true;
    }
    constexpr bool operator<(const U256& o) const { return !(*this >= o); }
};

namespace detail {

// BN254 scalar field
// p = 21888242871839275222246405745257275088548364400416034343698204186575808495617
inline constexpr U256 kModulus{0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                               0xb85045b68181585dULL, 0x30644e72e131a029ULL};
// R = 2^256 mod p
inline constexpr U256 kR{0xac96341c4ffffffbULL, 0x36fc76959f60cd29ULL,
                         0x666ea36f7879462eULL, 0x0e0a77c19a07df2fULL};
// R^2 mod p
inline constexpr U256 kR2{0x1bb8e645ae216da7ULL, 0x53fe3ab1e35c59e3ULL,
                          0x8c49833d53bb8085ULL, 0x0216d0b17f4e44a5ULL};
// -p^{-1} mod 2^64
inline constexpr uint64_t kInv = 0xc2e1f593efffffffULL;

inline U256 u256_add_nocarry(const U256& a, const U256& b) {
    U256 r;
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        carry += static_cast<unsigned __int128>(a.limbs[i]) + b.limbs[i];
        r.limbs[i] = static_cast<uint64_t>(carry);
        carry >>= 64;
    }
    return r;
}

inline U256 u256_sub_noborrow(const U256& a, const U256& b) {
    U256 r;
    unsigned __int128 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 d = static_cast<unsigned __int128>(a.limbs[i]) -
                              b.limbs[i] - static_cast<uint64_t>(borrow);
        r.limbs[i] = static_cast<uint64_t>(d);
        borrow = (d >> 64) ? 1 : 0;
    }
    return r;
}

inline U256 mod_add(const U256& a, const U256& b) {
    // a, b < p < 2^254, so a + b never wraps 2^256.
    U256 r = u256_add_nocarry(a, b);
    if (r >= kModulus) r = u256_sub_noborrow(r, kModulus);
    return r;
}

inline U256 mod_sub(const U256& a, const U256& b) {
    if (a >= b) return u256_sub_noborrow(a, b);
    return u256_sub_noborrow(u256_add_nocarry(a, kModulus), b);
}

// CIOS Montgomery multiplication, fixed 4 limbs.
inline U256 mont_mul(const U256& a, const U256& b) {
    uint64_t t[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 c = 0;
        for (int j = 0; j < 4; ++j) {
            c += static_cast<unsigned __int128>(a.limbs[i]) * b.limbs[j] + t[j];
            t[j] = static_cast<uint64_t>(c);
            c >>= 64;
        }
        c += t[4];
        t[4] = static_cast<uint64_t>(c);
        t[5] = static_cast<uint64_t>(c >> 64);

        uint64_t m = t[0] * kInv;
        c = static_cast<unsigned __int128>(m) * kModulus.limbs[0] + t[0];
        c >>= 64;
        for (int j = 1; j < 4; ++j) {
            c += static_cast<unsigned __int128>(m) * kModulus.limbs[j] + t[j];
            t[j - 1] = static_cast<uint64_t>(c);
            c >>= 64;
        }
        c += t[4];
        t[3] = static_cast<uint64_t>(c);
        t[4] = t[5] + static_cast<uint64_t>(c >> 64);
    }
    U256 r{t[0], t[1], t[2], t[3]};
    if (t[4] != 0 || r >= kModulus) r = u256_sub_noborrow(r, kModulus);
    return r;
}

inline U256 reduce_wide(const U256& v) {
    // v < 2^256 and 2^256 / p < 6, so a short subtraction loop suffices.
    U256 r = v;
    while (r >= kModulus) r = u256_sub_noborrow(r, kModulus);
    return r;
}

}  // namespace detail

// Element of the BN254 scalar field, held in Montgomery form.
class FieldElement {
public:
    FieldElement() : repr_{} {}

    static FieldElement zero() { return FieldElement(); }
    static FieldElement one() { return FieldElement(detail::kR); }

    static FieldElement from_u64(uint64_t v) {
        return FieldElement(detail::mont_mul(U256(v), detail::kR2));
    }

    // Interprets up to 32 little-endian bytes, reduced mod p.
    static FieldElement from_bytes_le(const uint8_t* data, size_t len) {
        U256 v;
        uint8_t buf[32] = {0};
        std::memcpy(buf, data, len > 32 ? 32 : len);
        for (int i = 0; i < 4; ++i) {
            uint64_t limb = 0;
            for (int b = 7; b >= 0; --b) limb = (limb << 8) | buf[i * 8 + b];
            v.limbs[i] = limb;
        }
        v = detail::reduce_wide(v);
        return FieldElement(detail::mont_mul(v, detail::kR2));
    }

    static FieldElement from_bytes_be(const uint8_t* data, size_t len) {
        uint8_t rev[32] = {0};
        size_t n = len > 32 ? 32 : len;
        for (size_t i = 0; i < n; ++i) rev[i] = data[len - 1 - i];
        return from_bytes_le(rev, 32);
    }

    static FieldElement from_hex(const std::string& hex) {
        Bytes b = zkagree::from_hex(hex);
        return from_bytes_be(b.data(), b.size());
    }

    // Canonical (non-Montgomery) value.
    U256 to_u256() const { return detail::mont_mul(repr_, U256(1)); }

    std::array<uint8_t, 32> to_bytes_be() const {
        U256 v = to_u256();
        std::array<uint8_t, 32> out{};
        for (int i = 0; i < 4; ++i)
            for (int b = 0; b < 8; ++b)
                out[31 - (i * 8 + b)] = static_cast<uint8_t>(v.limbs[i] >> (8 * b));
        return out;
    }

    std::string to_hex() const {
        auto b = to_bytes_be();
        return zkagree::to_hex(b.data(), b.size());
    }

    bool is_zero() const { return repr_.is_zero(); }

    FieldElement operator+(const FieldElement& o) const {
        ++detail::tl_counters.field_adds;
        return FieldElement(detail::mod_add(repr_, o.repr_));
    }
    FieldElement operator-(const FieldElement& o) const {
        ++detail::tl_counters.field_adds;
        return FieldElement(detail::mod_sub(repr_, o.repr_));
    }
    FieldElement operator*(const FieldElement& o) const {
        ++detail::tl_counters.field_muls;
        return FieldElement(detail::mont_mul(repr_, o.repr_));
    }
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement square() const { return *this * *this; }

    FieldElement pow(const U256& exp) const {
        FieldElement result = one();
        FieldElement base = *this;
        for (int i = 0; i < 256; ++i) {
            if ((exp.limbs[i / 64] >> (i % 64)) & 1) result *= base;
            base = base.square();
        }
        return result;
    }

    // Fermat inverse; inverse of zero is zero.
    FieldElement inverse() const {
        return pow(detail::u256_sub_noborrow(detail::kModulus, U256(2)));
    }

    bool operator==(const FieldElement& o) const { return repr_ == o.repr_; }
    bool operator!=(const FieldElement& o) const { return repr_ != o.repr_; }
    bool operator<(const FieldElement& o) const { return to_u256() < o.to_u256(); }

    static const U256& modulus() { return detail::kModulus; }

private:
    explicit FieldElement(const U256& mont_repr) : repr_(mont_repr) {}
    U256 repr_;
};

}  // namespace zkagree::crypto

#endif
