#ifndef ZKAGREE_BYTES_HPP
#define ZKAGREE_BYTES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zkagree/errors.hpp"

namespace zkagree {

using Bytes = std::vector<uint8_t>;

inline std::string to_hex(const uint8_t* data, size_t len) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (size_t i = 0; i < len; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0x0f]);
    }
    return out;
}

inline std::string to_hex(const Bytes& b) { return to_hex(b.data(), b.size()); }

inline int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

inline Bytes from_hex(const std::string& hex) {
    std::string h = hex;
    if (h.size() >= 2 && h[0] == '0' && (h[1] == 'x' || h[1] == 'X')) h = h.substr(2);
    if (h.size() % 2 != 0) raise(ErrorCode::ParseError, "odd-length hex string");
    Bytes out(h.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = hex_nibble(h[2 * i]);
        int lo = hex_nibble(h[2 * i + 1]);
        if (hi < 0 || lo < 0) raise(ErrorCode::ParseError, "invalid hex digit");
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return out;
}

inline void append_bytes(Bytes& out, const Bytes& more) {
    out.insert(out.end(), more.begin(), more.end());
}

inline void append_str(Bytes& out, const std::string& s) {
    out.insert(out.end(), s.begin(), s.end());
}

inline void append_u32le(Bytes& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

// splitmix64; the deterministic randomness source for seeded scenarios.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    uint64_t next_below(uint64_t bound) { return bound ? next_u64() % bound : 0; }

    void fill(uint8_t* out, size_t len) {
        size_t i = 0;
        while (i < len) {
            uint64_t w = next_u64();
            for (int b = 0; b < 8 && i < len; ++b, ++i) out[i] = static_cast<uint8_t>(w >> (8 * b));
        }
    }

    Bytes bytes(size_t len) {
        Bytes out(len);
        fill(out.data(), len);
        return out;
    }

    // Independent child stream, labelled so distinct roles never collide.
    Rng fork(const std::string& label) const {
        uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : label) {
            h ^= static_cast<uint8_t>(c);
            h *= 0x100000001b3ULL;
        }
        return Rng(state_ ^ h ^ 0xA5A5A5A55A5A5A5AULL);
    }

private:
    uint64_t state_;
};

}  // namespace zkagree

#endif
