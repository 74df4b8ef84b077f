#include "zkagree/clc/value.hpp"

#include <algorithm>

namespace zkagree::clc {

std::string int128_to_string(Int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    std::string out;
    while (u > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

Int128 int128_from_string(const std::string& s) {
    if (s.empty()) raise(ErrorCode::ParseError, "empty integer");
    size_t i = 0;
    bool neg = false;
    if (s[0] == '-') {
        neg = true;
        i = 1;
        if (s.size() == 1) raise(ErrorCode::ParseError, "bare minus sign");
    }
    unsigned __int128 u = 0;
    constexpr unsigned __int128 kMax = ~static_cast<unsigned __int128>(0) >> 1;  // i128 max
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') raise(ErrorCode::ParseError, "invalid integer: " + s);
        unsigned digit = static_cast<unsigned>(s[i] - '0');
        if (u > (kMax - digit) / 10) raise(ErrorCode::ParseError, "integer out of range: " + s);
        u = u * 10 + digit;
    }
    Int128 v = static_cast<Int128>(u);
    return neg ? -v : v;
}

uint64_t u64_from_string(const std::string& s) {
    Int128 v = int128_from_string(s);
    if (v < 0 || v > static_cast<Int128>(UINT64_MAX))
        raise(ErrorCode::ParseError, "integer out of 64-bit range: " + s);
    return static_cast<uint64_t>(v);
}

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

unsigned __int128 u128_from_string(const std::string& s) {
    if (s.empty()) raise(ErrorCode::ParseError, "empty integer");
    unsigned __int128 u = 0;
    constexpr unsigned __int128 kMax = ~static_cast<unsigned __int128>(0);
    for (char c : s) {
        if (c < '0' || c > '9') raise(ErrorCode::ParseError, "invalid integer: " + s);
        unsigned digit = static_cast<unsigned>(c - '0');
        if (u > (kMax - digit) / 10) raise(ErrorCode::ParseError, "integer out of range: " + s);
        u = u * 10 + digit;
    }
    return u;
}

const char* value_type_name(ValueType t) {
    switch (t) {
        case ValueType::Int: return "int";
        case ValueType::Str: return "string";
        case ValueType::Bytes: return "bytes";
        case ValueType::Bool: return "bool";
    }
    return "?";
}

Bytes encode_values(std::span<const Value> values) {
    Bytes out;
    for (const Value& v : values) {
        switch (v.type) {
            case ValueType::Int: {
                std::string dec = int128_to_string(v.i);
                out.push_back('i');
                append_u32le(out, static_cast<uint32_t>(dec.size()));
                append_str(out, dec);
                break;
            }
            case ValueType::Str:
                out.push_back('s');
                append_u32le(out, static_cast<uint32_t>(v.s.size()));
                append_str(out, v.s);
                break;
            case ValueType::Bytes:
                out.push_back('b');
                append_u32le(out, static_cast<uint32_t>(v.b.size()));
                append_bytes(out, v.b);
                break;
            case ValueType::Bool:
                out.push_back('f');
                append_u32le(out, 1);
                out.push_back(v.flag ? 1 : 0);
                break;
        }
    }
    return out;
}

crypto::Digest message_digest(std::span<const Value> values) {
    return crypto::digest_document(encode_values(values));
}

}  // namespace zkagree::clc
