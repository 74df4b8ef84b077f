#ifndef ZKAGREE_CLC_VALUE_HPP
#define ZKAGREE_CLC_VALUE_HPP

#include <span>
#include <string>

#include "zkagree/hash.hpp"

namespace zkagree::clc {

// Logic arithmetic runs over signed 128-bit integers so that sums and
// products of base-unit amounts (up to ~1.2e19) stay exact.
using Int128 = __int128;

std::string int128_to_string(Int128 v);
Int128 int128_from_string(const std::string& s);
uint64_t u64_from_string(const std::string& s);

std::string u128_to_string(unsigned __int128 v);
unsigned __int128 u128_from_string(const std::string& s);

enum class ValueType { Int, Str, Bytes, Bool };

const char* value_type_name(ValueType t);

// Runtime value of the contract logic and of external inputs.
struct Value {
    ValueType type = ValueType::Int;
    Int128 i = 0;
    std::string s;
    Bytes b;
    bool flag = false;

    static Value of_int(Int128 v) { return Value{ValueType::Int, v, {}, {}, false}; }
    static Value of_str(std::string v) { return Value{ValueType::Str, 0, std::move(v), {}, false}; }
    static Value of_bytes(Bytes v) { return Value{ValueType::Bytes, 0, {}, std::move(v), false}; }
    static Value of_bool(bool v) { return Value{ValueType::Bool, 0, {}, {}, v}; }

    bool operator==(const Value& o) const {
        if (type != o.type) return false;
        switch (type) {
            case ValueType::Int: return i == o.i;
            case ValueType::Str: return s == o.s;
            case ValueType::Bytes: return b == o.b;
            case ValueType::Bool: return flag == o.flag;
        }
        return false;
    }
};

// Unambiguous byte encoding of a value list: per value a type tag, a 32-bit
// length and the payload (integers as decimal ASCII). This is the message
// format that contract-level signatures (e.g. an arbitrator decision) are
// made over.
Bytes encode_values(std::span<const Value> values);

// digest_document over encode_values; what signers of in-contract evidence
// actually sign.
crypto::Digest message_digest(std::span<const Value> values);

}  // namespace zkagree::clc

#endif
