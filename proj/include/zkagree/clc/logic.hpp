#ifndef ZKAGREE_CLC_LOGIC_HPP
#define ZKAGREE_CLC_LOGIC_HPP

#include <map>
#include <memory>
#include <vector>

#include "zkagree/clc/value.hpp"
#include "zkagree/signature.hpp"

namespace zkagree::clc {

enum class BinOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expression node. Immutable once built, so documents sharing a program can
// be copied freely.
struct Expr {
    enum class Kind {
        IntLit,    // int_lit
        StrLit,    // str_lit
        TermRef,   // name
        InputRef,  // name
        ValueRef,  // the contract value v
        Binary,    // op, lhs, rhs
        Not,       // lhs
        VerifySig, // name = party role, args = message exprs, sig = signature expr
    };

    Kind kind;
    uint64_t int_lit = 0;
    std::string str_lit;
    std::string name;
    BinOp op = BinOp::Add;
    ExprPtr lhs, rhs;
    std::vector<ExprPtr> args;
    ExprPtr sig;
    int line = 0, col = 0;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
    enum class Kind { Enforce, If, ApproveFull, Reject, Ratio };

    Kind kind;
    ExprPtr expr;  // Enforce predicate / If condition / Ratio numerator
    std::vector<StmtPtr> then_body;
    std::vector<StmtPtr> else_body;
    int line = 0, col = 0;
};

// The executable clause body of a contract (component L).
struct LogicProgram {
    std::vector<StmtPtr> body;
};

enum class InputType { Int, Str, Bytes };
using DataSchema = std::map<std::string, InputType>;

enum class TermType { Int, Str };
struct TermValue {
    TermType type = TermType::Int;
    uint64_t i = 0;
    std::string s;

    static TermValue of_int(uint64_t v) { return TermValue{TermType::Int, v, {}}; }
    static TermValue of_str(std::string v) { return TermValue{TermType::Str, 0, std::move(v)}; }
    bool operator==(const TermValue&) const = default;
    Value to_value() const {
        return type == TermType::Int ? Value::of_int(static_cast<Int128>(i)) : Value::of_str(s);
    }
};
using Terms = std::map<std::string, TermValue>;

struct Party {
    std::string display_name;
    crypto::PublicKey pk{};
    bool operator==(const Party&) const = default;
};
using Parties = std::map<std::string, Party>;

using ExternalInputs = std::map<std::string, Value>;

// Evaluation result. ApproveFull carries numerator == v, Reject carries 0.
struct Outcome {
    enum class Kind { ApproveFull, Reject, Ratio };
    Kind kind = Kind::Reject;
    uint64_t numerator = 0;

    bool operator==(const Outcome&) const = default;
    static Outcome approve_full(uint64_t v) { return {Kind::ApproveFull, v}; }
    static Outcome reject() { return {Kind::Reject, 0}; }
    static Outcome ratio(uint64_t n) { return {Kind::Ratio, n}; }
};

const char* outcome_kind_name(Outcome::Kind k);
Outcome::Kind outcome_kind_from_name(const std::string& s);

// Static checks: every referenced input is declared, every referenced term
// exists, operators are well typed, verify_sig appears only under enforce,
// and every path through the program ends in an outcome. Throws TypeError /
// SchemaError.
void type_check(const LogicProgram& program, const Terms& terms, const DataSchema& schema,
                const Parties& parties);

// Canonical text of a program: fully parenthesized, no insignificant
// whitespace. Input to the enclave measurement and to canonical(doc).
std::string logic_canonical(const LogicProgram& program);

// Pure, total evaluation of a type-checked program on schema-conforming
// inputs. Enforce failures, signature failures, arithmetic faults and
// out-of-range ratios all come back as Reject; nothing throws.
Outcome evaluate_logic(const LogicProgram& program, const Terms& terms, uint64_t value_v,
                       const Parties& parties, const ExternalInputs& inputs);

// Inputs-vs-schema conformance; throws SchemaViolation on any mismatch.
void validate_inputs(const DataSchema& schema, const ExternalInputs& inputs);

}  // namespace zkagree::clc

#endif
