#include "zkagree/clc/logic.hpp"

#include <optional>
#include <sstream>

namespace zkagree::clc {

namespace {

std::string at(int line, int col) {
    return "line " + std::to_string(line) + ":" + std::to_string(col);
}

const char* binop_text(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::And: return "and";
        case BinOp::Or: return "or";
    }
    return "?";
}

bool is_comparison(BinOp op) {
    return op == BinOp::Eq || op == BinOp::Ne || op == BinOp::Lt || op == BinOp::Le ||
           op == BinOp::Gt || op == BinOp::Ge;
}

bool is_arith(BinOp op) {
    return op == BinOp::Add || op == BinOp::Sub || op == BinOp::Mul || op == BinOp::Div;
}

// ---------------------------------------------------------------------------
// type checking
// ---------------------------------------------------------------------------

struct CheckContext {
    const Terms* terms;
    const DataSchema* schema;
    const Parties* parties;
};

ValueType input_value_type(InputType t) {
    switch (t) {
        case InputType::Int: return ValueType::Int;
        case InputType::Str: return ValueType::Str;
        case InputType::Bytes: return ValueType::Bytes;
    }
    return ValueType::Int;
}

ValueType check_expr(const CheckContext& ctx, const Expr& e, bool enforce_position) {
    switch (e.kind) {
        case Expr::Kind::IntLit:
            return ValueType::Int;
        case Expr::Kind::StrLit:
            return ValueType::Str;
        case Expr::Kind::ValueRef:
            return ValueType::Int;
        case Expr::Kind::TermRef: {
            auto it = ctx.terms->find(e.name);
            if (it == ctx.terms->end())
                raise(ErrorCode::SchemaError, "unknown term '" + e.name + "' at " + at(e.line, e.col));
            return it->second.type == TermType::Int ? ValueType::Int : ValueType::Str;
        }
        case Expr::Kind::InputRef: {
            auto it = ctx.schema->find(e.name);
            if (it == ctx.schema->end())
                raise(ErrorCode::SchemaError,
                      "undeclared external input '" + e.name + "' at " + at(e.line, e.col));
            return input_value_type(it->second);
        }
        case Expr::Kind::Not: {
            ValueType t = check_expr(ctx, *e.lhs, false);
            if (t != ValueType::Bool)
                raise(ErrorCode::TypeError, "'not' needs a boolean at " + at(e.line, e.col));
            return ValueType::Bool;
        }
        case Expr::Kind::Binary: {
            ValueType lt = check_expr(ctx, *e.lhs, false);
            ValueType rt = check_expr(ctx, *e.rhs, false);
            if (e.op == BinOp::And || e.op == BinOp::Or) {
                if (lt != ValueType::Bool || rt != ValueType::Bool)
                    raise(ErrorCode::TypeError,
                          std::string("'") + binop_text(e.op) + "' needs booleans at " + at(e.line, e.col));
                return ValueType::Bool;
            }
            if (is_arith(e.op)) {
                if (lt != ValueType::Int || rt != ValueType::Int)
                    raise(ErrorCode::TypeError,
                          std::string("operator '") + binop_text(e.op) + "' needs integers at " +
                              at(e.line, e.col));
                return ValueType::Int;
            }
            // comparison
            if (lt != rt)
                raise(ErrorCode::TypeError,
                      "comparison of mismatched types at " + at(e.line, e.col));
            if (lt == ValueType::Bool)
                raise(ErrorCode::TypeError, "booleans are not comparable at " + at(e.line, e.col));
            if ((e.op != BinOp::Eq && e.op != BinOp::Ne) && lt != ValueType::Int)
                raise(ErrorCode::TypeError,
                      "ordering comparison needs integers at " + at(e.line, e.col));
            return ValueType::Bool;
        }
        case Expr::Kind::VerifySig: {
            if (!enforce_position)
                raise(ErrorCode::TypeError,
                      "verify_sig may appear only directly under enforce at " + at(e.line, e.col));
            if (ctx.parties->find(e.name) == ctx.parties->end())
                raise(ErrorCode::SchemaError,
                      "verify_sig references unknown party '" + e.name + "' at " + at(e.line, e.col));
            if (e.args.empty())
                raise(ErrorCode::TypeError, "verify_sig needs a non-empty message at " + at(e.line, e.col));
            for (const auto& a : e.args) check_expr(ctx, *a, false);
            if (check_expr(ctx, *e.sig, false) != ValueType::Bytes)
                raise(ErrorCode::TypeError,
                      "verify_sig signature argument must be bytes at " + at(e.line, e.col));
            return ValueType::Bool;
        }
    }
    raise(ErrorCode::TypeError, "malformed expression");
}

// Returns true when every path through the block reaches an outcome.
bool check_block(const CheckContext& ctx, const std::vector<StmtPtr>& body) {
    bool terminated = false;
    for (const auto& sp : body) {
        const Stmt& s = *sp;
        switch (s.kind) {
            case Stmt::Kind::Enforce:
                if (check_expr(ctx, *s.expr, true) != ValueType::Bool)
                    raise(ErrorCode::TypeError, "enforce needs a boolean at " + at(s.line, s.col));
                break;
            case Stmt::Kind::ApproveFull:
            case Stmt::Kind::Reject:
                terminated = true;
                break;
            case Stmt::Kind::Ratio:
                if (check_expr(ctx, *s.expr, false) != ValueType::Int)
                    raise(ErrorCode::TypeError, "ratio needs an integer at " + at(s.line, s.col));
                terminated = true;
                break;
            case Stmt::Kind::If: {
                if (check_expr(ctx, *s.expr, false) != ValueType::Bool)
                    raise(ErrorCode::TypeError, "if condition must be boolean at " + at(s.line, s.col));
                bool t_then = check_block(ctx, s.then_body);
                bool t_else = check_block(ctx, s.else_body);
                terminated = terminated || (t_then && t_else && !s.else_body.empty());
                break;
            }
        }
        if (terminated) break;  // anything after a guaranteed outcome is unreachable
    }
    return terminated;
}

// ---------------------------------------------------------------------------
// canonical printing
// ---------------------------------------------------------------------------

void print_escaped(std::ostream& os, const std::string& s) {
    os << '"';
    for (unsigned char c : s) {
        if (c == '"' || c == '\\') os << '\\' << c;
        else if (c == '\n') os << "\\n";
        else if (c == '\t') os << "\\t";
        else if (c < 0x20) {
            static const char* hexd = "0123456789abcdef";
            os << "\\x" << hexd[c >> 4] << hexd[c & 0xf];
        } else os << c;
    }
    os << '"';
}

void print_expr(std::ostream& os, const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::IntLit: os << e.int_lit; break;
        case Expr::Kind::StrLit: print_escaped(os, e.str_lit); break;
        case Expr::Kind::TermRef: os << e.name; break;
        case Expr::Kind::InputRef: os << "input." << e.name; break;
        case Expr::Kind::ValueRef: os << "value"; break;
        case Expr::Kind::Not:
            os << "(not ";
            print_expr(os, *e.lhs);
            os << ')';
            break;
        case Expr::Kind::Binary:
            os << '(';
            print_expr(os, *e.lhs);
            if (e.op == BinOp::And || e.op == BinOp::Or)
                os << ' ' << binop_text(e.op) << ' ';
            else
                os << binop_text(e.op);
            print_expr(os, *e.rhs);
            os << ')';
            break;
        case Expr::Kind::VerifySig:
            os << "verify_sig(" << e.name << ",[";
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) os << ',';
                print_expr(os, *e.args[i]);
            }
            os << "],";
            print_expr(os, *e.sig);
            os << ')';
            break;
    }
}

void print_block(std::ostream& os, const std::vector<StmtPtr>& body);

void print_stmt(std::ostream& os, const Stmt& s) {
    switch (s.kind) {
        case Stmt::Kind::Enforce:
            os << "enforce ";
            print_expr(os, *s.expr);
            os << ';';
            break;
        case Stmt::Kind::ApproveFull: os << "approve_full;"; break;
        case Stmt::Kind::Reject: os << "reject;"; break;
        case Stmt::Kind::Ratio:
            os << "ratio ";
            print_expr(os, *s.expr);
            os << ';';
            break;
        case Stmt::Kind::If:
            os << "if(";
            print_expr(os, *s.expr);
            os << ')';
            print_block(os, s.then_body);
            if (!s.else_body.empty()) {
                os << "else";
                print_block(os, s.else_body);
            }
            break;
    }
}

void print_block(std::ostream& os, const std::vector<StmtPtr>& body) {
    os << '{';
    for (const auto& s : body) print_stmt(os, *s);
    os << '}';
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

// Any condition that would make evaluation partial (enforce/signature
// failure, division by zero, 128-bit overflow, ratio out of range) unwinds
// through this sentinel and becomes a Reject outcome.
struct RejectSignal {};

struct EvalContext {
    const Terms* terms;
    uint64_t value_v;
    const Parties* parties;
    const ExternalInputs* inputs;
};

Value eval_expr(const EvalContext& ctx, const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::IntLit:
            return Value::of_int(static_cast<Int128>(e.int_lit));
        case Expr::Kind::StrLit:
            return Value::of_str(e.str_lit);
        case Expr::Kind::ValueRef:
            return Value::of_int(static_cast<Int128>(ctx.value_v));
        case Expr::Kind::TermRef:
            return ctx.terms->at(e.name).to_value();
        case Expr::Kind::InputRef:
            return ctx.inputs->at(e.name);
        case Expr::Kind::Not:
            return Value::of_bool(!eval_expr(ctx, *e.lhs).flag);
        case Expr::Kind::Binary: {
            if (e.op == BinOp::And) {
                if (!eval_expr(ctx, *e.lhs).flag) return Value::of_bool(false);
                return Value::of_bool(eval_expr(ctx, *e.rhs).flag);
            }
            if (e.op == BinOp::Or) {
                if (eval_expr(ctx, *e.lhs).flag) return Value::of_bool(true);
                return Value::of_bool(eval_expr(ctx, *e.rhs).flag);
            }
            Value l = eval_expr(ctx, *e.lhs);
            Value r = eval_expr(ctx, *e.rhs);
            if (is_arith(e.op)) {
                Int128 out = 0;
                bool fault = false;
                switch (e.op) {
                    case BinOp::Add: fault = __builtin_add_overflow(l.i, r.i, &out); break;
                    case BinOp::Sub: fault = __builtin_sub_overflow(l.i, r.i, &out); break;
                    case BinOp::Mul: fault = __builtin_mul_overflow(l.i, r.i, &out); break;
                    case BinOp::Div:
                        if (r.i == 0) fault = true;
                        else out = l.i / r.i;
                        break;
                    default: break;
                }
                if (fault) throw RejectSignal{};
                return Value::of_int(out);
            }
            switch (e.op) {
                case BinOp::Eq: return Value::of_bool(l == r);
                case BinOp::Ne: return Value::of_bool(!(l == r));
                case BinOp::Lt: return Value::of_bool(l.i < r.i);
                case BinOp::Le: return Value::of_bool(l.i <= r.i);
                case BinOp::Gt: return Value::of_bool(l.i > r.i);
                case BinOp::Ge: return Value::of_bool(l.i >= r.i);
                default: break;
            }
            throw RejectSignal{};
        }
        case Expr::Kind::VerifySig: {
            std::vector<Value> msg;
            msg.reserve(e.args.size());
            for (const auto& a : e.args) msg.push_back(eval_expr(ctx, *a));
            Value sig = eval_expr(ctx, *e.sig);
            const Party& party = ctx.parties->at(e.name);
            if (sig.b.size() != crypto::kSignatureSize) return Value::of_bool(false);
            crypto::Signature s{};
            std::copy(sig.b.begin(), sig.b.end(), s.begin());
            return Value::of_bool(crypto::verify(party.pk, message_digest(msg), s));
        }
    }
    throw RejectSignal{};
}

std::optional<Outcome> eval_block(const EvalContext& ctx, const std::vector<StmtPtr>& body) {
    for (const auto& sp : body) {
        const Stmt& s = *sp;
        switch (s.kind) {
            case Stmt::Kind::Enforce:
                if (!eval_expr(ctx, *s.expr).flag) throw RejectSignal{};
                break;
            case Stmt::Kind::ApproveFull:
                return Outcome::approve_full(ctx.value_v);
            case Stmt::Kind::Reject:
                return Outcome::reject();
            case Stmt::Kind::Ratio: {
                Int128 n = eval_expr(ctx, *s.expr).i;
                if (n < 0 || n > static_cast<Int128>(ctx.value_v)) throw RejectSignal{};
                return Outcome::ratio(static_cast<uint64_t>(n));
            }
            case Stmt::Kind::If: {
                auto out = eval_expr(ctx, *s.expr).flag ? eval_block(ctx, s.then_body)
                                                        : eval_block(ctx, s.else_body);
                if (out) return out;
                break;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

const char* outcome_kind_name(Outcome::Kind k) {
    switch (k) {
        case Outcome::Kind::ApproveFull: return "APPROVE_FULL";
        case Outcome::Kind::Reject: return "REJECT";
        case Outcome::Kind::Ratio: return "RATIO";
    }
    return "?";
}

Outcome::Kind outcome_kind_from_name(const std::string& s) {
    if (s == "APPROVE_FULL") return Outcome::Kind::ApproveFull;
    if (s == "REJECT") return Outcome::Kind::Reject;
    if (s == "RATIO") return Outcome::Kind::Ratio;
    raise(ErrorCode::ParseError, "unknown outcome kind: " + s);
}

void type_check(const LogicProgram& program, const Terms& terms, const DataSchema& schema,
                const Parties& parties) {
    CheckContext ctx{&terms, &schema, &parties};
    if (!check_block(ctx, program.body))
        raise(ErrorCode::TypeError, "contract logic may fall through without an outcome");
}

std::string logic_canonical(const LogicProgram& program) {
    std::ostringstream os;
    for (const auto& s : program.body) print_stmt(os, *s);
    return os.str();
}

Outcome evaluate_logic(const LogicProgram& program, const Terms& terms, uint64_t value_v,
                       const Parties& parties, const ExternalInputs& inputs) {
    EvalContext ctx{&terms, value_v, &parties, &inputs};
    try {
        auto out = eval_block(ctx, program.body);
        // A type-checked program terminates on every path; a missing outcome
        // can only mean the program was not checked, so fail closed.
        return out.value_or(Outcome::reject());
    } catch (const RejectSignal&) {
        return Outcome::reject();
    }
}

void validate_inputs(const DataSchema& schema, const ExternalInputs& inputs) {
    for (const auto& [name, type] : schema) {
        auto it = inputs.find(name);
        if (it == inputs.end())
            raise(ErrorCode::SchemaViolation, "missing external input '" + name + "'");
        ValueType want = input_value_type(type);
        if (it->second.type != want)
            raise(ErrorCode::SchemaViolation,
                  "external input '" + name + "' must be " + value_type_name(want));
    }
    for (const auto& [name, value] : inputs) {
        (void)value;
        if (schema.find(name) == schema.end())
            raise(ErrorCode::SchemaViolation, "unexpected external input '" + name + "'");
    }
}

}  // namespace zkagree::clc
