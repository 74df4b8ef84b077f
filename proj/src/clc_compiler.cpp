#include "zkagree/clc/compiler.hpp"

#include <cctype>
#include <cstring>
#include <fstream>

namespace zkagree::clc {

namespace {

struct Token {
    enum class Kind { Ident, Int, Str, Punct, End };
    Kind kind = Kind::End;
    std::string text;   // identifier text, punctuation, or decoded string body
    uint64_t number = 0;
    int line = 1, col = 1;
};

class Lexer {
public:
    Lexer(const std::string& src, std::string origin)
        : src_(src), origin_(std::move(origin)) {}

    Token next() {
        skip_ws_and_comments();
        Token tok;
        tok.line = line_;
        tok.col = col_;
        if (pos_ >= src_.size()) return tok;

        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                id.push_back(take());
            tok.kind = Token::Kind::Ident;
            tok.text = std::move(id);
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            unsigned __int128 v = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                v = v * 10 + static_cast<unsigned>(take() - '0');
                if (v > UINT64_MAX) fail(tok, "integer literal exceeds 64 bits");
            }
            tok.kind = Token::Kind::Int;
            tok.number = static_cast<uint64_t>(v);
            return tok;
        }
        if (c == '"') {
            take();
            std::string body;
            while (true) {
                if (pos_ >= src_.size()) fail(tok, "unterminated string literal");
                char ch = take();
                if (ch == '"') break;
                if (ch == '\\') {
                    if (pos_ >= src_.size()) fail(tok, "unterminated escape");
                    char esc = take();
                    switch (esc) {
                        case '"': body.push_back('"'); break;
                        case '\\': body.push_back('\\'); break;
                        case 'n': body.push_back('\n'); break;
                        case 't': body.push_back('\t'); break;
                        case 'x': {
                            if (pos_ + 1 >= src_.size()) fail(tok, "truncated \\x escape");
                            int hi = hex_nibble(take());
                            int lo = hex_nibble(take());
                            if (hi < 0 || lo < 0) fail(tok, "invalid \\x escape");
                            body.push_back(static_cast<char>((hi << 4) | lo));
                            break;
                        }
                        default: fail(tok, "unknown escape sequence");
                    }
                } else {
                    body.push_back(ch);
                }
            }
            tok.kind = Token::Kind::Str;
            tok.text = std::move(body);
            return tok;
        }
        // multi-char operators
        static const char* two_char[] = {"==", "!=", "<=", ">="};
        for (const char* op : two_char) {
            if (src_.compare(pos_, 2, op) == 0) {
                take();
                take();
                tok.kind = Token::Kind::Punct;
                tok.text = op;
                return tok;
            }
        }
        if (std::strchr("{}()[]=;:,.<>+-*/", c)) {
            take();
            tok.kind = Token::Kind::Punct;
            tok.text = std::string(1, c);
            return tok;
        }
        fail(tok, std::string("unexpected character '") + c + "'");
    }

    [[noreturn]] void fail(const Token& at, const std::string& msg) const {
        raise(ErrorCode::ParseError,
              origin_ + ":" + std::to_string(at.line) + ":" + std::to_string(at.col) + ": " + msg);
    }

private:
    char take() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                take();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') take();
            } else {
                break;
            }
        }
    }

    const std::string& src_;
    std::string origin_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    Parser(const std::string& src, std::string origin)
        : lexer_(src, std::move(origin)) {
        advance();
    }

    ContractDocument parse_template() {
        ContractDocument doc;
        expect_ident("contract");
        doc.title = expect_str("contract title");
        expect_punct("{");
        bool have_value = false, have_signers = false, have_payout = false, have_logic = false;
        while (!at_punct("}")) {
            Token section = cur_;
            std::string kw = expect_any_ident("section keyword");
            if (kw == "parties") parse_parties(doc);
            else if (kw == "signers") { parse_signers(doc); have_signers = true; }
            else if (kw == "value") { parse_value(doc); have_value = true; }
            else if (kw == "payout") { parse_payout(doc); have_payout = true; }
            else if (kw == "terms") parse_terms(doc);
            else if (kw == "schema") parse_schema(doc);
            else if (kw == "text") parse_text(doc);
            else if (kw == "logic") { parse_logic(doc); have_logic = true; }
            else lexer_.fail(section, "unknown section '" + kw + "'");
        }
        expect_punct("}");
        if (cur_.kind != Token::Kind::End) lexer_.fail(cur_, "trailing input after contract");
        if (!have_value) missing("value");
        if (!have_signers) missing("signers");
        if (!have_payout) missing("payout");
        if (!have_logic) missing("logic");
        return doc;
    }

private:
    [[noreturn]] void missing(const std::string& what) {
        raise(ErrorCode::ParseError, "template is missing the '" + what + "' section");
    }

    void parse_parties(ContractDocument& doc) {
        expect_punct("{");
        while (!at_punct("}")) {
            Token role_tok = cur_;
            std::string role = expect_any_ident("party role");
            if (doc.parties.count(role)) lexer_.fail(role_tok, "duplicate party '" + role + "'");
            Party p;
            expect_punct("{");
            while (!at_punct("}")) {
                std::string field = expect_any_ident("party field");
                expect_punct("=");
                if (field == "name") {
                    p.display_name = expect_str("display name");
                } else if (field == "pk") {
                    Token pk_tok = cur_;
                    std::string hex = expect_str("public key hex");
                    Bytes raw;
                    try {
                        raw = from_hex(hex);
                    } catch (const Error&) {
                        lexer_.fail(pk_tok, "public key is not valid hex");
                    }
                    if (raw.size() != crypto::kPublicKeySize)
                        lexer_.fail(pk_tok, "public key must be 32 bytes");
                    std::copy(raw.begin(), raw.end(), p.pk.begin());
                } else {
                    lexer_.fail(cur_, "unknown party field '" + field + "'");
                }
                expect_punct(";");
            }
            expect_punct("}");
            expect_punct(";");
            doc.parties.emplace(std::move(role), std::move(p));
        }
        expect_punct("}");
        if (accept_punct(";")) {}
    }

    void parse_signers(ContractDocument& doc) {
        expect_punct("{");
        while (!at_punct("}")) {
            std::string which = expect_any_ident("signer role");
            expect_punct("=");
            std::string role = expect_any_ident("party role");
            expect_punct(";");
            if (which == "buyer") doc.buyer_role = role;
            else if (which == "seller") doc.seller_role = role;
            else raise(ErrorCode::ParseError, "signers accepts only buyer/seller");
        }
        expect_punct("}");
        if (accept_punct(";")) {}
    }

    void parse_value(ContractDocument& doc) {
        expect_punct("=");
        doc.value_v = expect_int("contract value");
        expect_punct(";");
    }

    void parse_payout(ContractDocument& doc) {
        expect_punct("{");
        while (!at_punct("}")) {
            std::string which = expect_any_ident("payout role");
            expect_punct("=");
            std::string role = expect_any_ident("party role");
            expect_punct(";");
            if (which == "ratio") doc.ratio_payee = role;
            else if (which == "complement") doc.complement_payee = role;
            else raise(ErrorCode::ParseError, "payout accepts only ratio/complement");
        }
        expect_punct("}");
        if (accept_punct(";")) {}
    }

    void parse_terms(ContractDocument& doc) {
        expect_punct("{");
        while (!at_punct("}")) {
            Token name_tok = cur_;
            std::string name = expect_any_ident("term name");
            if (doc.terms.count(name)) lexer_.fail(name_tok, "duplicate term '" + name + "'");
            expect_punct(":");
            std::string type = expect_any_ident("term type");
            expect_punct("=");
            TermValue tv;
            if (type == "int") {
                tv = TermValue::of_int(expect_int("term value"));
            } else if (type == "string") {
                tv = TermValue::of_str(expect_str("term value"));
            } else {
                lexer_.fail(cur_, "term type must be int or string");
            }
            expect_punct(";");
            doc.terms.emplace(std::move(name), std::move(tv));
        }
        expect_punct("}");
        if (accept_punct(";")) {}
    }

    void parse_schema(ContractDocument& doc) {
        expect_punct("{");
        while (!at_punct("}")) {
            Token name_tok = cur_;
            std::string name = expect_any_ident("input name");
            if (doc.schema.count(name)) lexer_.fail(name_tok, "duplicate input '" + name + "'");
            expect_punct(":");
            Token type_tok = cur_;
            std::string type = expect_any_ident("input type");
            InputType it;
            if (type == "int") it = InputType::Int;
            else if (type == "string") it = InputType::Str;
            else if (type == "bytes") it = InputType::Bytes;
            else lexer_.fail(type_tok, "input type must be int, string or bytes");
            expect_punct(";");
            doc.schema.emplace(std::move(name), it);
        }
        expect_punct("}");
        if (accept_punct(";")) {}
    }

    void parse_text(ContractDocument& doc) {
        expect_punct("=");
        doc.legal_text = expect_str("legal text");
        expect_punct(";");
    }

    void parse_logic(ContractDocument& doc) {
        expect_punct("{");
        doc.logic.body = parse_stmts();
        expect_punct("}");
        if (accept_punct(";")) {}
    }

    std::vector<StmtPtr> parse_stmts() {
        std::vector<StmtPtr> out;
        while (!at_punct("}")) out.push_back(parse_stmt());
        return out;
    }

    StmtPtr parse_stmt() {
        Token head = cur_;
        auto stmt = std::make_shared<Stmt>();
        stmt->line = head.line;
        stmt->col = head.col;
        std::string kw = expect_any_ident("statement");
        if (kw == "enforce") {
            stmt->kind = Stmt::Kind::Enforce;
            stmt->expr = parse_expr();
            expect_punct(";");
        } else if (kw == "approve_full") {
            stmt->kind = Stmt::Kind::ApproveFull;
            expect_punct(";");
        } else if (kw == "reject") {
            stmt->kind = Stmt::Kind::Reject;
            expect_punct(";");
        } else if (kw == "ratio") {
            stmt->kind = Stmt::Kind::Ratio;
            stmt->expr = parse_expr();
            expect_punct(";");
        } else if (kw == "if") {
            stmt->kind = Stmt::Kind::If;
            expect_punct("(");
            stmt->expr = parse_expr();
            expect_punct(")");
            expect_punct("{");
            stmt->then_body = parse_stmts();
            expect_punct("}");
            if (at_ident("else")) {
                advance();
                if (at_ident("if")) {
                    stmt->else_body.push_back(parse_stmt());  // else-if chain
                } else {
                    expect_punct("{");
                    stmt->else_body = parse_stmts();
                    expect_punct("}");
                }
            }
        } else {
            lexer_.fail(head, "unknown statement '" + kw + "'");
        }
        return stmt;
    }

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (at_ident("or")) {
            Token op = cur_;
            advance();
            lhs = make_binary(BinOp::Or, lhs, parse_and(), op);
        }
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_not();
        while (at_ident("and")) {
            Token op = cur_;
            advance();
            lhs = make_binary(BinOp::And, lhs, parse_not(), op);
        }
        return lhs;
    }

    ExprPtr parse_not() {
        if (at_ident("not")) {
            Token op = cur_;
            advance();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Not;
            e->lhs = parse_not();
            e->line = op.line;
            e->col = op.col;
            return e;
        }
        return parse_cmp();
    }

    ExprPtr parse_cmp() {
        ExprPtr lhs = parse_add();
        static const std::pair<const char*, BinOp> cmps[] = {
            {"==", BinOp::Eq}, {"!=", BinOp::Ne}, {"<=", BinOp::Le},
            {">=", BinOp::Ge}, {"<", BinOp::Lt},  {">", BinOp::Gt},
        };
        for (const auto& [text, op] : cmps) {
            if (at_punct(text)) {
                Token tok = cur_;
                advance();
                return make_binary(op, lhs, parse_add(), tok);
            }
        }
        return lhs;
    }

    ExprPtr parse_add() {
        ExprPtr lhs = parse_mul();
        while (at_punct("+") || at_punct("-")) {
            Token tok = cur_;
            BinOp op = at_punct("+") ? BinOp::Add : BinOp::Sub;
            advance();
            lhs = make_binary(op, lhs, parse_mul(), tok);
        }
        return lhs;
    }

    ExprPtr parse_mul() {
        ExprPtr lhs = parse_primary();
        while (at_punct("*") || at_punct("/")) {
            Token tok = cur_;
            BinOp op = at_punct("*") ? BinOp::Mul : BinOp::Div;
            advance();
            lhs = make_binary(op, lhs, parse_primary(), tok);
        }
        return lhs;
    }

    ExprPtr parse_primary() {
        Token tok = cur_;
        auto e = std::make_shared<Expr>();
        e->line = tok.line;
        e->col = tok.col;
        if (tok.kind == Token::Kind::Int) {
            advance();
            e->kind = Expr::Kind::IntLit;
            e->int_lit = tok.number;
            return e;
        }
        if (tok.kind == Token::Kind::Str) {
            advance();
            e->kind = Expr::Kind::StrLit;
            e->str_lit = tok.text;
            return e;
        }
        if (at_punct("(")) {
            advance();
            ExprPtr inner = parse_expr();
            expect_punct(")");
            return inner;
        }
        if (tok.kind == Token::Kind::Ident) {
            if (tok.text == "value") {
                advance();
                e->kind = Expr::Kind::ValueRef;
                return e;
            }
            if (tok.text == "input") {
                advance();
                expect_punct(".");
                e->kind = Expr::Kind::InputRef;
                e->name = expect_any_ident("input name");
                return e;
            }
            if (tok.text == "verify_sig") {
                advance();
                expect_punct("(");
                e->kind = Expr::Kind::VerifySig;
                e->name = expect_any_ident("party role");
                expect_punct(",");
                expect_punct("[");
                e->args.push_back(parse_expr());
                while (accept_punct(",")) e->args.push_back(parse_expr());
                expect_punct("]");
                expect_punct(",");
                e->sig = parse_expr();
                expect_punct(")");
                return e;
            }
            advance();
            e->kind = Expr::Kind::TermRef;
            e->name = tok.text;
            return e;
        }
        lexer_.fail(tok, "expected an expression");
    }

    ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs, const Token& tok) {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Binary;
        e->op = op;
        e->lhs = std::move(lhs);
        e->rhs = std::move(rhs);
        e->line = tok.line;
        e->col = tok.col;
        return e;
    }

    // token helpers
    void advance() { cur_ = lexer_.next(); }

    bool at_punct(const std::string& p) const {
        return cur_.kind == Token::Kind::Punct && cur_.text == p;
    }
    bool at_ident(const std::string& id) const {
        return cur_.kind == Token::Kind::Ident && cur_.text == id;
    }

    bool accept_punct(const std::string& p) {
        if (!at_punct(p)) return false;
        advance();
        return true;
    }

    void expect_punct(const std::string& p) {
        if (!at_punct(p)) lexer_.fail(cur_, "expected '" + p + "'");
        advance();
    }

    void expect_ident(const std::string& id) {
        if (!at_ident(id)) lexer_.fail(cur_, "expected '" + id + "'");
        advance();
    }

    std::string expect_any_ident(const std::string& what) {
        if (cur_.kind != Token::Kind::Ident) lexer_.fail(cur_, "expected " + what);
        std::string t = cur_.text;
        advance();
        return t;
    }

    std::string expect_str(const std::string& what) {
        if (cur_.kind != Token::Kind::Str) lexer_.fail(cur_, "expected string for " + what);
        std::string t = cur_.text;
        advance();
        return t;
    }

    uint64_t expect_int(const std::string& what) {
        if (cur_.kind != Token::Kind::Int) lexer_.fail(cur_, "expected integer for " + what);
        uint64_t v = cur_.number;
        advance();
        return v;
    }

    Lexer lexer_;
    Token cur_;
};

void validate_document(const ContractDocument& doc) {
    if (doc.value_v == 0) raise(ErrorCode::SchemaError, "contract value must be positive");
    if (doc.parties.empty()) raise(ErrorCode::SchemaError, "contract has no parties");
    auto need_party = [&](const std::string& role, const char* what) {
        if (role.empty()) raise(ErrorCode::SchemaError, std::string(what) + " role is not set");
        if (!doc.parties.count(role))
            raise(ErrorCode::SchemaError, std::string(what) + " role '" + role + "' is not a party");
    };
    need_party(doc.buyer_role, "buyer");
    need_party(doc.seller_role, "seller");
    need_party(doc.ratio_payee, "ratio payee");
    need_party(doc.complement_payee, "complement payee");
    if (doc.ratio_payee == doc.complement_payee)
        raise(ErrorCode::SchemaError, "ratio and complement payee must differ");
    type_check(doc.logic, doc.terms, doc.schema, doc.parties);
}

}  // namespace

ContractDocument compile_contract(const std::string& text, const std::string& origin) {
    Parser parser(text, origin);
    ContractDocument doc = parser.parse_template();
    validate_document(doc);
    return doc;
}

ContractDocument compile_contract_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::IoError, "cannot open template: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return compile_contract(text, path);
}

}  // namespace zkagree::clc
