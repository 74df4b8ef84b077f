#include "zkagree/clc/document.hpp"

#include <sstream>

namespace zkagree::clc {

const char* lifecycle_name(Lifecycle s) {
    switch (s) {
        case Lifecycle::INIT: return "INIT";
        case Lifecycle::EXECUTION: return "EXECUTION";
        case Lifecycle::EVALUATION: return "EVALUATION";
        case Lifecycle::COMPLETED: return "COMPLETED";
    }
    return "?";
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::NONE: return "NONE";
        case Phase::AWAITING_INSPECTION: return "AWAITING_INSPECTION";
        case Phase::AWAITING_TENANT_DECISION: return "AWAITING_TENANT_DECISION";
        case Phase::APPROVED: return "APPROVED";
        case Phase::DISPUTED: return "DISPUTED";
    }
    return "?";
}

Lifecycle lifecycle_from_name(const std::string& s) {
    if (s == "INIT") return Lifecycle::INIT;
    if (s == "EXECUTION") return Lifecycle::EXECUTION;
    if (s == "EVALUATION") return Lifecycle::EVALUATION;
    if (s == "COMPLETED") return Lifecycle::COMPLETED;
    raise(ErrorCode::ParseError, "unknown lifecycle state: " + s);
}

void LifecycleState::advance(Lifecycle next) {
    bool legal = (lifecycle_ == Lifecycle::INIT && next == Lifecycle::EXECUTION) ||
                 (lifecycle_ == Lifecycle::EXECUTION && next == Lifecycle::EVALUATION) ||
                 (lifecycle_ == Lifecycle::EVALUATION && next == Lifecycle::COMPLETED);
    if (!legal)
        raise(ErrorCode::IllegalTransition,
              std::string(lifecycle_name(lifecycle_)) + " -> " + lifecycle_name(next));
    lifecycle_ = next;
    if (lifecycle_ == Lifecycle::COMPLETED) phase_ = Phase::NONE;
}

void LifecycleState::set_phase(Phase p) {
    bool in_active = lifecycle_ == Lifecycle::EXECUTION || lifecycle_ == Lifecycle::EVALUATION;
    if (p != Phase::NONE && !in_active)
        raise(ErrorCode::IllegalTransition,
              std::string("phase ") + phase_name(p) + " illegal in " + lifecycle_name(lifecycle_));
    phase_ = p;
}

const Party& ContractDocument::party(const std::string& role) const {
    auto it = parties.find(role);
    if (it == parties.end()) raise(ErrorCode::SchemaError, "unknown party role '" + role + "'");
    return it->second;
}

namespace {

void print_quoted(std::ostream& os, const std::string& s) {
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

}  // namespace

Bytes canonical(const ContractDocument& doc) {
    std::ostringstream os;
    os << "contract";
    print_quoted(os, doc.title);
    os << '{';

    // Sections in lexicographic order of their keyword.
    os << "logic{" << logic_canonical(doc.logic) << "};";

    os << "parties{";
    for (const auto& [role, party] : doc.parties) {
        os << role << "{name=";
        print_quoted(os, party.display_name);
        os << ";pk=";
        print_quoted(os, crypto::pk_hex(party.pk));
        os << ";};";
    }
    os << "};";

    os << "payout{complement=" << doc.complement_payee << ";ratio=" << doc.ratio_payee << ";};";

    os << "schema{";
    for (const auto& [name, type] : doc.schema) {
        const char* t = type == InputType::Int ? "int" : type == InputType::Str ? "string" : "bytes";
        os << name << ':' << t << ';';
    }
    os << "};";

    os << "signers{buyer=" << doc.buyer_role << ";seller=" << doc.seller_role << ";};";

    os << "terms{";
    for (const auto& [name, tv] : doc.terms) {
        os << name << ':';
        if (tv.type == TermType::Int) {
            os << "int=" << tv.i;
        } else {
            os << "string=";
            print_quoted(os, tv.s);
        }
        os << ';';
    }
    os << "};";

    if (!doc.legal_text.empty()) {
        os << "text=";
        print_quoted(os, doc.legal_text);
        os << ';';
    }

    os << "value=" << doc.value_v << ";}";

    std::string s = os.str();
    return Bytes(s.begin(), s.end());
}

crypto::Digest contract_digest(const ContractDocument& doc) {
    return crypto::digest_document(canonical(doc));
}

SignedContract sign_contract(const crypto::SecretKey& sk_buy, const crypto::SecretKey& sk_sel,
                             const ContractDocument& doc) {
    crypto::Digest c = contract_digest(doc);
    SignedContract sc;
    sc.doc = doc;
    sc.sigma_buy = crypto::sign(sk_buy, c);
    sc.sigma_sel = crypto::sign(sk_sel, c);
    return sc;
}

bool verify_signed(const SignedContract& sc) {
    crypto::Digest c = contract_digest(sc.doc);
    return crypto::verify(sc.doc.party(sc.doc.buyer_role).pk, c, sc.sigma_buy) &&
           crypto::verify(sc.doc.party(sc.doc.seller_role).pk, c, sc.sigma_sel);
}

Bytes signed_canonical(const SignedContract& sc) {
    Bytes out = canonical(sc.doc);
    out.insert(out.end(), sc.sigma_buy.begin(), sc.sigma_buy.end());
    out.insert(out.end(), sc.sigma_sel.begin(), sc.sigma_sel.end());
    return out;
}

crypto::Digest program_digest(const SignedContract& sc) {
    return crypto::digest_document(signed_canonical(sc));
}

}  // namespace zkagree::clc
