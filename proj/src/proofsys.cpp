#include "zkagree/proofsys.hpp"

namespace zkagree::proofsys {

namespace {

constexpr uint8_t kRelationCommit = 1;
constexpr uint8_t kRelationEval = 2;

void append_field(Bytes& out, const FieldElement& f) {
    auto b = f.to_bytes_be();
    out.insert(out.end(), b.begin(), b.end());
}

FieldElement read_field(const Bytes& b, size_t& off) {
    if (off + 32 > b.size()) raise(ErrorCode::MalformedProof, "truncated field element");
    FieldElement f = FieldElement::from_bytes_be(b.data() + off, 32);
    off += 32;
    return f;
}

uint64_t read_u64_field(const Bytes& b, size_t& off) {
    // Integers ride in the low 8 bytes of a 32-byte big-endian field slot.
    if (off + 32 > b.size()) raise(ErrorCode::MalformedProof, "truncated integer");
    for (size_t i = 0; i < 24; ++i)
        if (b[off + i] != 0) raise(ErrorCode::MalformedProof, "integer out of range");
    uint64_t v = 0;
    for (size_t i = 24; i < 32; ++i) v = (v << 8) | b[off + i];
    off += 32;
    return v;
}

// The transparent proof is a replayable transcript: the full witness plus a
// binding digest over (srs, relation, statement, witness). Verification
// replays the relation and recomputes the binding, so any single-bit change
// in the statement or the proof bytes is rejected. There is no
// zero-knowledge here; the backend exists to pin down the Definition-1
// interface and the relation semantics.
FieldElement binding_digest(const Srs& srs, uint8_t relation, const Bytes& statement,
                            const Bytes& witness_bytes) {
    Bytes buf;
    append_field(buf, srs.srs_digest());
    buf.push_back(relation);
    append_u32le(buf, static_cast<uint32_t>(statement.size()));
    append_bytes(buf, statement);
    append_u32le(buf, static_cast<uint32_t>(witness_bytes.size()));
    append_bytes(buf, witness_bytes);
    return crypto::digest_document(buf).element;
}

Bytes commit_witness_bytes(const CommitWitness& w) {
    Bytes out;
    append_field(out, w.k);
    append_field(out, w.pd);
    return out;
}

Bytes eval_witness_bytes(const EvalWitness& w) {
    Bytes out;
    append_field(out, w.k);
    append_field(out, w.pd);
    for (const auto& s : w.merkle_path) append_field(out, s);
    uint32_t dirs = 0;
    for (size_t i = 0; i < kMerkleDepth; ++i)
        if (w.merkle_dirs[i]) dirs |= (1u << i);
    append_u32le(out, dirs);
    return out;
}

struct ParsedProof {
    uint8_t relation;
    FieldElement srs_digest;
    Bytes witness_bytes;
    FieldElement binding;
};

std::optional<ParsedProof> parse_proof(const Bytes& proof) {
    if (proof.size() < 1 + 32 + 32) return std::nullopt;
    ParsedProof p;
    p.relation = proof[0];
    size_t off = 1;
    p.srs_digest = FieldElement::from_bytes_be(proof.data() + off, 32);
    off += 32;
    if (proof.size() < off + 32) return std::nullopt;
    p.witness_bytes.assign(proof.begin() + off, proof.end() - 32);
    p.binding = FieldElement::from_bytes_be(proof.data() + proof.size() - 32, 32);
    return p;
}

Bytes build_proof(const Srs& srs, uint8_t relation, const Bytes& statement,
                  const Bytes& witness_bytes) {
    Bytes out;
    out.push_back(relation);
    append_field(out, srs.srs_digest());
    append_bytes(out, witness_bytes);
    append_field(out, binding_digest(srs, relation, statement, witness_bytes));
    return out;
}

std::optional<CommitWitness> parse_commit_witness(const Bytes& b) {
    if (b.size() != 64) return std::nullopt;
    size_t off = 0;
    CommitWitness w;
    w.k = read_field(b, off);
    w.pd = read_field(b, off);
    return w;
}

std::optional<EvalWitness> parse_eval_witness(const Bytes& b) {
    if (b.size() != 64 + 32 * kMerkleDepth + 4) return std::nullopt;
    size_t off = 0;
    EvalWitness w;
    w.k = read_field(b, off);
    w.pd = read_field(b, off);
    for (size_t i = 0; i < kMerkleDepth; ++i) w.merkle_path[i] = read_field(b, off);
    uint32_t dirs = 0;
    for (int i = 0; i < 4; ++i) dirs |= static_cast<uint32_t>(b[off + i]) << (8 * i);
    for (size_t i = 0; i < kMerkleDepth; ++i) w.merkle_dirs[i] = (dirs >> i) & 1;
    return w;
}

}  // namespace

FieldElement Srs::srs_digest() const {
    Bytes buf;
    append_str(buf, backend_id);
    buf.push_back(0);
    append_bytes(buf, parameters);
    return crypto::digest_document(buf).element;
}

Bytes CommitStatement::to_bytes() const {
    Bytes out;
    append_field(out, h);
    append_field(out, clc_comm);
    return out;
}

CommitStatement CommitStatement::from_bytes(const Bytes& b) {
    if (b.size() != 64) raise(ErrorCode::MalformedProof, "commit statement must be 64 bytes");
    size_t off = 0;
    CommitStatement st;
    st.h = read_field(b, off);
    st.clc_comm = read_field(b, off);
    return st;
}

Bytes EvalStatement::to_bytes() const {
    Bytes out;
    append_field(out, rt);
    append_field(out, h);
    append_field(out, parties_digest);
    append_field(out, FieldElement::from_u64(rat_numerator));
    append_field(out, FieldElement::from_u64(v));
    return out;
}

EvalStatement EvalStatement::from_bytes(const Bytes& b) {
    if (b.size() != 5 * 32) raise(ErrorCode::MalformedProof, "eval statement must be 160 bytes");
    size_t off = 0;
    EvalStatement st;
    st.rt = read_field(b, off);
    st.h = read_field(b, off);
    st.parties_digest = read_field(b, off);
    st.rat_numerator = read_u64_field(b, off);
    st.v = read_u64_field(b, off);
    return st;
}

Bytes ProofBundle::serialize() const {
    Bytes out;
    append_u32le(out, static_cast<uint32_t>(backend_id.size()));
    append_str(out, backend_id);
    append_u32le(out, static_cast<uint32_t>(statement.size()));
    append_bytes(out, statement);
    append_u32le(out, static_cast<uint32_t>(proof.size()));
    append_bytes(out, proof);
    return out;
}

ProofBundle ProofBundle::deserialize(const Bytes& b) {
    size_t off = 0;
    auto read_u32 = [&](const char* what) {
        if (off + 4 > b.size()) raise(ErrorCode::MalformedProof, std::string("truncated ") + what);
        uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | b[off + i];
        off += 4;
        return v;
    };
    auto read_chunk = [&](uint32_t len, const char* what) {
        if (off + len > b.size()) raise(ErrorCode::MalformedProof, std::string("truncated ") + what);
        Bytes out(b.begin() + off, b.begin() + off + len);
        off += len;
        return out;
    };
    ProofBundle pb;
    uint32_t idlen = read_u32("backend id");
    Bytes id = read_chunk(idlen, "backend id");
    pb.backend_id.assign(id.begin(), id.end());
    pb.statement = read_chunk(read_u32("statement"), "statement");
    pb.proof = read_chunk(read_u32("proof"), "proof");
    if (off != b.size()) raise(ErrorCode::MalformedProof, "trailing bytes after proof bundle");
    return pb;
}

Srs setup(uint32_t security_param, uint64_t max_relation_size) {
    if (max_relation_size == 0)
        raise(ErrorCode::UnsupportedBackend, "max_relation_size must be positive");
    if (max_relation_size < kMerkleDepth + 2)
        raise(ErrorCode::UnsupportedBackend,
              "max_relation_size does not cover the evaluation relation");
    Srs srs;
    srs.backend_id = kTransparentBackend;
    // Transparent parameters: a tagged encoding of the setup inputs. Nothing
    // secret, nothing sampled.
    Bytes params;
    append_str(params, kTransparentBackend);
    params.push_back(0);
    append_u32le(params, security_param);
    append_u32le(params, static_cast<uint32_t>(max_relation_size));
    append_u32le(params, static_cast<uint32_t>(max_relation_size >> 32));
    srs.parameters = std::move(params);
    srs.max_relation_size = max_relation_size;
    return srs;
}

FieldElement fold_merkle_path(const FieldElement& leaf, std::span<const FieldElement> siblings,
                              std::span<const bool> dirs) {
    FieldElement cur = leaf;
    for (size_t i = 0; i < siblings.size(); ++i) {
        cur = dirs[i] ? crypto::hash_fields({siblings[i], cur})
                      : crypto::hash_fields({cur, siblings[i]});
    }
    return cur;
}

bool check_commit_relation(const CommitStatement& st, const CommitWitness& w) {
    if (st.h != crypto::hash_fields({w.k})) return false;
    if (st.clc_comm != crypto::hash_fields({w.k, w.pd})) return false;
    return true;
}

bool check_eval_relation(const EvalStatement& st, const EvalWitness& w) {
    if (st.rat_numerator > st.v) return false;
    if (st.h != crypto::hash_fields({w.k})) return false;
    FieldElement clc_comm = crypto::hash_fields({w.k, w.pd});
    FieldElement rt = fold_merkle_path(clc_comm, w.merkle_path, w.merkle_dirs);
    return rt == st.rt;
}

std::pair<CommitStatement, ProofBundle> prove_commit(const Srs& srs, const CommitWitness& witness) {
    if (srs.backend_id != kTransparentBackend)
        raise(ErrorCode::UnsupportedBackend, "unknown backend: " + srs.backend_id);
    CommitStatement st;
    st.h = crypto::hash_fields({witness.k});
    st.clc_comm = crypto::hash_fields({witness.k, witness.pd});
    if (!check_commit_relation(st, witness))
        raise(ErrorCode::RelationUnsatisfied, "commitment relation failed after derivation");

    ProofBundle pb;
    pb.backend_id = srs.backend_id;
    pb.statement = st.to_bytes();
    pb.proof = build_proof(srs, kRelationCommit, pb.statement, commit_witness_bytes(witness));
    return {st, pb};
}

ProofBundle prove_eval(const Srs& srs, const EvalWitness& witness, const EvalStatement& statement) {
    if (srs.backend_id != kTransparentBackend)
        raise(ErrorCode::UnsupportedBackend, "unknown backend: " + srs.backend_id);
    if (!check_eval_relation(statement, witness))
        raise(ErrorCode::RelationUnsatisfied,
              "witness does not satisfy the evaluation relation (stale root or bad nullifier)");
    ProofBundle pb;
    pb.backend_id = srs.backend_id;
    pb.statement = statement.to_bytes();
    pb.proof = build_proof(srs, kRelationEval, pb.statement, eval_witness_bytes(witness));
    return pb;
}

bool verify(const Srs& srs, const Bytes& statement, const ProofBundle& proof) {
    if (srs.backend_id != kTransparentBackend) return false;
    if (proof.backend_id != srs.backend_id) return false;

    auto parsed = parse_proof(proof.proof);
    if (!parsed) return false;
    if (parsed->srs_digest != srs.srs_digest()) return false;
    if (parsed->binding != binding_digest(srs, parsed->relation, statement, parsed->witness_bytes))
        return false;

    try {
        if (parsed->relation == kRelationCommit) {
            auto w = parse_commit_witness(parsed->witness_bytes);
            if (!w) return false;
            return check_commit_relation(CommitStatement::from_bytes(statement), *w);
        }
        if (parsed->relation == kRelationEval) {
            auto w = parse_eval_witness(parsed->witness_bytes);
            if (!w) return false;
            return check_eval_relation(EvalStatement::from_bytes(statement), *w);
        }
    } catch (const Error&) {
        return false;  // malformed statements reject
    }
    return false;
}

}  // namespace zkagree::proofsys
