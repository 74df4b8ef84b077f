#include "zkagree/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "zkagree/merkle.hpp"

namespace zkagree::bench {

namespace {

using Clock = std::chrono::steady_clock;

double median_ms(std::vector<double>& samples) {
    std::sort(samples.begin(), samples.end());
    size_t n = samples.size();
    if (n == 0) return 0.0;
    return n % 2 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

template <typename F>
double time_ms(F&& fn) {
    auto t0 = Clock::now();
    fn();
    auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

std::vector<RelationMetrics> run_bench(int iterations) {
    proofsys::Srs srs = proofsys::setup(128, 64);
    Rng rng(0xB355EEDULL);  // fixed bench seed
    auto random_field = [&rng] {
        uint8_t raw[32];
        rng.fill(raw, sizeof raw);
        return crypto::FieldElement::from_bytes_le(raw, sizeof raw);
    };

    // Commitment instance
    proofsys::CommitWitness cw{random_field(), random_field()};
    auto [commit_statement, commit_bundle] = proofsys::prove_commit(srs, cw);

    // Evaluation instance: a one-leaf tree supplies the membership path.
    ledger::MerkleTree tree(proofsys::kMerkleDepth);
    crypto::FieldElement clc_comm = crypto::hash_fields({cw.k, cw.pd});
    uint64_t leaf = tree.insert(clc_comm);
    ledger::InclusionProof membership = tree.inclusion_proof(leaf);

    proofsys::EvalWitness ew;
    ew.k = cw.k;
    ew.pd = cw.pd;
    std::copy(membership.siblings.begin(), membership.siblings.end(), ew.merkle_path.begin());
    for (size_t i = 0; i < proofsys::kMerkleDepth; ++i) ew.merkle_dirs[i] = membership.dirs[i];

    proofsys::EvalStatement es;
    es.rt = membership.root;
    es.h = crypto::hash_fields({cw.k});
    es.parties_digest = random_field();
    es.v = 2'000'000'000'000'000'000ULL;
    es.rat_numerator = es.v;
    proofsys::ProofBundle eval_bundle = proofsys::prove_eval(srs, ew, es);

    std::vector<RelationMetrics> out;

    {
        RelationMetrics m;
        m.relation = "commitment";
        m.iterations = iterations;
        crypto::reset_op_counters();
        proofsys::check_commit_relation(commit_statement, cw);
        auto counters = crypto::op_counters();
        m.hash_invocations = counters.hash_calls;
        m.field_muls = counters.field_muls;
        m.field_adds = counters.field_adds;

        std::vector<double> prove_t, verify_t;
        Bytes st = commit_statement.to_bytes();
        for (int i = 0; i < iterations; ++i) {
            prove_t.push_back(time_ms([&] { (void)proofsys::prove_commit(srs, cw); }));
            verify_t.push_back(time_ms([&] { (void)proofsys::verify(srs, st, commit_bundle); }));
        }
        m.prove_ms_median = median_ms(prove_t);
        m.verify_ms_median = median_ms(verify_t);
        out.push_back(m);
    }

    {
        RelationMetrics m;
        m.relation = "evaluation";
        m.iterations = iterations;
        crypto::reset_op_counters();
        proofsys::check_eval_relation(es, ew);
        auto counters = crypto::op_counters();
        m.hash_invocations = counters.hash_calls;
        m.field_muls = counters.field_muls;
        m.field_adds = counters.field_adds;

        std::vector<double> prove_t, verify_t;
        Bytes st = es.to_bytes();
        for (int i = 0; i < iterations; ++i) {
            prove_t.push_back(time_ms([&] { (void)proofsys::prove_eval(srs, ew, es); }));
            verify_t.push_back(time_ms([&] { (void)proofsys::verify(srs, st, eval_bundle); }));
        }
        m.prove_ms_median = median_ms(prove_t);
        m.verify_ms_median = median_ms(verify_t);
        out.push_back(m);
    }

    return out;
}

std::string render_bench(const std::vector<RelationMetrics>& metrics) {
    std::ostringstream os;
    os << "relation      hashes  field_muls  field_adds  prove_ms  verify_ms  iters\n";
    for (const auto& m : metrics) {
        char line[160];
        std::snprintf(line, sizeof line, "%-12s %7llu %11llu %11llu %9.3f %10.3f %6d\n",
                      m.relation.c_str(), static_cast<unsigned long long>(m.hash_invocations),
                      static_cast<unsigned long long>(m.field_muls),
                      static_cast<unsigned long long>(m.field_adds), m.prove_ms_median,
                      m.verify_ms_median, m.iterations);
        os << line;
    }
    os << "note: transparent backend; timings measure relation replay and are\n"
          "not comparable to SNARK prover/verifier benchmarks.\n";
    return os.str();
}

}  // namespace zkagree::bench
