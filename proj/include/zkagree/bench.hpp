#ifndef ZKAGREE_BENCH_HPP
#define ZKAGREE_BENCH_HPP

#include <string>
#include <vector>

#include "zkagree/proofsys.hpp"

namespace zkagree::bench {

struct RelationMetrics {
    std::string relation;
    uint64_t hash_invocations = 0;  // hash_fields calls in one relation check
    uint64_t field_muls = 0;
    uint64_t field_adds = 0;
    double prove_ms_median = 0.0;
    double verify_ms_median = 0.0;
    int iterations = 0;
};

// Counts the hash/field work of one straight-line relation check and times
// prove/verify over `iterations` runs (median). Structural expectations:
// the commitment relation performs exactly 2 hash invocations, the
// evaluation relation 22 (20 Merkle levels plus the nullifier and
// commitment hashes).
std::vector<RelationMetrics> run_bench(int iterations = 100);

// Plain-text table plus the non-comparability note for SNARK timings.
std::string render_bench(const std::vector<RelationMetrics>& metrics);

}  // namespace zkagree::bench

#endif
