// Brute-force size caps. Defaults are deliberate (they bound what "exhaustive"
// may cost); SHALLOWCODE_LIMITS="key=value,key=value" overrides them.
#pragma once

#include <cstdint>

namespace shallowcode {

struct Limits {
    // verify_range_detector: weight-band input count for the generic engine.
    std::uint64_t enum_inputs = 10'000'000;
    // verify_range_detector: per-half subset count for the q=2 MITM engine.
    std::uint64_t mitm_half = 30'000'000;
    // verify_disperser: subset count for exhaustive mode.
    std::uint64_t comb_subsets = 10'000'000;
    // enumerate_typical: q^n bound.
    std::uint64_t typical_enum = 1ull << 22;
    // mass_outside exact variant: q^n bound for the state space.
    std::uint64_t mass_exact_states = 1ull << 20;
    // decode_typical / failure_prob_mc: q^k message bound.
    std::uint64_t decode_messages = 1ull << 24;
    // failure_prob_exact: q^n output bound.
    std::uint64_t failure_exact_outputs = 1ull << 20;
    // to_generator_matrix: input count bound.
    std::uint64_t gen_matrix_inputs = 1ull << 12;
    // restriction_uniformity_check: q^|E| bound.
    std::uint64_t uniformity_states = 1ull << 24;
    // sampled verification: number of random probes.
    std::uint64_t samples = 10'000;

    // Process-wide limits, with SHALLOWCODE_LIMITS applied once at first use.
    static const Limits& get();
    // Parse an override string onto defaults (exposed for tests).
    static Limits parse(const char* spec);
};

}  // namespace shallowcode
