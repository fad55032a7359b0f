// Typical sets for a received word: membership, enumeration at small n, the
// exact multinomial count, and the mass outside the typical set (Monte Carlo
// plus an exact variant), with the Chernoff comparator reported alongside.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shallowcode/bigint.hpp"
#include "shallowcode/channel.hpp"

namespace shallowcode {

struct TypicalParams {
    ChannelSpec channel;
    std::uint32_t n = 0;
    double eps = 0;  // in (0, 1]
};

// Admissible per-symbol count window: symbol c with nonzero posterior must
// appear N_c times with |N_c/n - posterior0[c]| <= eps; zero-posterior
// symbols are unconstrained. Both membership and counting use this box, so
// the two stay consistent bit for bit.
struct CountBox {
    std::vector<std::int64_t> lo, hi;  // clamped to [0, n]
    std::vector<bool> constrained;
};

CountBox admissible_counts(const ChannelSpec& channel, std::uint32_t n, double eps);

bool is_typical(const TypicalParams& params, std::span<const Elem> y, std::span<const Elem> x);

std::vector<std::vector<Elem>> enumerate_typical(const TypicalParams& params,
                                                 std::span<const Elem> y);

// Exact |Typical(y, eps)| as a sum of multinomials over admissible counts.
BigInt count_typical(const TypicalParams& params);

struct MassOutside {
    double estimate = 0;
    double stderr_ = 0;
    std::uint64_t trials = 0;
    double chernoff_comparator = 0;  // 2q * min_{p_c>0} exp(-eps^2 p_c n / 2)
};

MassOutside mass_outside_typical(const TypicalParams& params, std::uint64_t trials,
                                 RandomStream& rs);

// Exact value of sum_z p(z|0) [0 not in Typical(z, eps)]; TooLarge when q^n
// exceeds the exact-state cap.
double mass_outside_exact(const TypicalParams& params);

}  // namespace shallowcode
