// Left-regular bipartite graphs, disperser verification (exhaustive at small
// sizes, sampled above), Las Vegas search, and right-degree purging.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "shallowcode/rng.hpp"

namespace shallowcode {

struct BipartiteGraph {
    std::uint32_t n_left = 0;
    std::uint32_t n_right = 0;
    std::vector<std::vector<std::uint32_t>> adj;  // per left vertex, sorted, distinct

    bool operator==(const BipartiteGraph&) const = default;
};

void validate_graph(const BipartiteGraph& g);

// Each left vertex picks d distinct uniform right vertices (Floyd sampling).
BipartiteGraph sample_left_regular(std::uint32_t n, std::uint32_t m, std::uint32_t d,
                                   RandomStream& rs);

enum class CheckMode : std::uint8_t { exhaustive, sampled };

struct DisperserCheck {
    bool pass = false;
    CheckMode mode = CheckMode::exhaustive;
    std::optional<std::vector<std::uint32_t>> witness;  // violating S on failure
    std::uint64_t subsets_checked = 0;
};

// Checks |N(S)| >= (1 - eps) m for all S of size ceil(gamma n) (supersets
// only grow neighborhoods, so minimal size is the worst case). Exhaustive
// when C(n, |S|) fits the cap; TooLarge otherwise.
DisperserCheck verify_disperser(const BipartiteGraph& g, double gamma, double eps);

// Exhaustive when feasible, otherwise sampled with `samples` random minimal
// subsets. A sampled fail (witness found) is definitive; a sampled pass is not.
DisperserCheck check_disperser(const BipartiteGraph& g, double gamma, double eps,
                               RandomStream& rs, std::uint64_t samples = 0);

struct DisperserSearch {
    BipartiteGraph graph;
    std::uint32_t tries = 0;
    DisperserCheck check;
};

// Las Vegas: sample, verify, retry. Exhausted(max_tries) when no try passes.
DisperserSearch find_disperser(std::uint32_t n, std::uint32_t m, std::uint32_t d, double gamma,
                               double eps, RandomStream& rs, std::uint32_t max_tries);

// Removes the ceil(m/2) right vertices of highest degree (ties: lower index
// removed first) and reindexes the rest.
BipartiteGraph purge_right_half(const BipartiteGraph& g);

}  // namespace shallowcode
