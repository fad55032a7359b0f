#include "shallowcode/disperser.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shallowcode/bigint.hpp"
#include "shallowcode/errors.hpp"
#include "shallowcode/limits.hpp"

namespace shallowcode {
namespace {

std::uint32_t minimal_subset_size(const BipartiteGraph& g, double gamma) {
    auto s = static_cast<std::uint32_t>(std::ceil(gamma * g.n_left - 1e-9));
    return std::max<std::uint32_t>(s, 1);
}

std::uint64_t neighborhood_threshold_num(double eps, std::uint32_t m) {
    // |N(S)| >= (1 - eps) m, evaluated as an integer threshold.
    return static_cast<std::uint64_t>(std::ceil((1.0 - eps) * m - 1e-9));
}

std::uint64_t neighborhood_size(const BipartiteGraph& g, const std::vector<std::uint32_t>& s,
                                std::vector<std::uint64_t>& scratch) {
    std::fill(scratch.begin(), scratch.end(), 0);
    for (std::uint32_t v : s)
        for (std::uint32_t r : g.adj[v]) scratch[r >> 6] |= 1ull << (r & 63);
    std::uint64_t count = 0;
    for (std::uint64_t w : scratch) count += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return count;
}

// Floyd's algorithm: k distinct values from [0, n), sorted.
std::vector<std::uint32_t> sample_distinct(std::uint32_t n, std::uint32_t k, RandomStream& rs) {
    std::vector<std::uint32_t> out;
    out.reserve(k);
    for (std::uint32_t j = n - k; j < n; ++j) {
        auto t = static_cast<std::uint32_t>(rs.below(j + 1));
        if (std::find(out.begin(), out.end(), t) != out.end()) out.push_back(j);
        else out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

void validate_graph(const BipartiteGraph& g) {
    if (g.adj.size() != g.n_left) raise("InvalidGraph", "adjacency size does not match n_left");
    for (const auto& nbrs : g.adj) {
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (nbrs[i] >= g.n_right) raise("InvalidGraph", "right index out of range");
            if (i > 0 && nbrs[i - 1] >= nbrs[i]) raise("InvalidGraph", "adjacency not sorted/distinct");
        }
    }
}

BipartiteGraph sample_left_regular(std::uint32_t n, std::uint32_t m, std::uint32_t d,
                                   RandomStream& rs) {
    if (d < 1 || d > m) raise("BadDegree", "need 1 <= d <= m");
    BipartiteGraph g;
    g.n_left = n;
    g.n_right = m;
    g.adj.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) g.adj[v] = sample_distinct(m, d, rs);
    return g;
}

DisperserCheck check_disperser(const BipartiteGraph& g, double gamma, double eps,
                               RandomStream& rs, std::uint64_t samples) {
    validate_graph(g);
    if (!(gamma > 0) || gamma > 1 || eps < 0 || eps > 1)
        raise("DomainError", "need gamma in (0,1], eps in [0,1]");
    const std::uint32_t s = minimal_subset_size(g, gamma);
    if (s > g.n_left) raise("DomainError", "subset size exceeds n_left");
    const std::uint64_t threshold = neighborhood_threshold_num(eps, g.n_right);
    if (samples == 0) samples = Limits::get().samples;

    std::vector<std::uint64_t> scratch((g.n_right + 63) / 64);
    DisperserCheck result;

    const BigInt combos = binomial(g.n_left, s);
    if (combos <= Limits::get().comb_subsets) {
        result.mode = CheckMode::exhaustive;
        std::vector<std::uint32_t> subset(s);
        for (std::uint32_t i = 0; i < s; ++i) subset[i] = i;
        for (;;) {
            ++result.subsets_checked;
            if (neighborhood_size(g, subset, scratch) < threshold) {
                result.pass = false;
                result.witness = subset;
                return result;
            }
            // next combination in lexicographic order
            std::int64_t i = s - 1;
            while (i >= 0 && subset[i] == g.n_left - s + i) --i;
            if (i < 0) break;
            ++subset[i];
            for (std::uint32_t j = i + 1; j < s; ++j) subset[j] = subset[j - 1] + 1;
        }
        result.pass = true;
        return result;
    }

    result.mode = CheckMode::sampled;
    for (std::uint64_t t = 0; t < samples; ++t) {
        std::vector<std::uint32_t> subset = sample_distinct(g.n_left, s, rs);
        ++result.subsets_checked;
        if (neighborhood_size(g, subset, scratch) < threshold) {
            result.pass = false;
            result.witness = std::move(subset);
            return result;
        }
    }
    result.pass = true;
    return result;
}

DisperserCheck verify_disperser(const BipartiteGraph& g, double gamma, double eps) {
    const std::uint32_t s = minimal_subset_size(g, gamma);
    const BigInt combos = binomial(g.n_left, s);
    if (combos > Limits::get().comb_subsets)
        raise("TooLarge", "C(n_left, ceil(gamma n)) exceeds the exhaustive cap");
    RandomStream unused(0);
    return check_disperser(g, gamma, eps, unused, 1);
}

DisperserSearch find_disperser(std::uint32_t n, std::uint32_t m, std::uint32_t d, double gamma,
                               double eps, RandomStream& rs, std::uint32_t max_tries) {
    for (std::uint32_t t = 1; t <= max_tries; ++t) {
        BipartiteGraph g = sample_left_regular(n, m, d, rs);
        DisperserCheck check = check_disperser(g, gamma, eps, rs);
        if (check.pass) return {std::move(g), t, std::move(check)};
    }
    raise("Exhausted", "no disperser found in " + std::to_string(max_tries) + " tries");
}

BipartiteGraph purge_right_half(const BipartiteGraph& g) {
    validate_graph(g);
    if (g.n_right < 2) raise("TooSmall", "purge needs m >= 2");
    std::vector<std::uint64_t> degree(g.n_right, 0);
    for (const auto& nbrs : g.adj)
        for (std::uint32_t r : nbrs) ++degree[r];

    std::vector<std::uint32_t> order(g.n_right);
    for (std::uint32_t r = 0; r < g.n_right; ++r) order[r] = r;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (degree[a] != degree[b]) return degree[a] > degree[b];
        return a < b;  // ties: lower index removed first
    });
    const std::uint32_t removed = (g.n_right + 1) / 2;
    std::vector<bool> keep(g.n_right, true);
    for (std::uint32_t i = 0; i < removed; ++i) keep[order[i]] = false;

    std::vector<std::uint32_t> new_index(g.n_right, 0);
    std::uint32_t next = 0;
    for (std::uint32_t r = 0; r < g.n_right; ++r)
        if (keep[r]) new_index[r] = next++;

    BipartiteGraph out;
    out.n_left = g.n_left;
    out.n_right = next;
    out.adj.resize(g.n_left);
    for (std::uint32_t v = 0; v < g.n_left; ++v)
        for (std::uint32_t r : g.adj[v])
            if (keep[r]) out.adj[v].push_back(new_index[r]);
    return out;
}

}  // namespace shallowcode
