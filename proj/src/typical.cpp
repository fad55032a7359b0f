#include "shallowcode/typical.hpp"

#include <cmath>
#include <string>

#include "shallowcode/errors.hpp"
#include "shallowcode/limits.hpp"

namespace shallowcode {
namespace {

// Keeps float dirt off integer boundaries when converting the closed real
// interval to integer counts.
constexpr double kBoundaryGuard = 1e-9;

void check_params(const TypicalParams& params) {
    if (params.n < 1) raise("DomainError", "typical set needs n >= 1");
    if (!(params.eps > 0) || params.eps > 1) raise("DomainError", "typical set needs eps in (0, 1]");
}

bool box_accepts(const CountBox& box, std::span<const std::int64_t> counts) {
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (!box.constrained[c]) continue;
        if (counts[c] < box.lo[c] || counts[c] > box.hi[c]) return false;
    }
    return true;
}

// Distribution of sigma_z(0) for z drawn from row 0; this is posterior0 for
// tie-free channels but must be read off the sigma tables in general.
std::vector<double> transformed_row0(const ChannelSpec& ch) {
    std::vector<double> rho(ch.q(), 0.0);
    for (std::uint32_t z = 0; z < ch.q(); ++z) rho[ch.sigma()[z][0]] += ch.p(0, z);
    return rho;
}

}  // namespace

CountBox admissible_counts(const ChannelSpec& channel, std::uint32_t n, double eps) {
    const std::uint32_t q = channel.q();
    CountBox box;
    box.lo.assign(q, 0);
    box.hi.assign(q, n);
    box.constrained.assign(q, false);
    for (std::uint32_t c = 0; c < q; ++c) {
        if (channel.posterior0_is_zero(c)) continue;
        const double p = channel.posterior0()[c];
        box.constrained[c] = true;
        box.lo[c] = std::max<std::int64_t>(
            0, static_cast<std::int64_t>(std::ceil((p - eps) * n - kBoundaryGuard)));
        box.hi[c] = std::min<std::int64_t>(
            n, static_cast<std::int64_t>(std::floor((p + eps) * n + kBoundaryGuard)));
    }
    return box;
}

bool is_typical(const TypicalParams& params, std::span<const Elem> y, std::span<const Elem> x) {
    check_params(params);
    if (y.size() != params.n || x.size() != params.n)
        raise("LengthMismatch", "is_typical needs |y| = |x| = n");
    const ChannelSpec& ch = params.channel;
    std::vector<std::int64_t> counts(ch.q(), 0);
    for (std::uint32_t i = 0; i < params.n; ++i) {
        if (y[i] >= ch.q() || x[i] >= ch.q()) raise("DomainError", "symbol out of alphabet");
        ++counts[ch.sigma()[y[i]][x[i]]];
    }
    const CountBox box = admissible_counts(ch, params.n, params.eps);
    return box_accepts(box, counts);
}

std::vector<std::vector<Elem>> enumerate_typical(const TypicalParams& params,
                                                 std::span<const Elem> y) {
    check_params(params);
    if (y.size() != params.n) raise("LengthMismatch", "enumerate_typical needs |y| = n");
    const ChannelSpec& ch = params.channel;
    const std::uint32_t q = ch.q();
    double states = std::pow(static_cast<double>(q), static_cast<double>(params.n));
    if (states > static_cast<double>(Limits::get().typical_enum))
        raise("TooLarge", "q^n exceeds the enumeration cap");

    const CountBox box = admissible_counts(ch, params.n, params.eps);
    std::vector<std::vector<Elem>> result;
    std::vector<Elem> x(params.n, 0);
    std::vector<std::int64_t> counts(q, 0);
    for (;;) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::uint32_t i = 0; i < params.n; ++i) ++counts[ch.sigma()[y[i]][x[i]]];
        if (box_accepts(box, counts)) result.push_back(x);
        // odometer
        std::uint32_t i = 0;
        while (i < params.n && x[i] == q - 1) x[i++] = 0;
        if (i == params.n) break;
        ++x[i];
    }
    return result;
}

BigInt count_typical(const TypicalParams& params) {
    check_params(params);
    const ChannelSpec& ch = params.channel;
    const std::uint32_t q = ch.q();
    const std::uint32_t n = params.n;
    if (n > 64 || q > 8) raise("TooLarge", "count_typical supports n <= 64, q <= 8");

    std::vector<BigInt> fact(n + 1);
    fact[0] = 1;
    for (std::uint32_t i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;

    const CountBox box = admissible_counts(ch, n, params.eps);
    BigInt total = 0;
    std::vector<std::int64_t> counts(q, 0);
    // DFS over admissible count vectors; the last symbol absorbs the remainder.
    auto rec = [&](auto&& self, std::uint32_t c, std::int64_t remaining) -> void {
        if (c + 1 == q) {
            if (remaining < box.lo[c] || remaining > box.hi[c]) return;
            counts[c] = remaining;
            BigInt term = fact[n];
            for (std::uint32_t i = 0; i < q; ++i) term /= fact[counts[i]];
            total += term;
            return;
        }
        const std::int64_t lo = box.lo[c];
        const std::int64_t hi = std::min<std::int64_t>(box.hi[c], remaining);
        for (std::int64_t k = lo; k <= hi; ++k) {
            counts[c] = k;
            self(self, c + 1, remaining - k);
        }
    };
    rec(rec, 0, n);
    return total;
}

MassOutside mass_outside_typical(const TypicalParams& params, std::uint64_t trials,
                                 RandomStream& rs) {
    check_params(params);
    const ChannelSpec& ch = params.channel;
    const std::uint32_t q = ch.q();
    const CountBox box = admissible_counts(ch, params.n, params.eps);

    MassOutside out;
    out.trials = trials;
    double min_exp = 1.0;
    for (std::uint32_t c = 0; c < q; ++c) {
        if (ch.posterior0_is_zero(c)) continue;
        min_exp = std::min(min_exp,
                           std::exp(-params.eps * params.eps * ch.posterior0()[c] * params.n / 2));
    }
    out.chernoff_comparator = 2.0 * q * min_exp;

    if (trials == 0) return out;
    std::vector<Elem> zero(params.n, 0);
    std::vector<std::int64_t> counts(q, 0);
    std::uint64_t outside = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<Elem> z = transmit(ch, zero, rs);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::uint32_t i = 0; i < params.n; ++i) ++counts[ch.sigma()[z[i]][0]];
        if (!box_accepts(box, counts)) ++outside;
    }
    out.estimate = static_cast<double>(outside) / static_cast<double>(trials);
    out.stderr_ = std::sqrt(out.estimate * (1 - out.estimate) / static_cast<double>(trials));
    return out;
}

double mass_outside_exact(const TypicalParams& params) {
    check_params(params);
    const ChannelSpec& ch = params.channel;
    const std::uint32_t q = ch.q();
    const std::uint32_t n = params.n;
    double states = std::pow(static_cast<double>(q), static_cast<double>(n));
    if (states > static_cast<double>(Limits::get().mass_exact_states))
        raise("TooLarge", "q^n exceeds the exact-mass cap");

    const CountBox box = admissible_counts(ch, n, params.eps);
    const std::vector<double> rho = transformed_row0(ch);

    std::vector<BigInt> fact(n + 1);
    fact[0] = 1;
    for (std::uint32_t i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;

    // Sum the inside mass over count vectors and return the complement.
    double inside = 0;
    std::vector<std::int64_t> counts(q, 0);
    auto rec = [&](auto&& self, std::uint32_t c, std::int64_t remaining, double prob) -> void {
        if (prob == 0) return;
        if (c + 1 == q) {
            counts[c] = remaining;
            if (!box_accepts(box, counts)) return;
            BigInt multinom = fact[n];
            for (std::uint32_t i = 0; i < q; ++i) multinom /= fact[counts[i]];
            inside += static_cast<double>(multinom) * prob * std::pow(rho[c], remaining);
            return;
        }
        const std::int64_t lo = box.constrained[c] ? box.lo[c] : 0;
        const std::int64_t hi = box.constrained[c] ? std::min<std::int64_t>(box.hi[c], remaining)
                                                   : remaining;
        for (std::int64_t k = lo; k <= hi; ++k) {
            counts[c] = k;
            self(self, c + 1, remaining - k, prob * std::pow(rho[c], k));
        }
    };
    rec(rec, 0, n, 1.0);
    return 1.0 - inside;
}

}  // namespace shallowcode
