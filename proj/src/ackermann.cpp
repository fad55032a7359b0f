#include "shallowcode/ackermann.hpp"

#include <map>
#include <utility>
#include <vector>

#include "shallowcode/errors.hpp"

namespace shallowcode {
namespace {

constexpr std::uint64_t kMaxInputBits = 1'000'000;

void check_size(const BigInt& n) {
    if (bit_length(n) > kMaxInputBits) raise("TooLarge", "input exceeds 10^6 bits");
}

}  // namespace

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

BigInt star(const std::function<BigInt(const BigInt&)>& f, BigInt n) {
    // n <= 1 is treated as already converged: min{i : f^(i)(n) <= 1} = 0.
    BigInt count = 0;
    while (n > 1) {
        n = f(n);
        ++count;
    }
    return count;
}

BigInt lambda(std::uint32_t d, const BigInt& n) {
    if (d < 1) raise("BadDepth", "lambda requires d >= 1");
    if (n < 1) raise("BadInput", "lambda requires n >= 1");
    check_size(n);
    if (d == 1) return isqrt(n);
    if (d == 2) return ceil_log2(n);
    return star([d](const BigInt& m) { return lambda(d - 2, m); }, n);
}

std::uint32_t alpha(const BigInt& n) {
    if (n < 1) raise("BadInput", "alpha requires n >= 1");
    check_size(n);
    for (std::uint32_t d = 2; d <= 64; d += 2) {
        if (lambda(d, n) <= 6) return d;
    }
    raise("TooLarge", "alpha exceeded the supported depth range");  // unreachable at the input cap
}

std::optional<BigInt> ackermann(std::uint32_t i, const BigInt& j, const BigInt& cap) {
    if (j < 1) raise("BadInput", "ackermann requires j >= 1");
    if (cap < 2) raise("BadInput", "ackermann requires cap >= 2");
    const std::uint64_t cap_bits = bit_length(cap);

    using Key = std::pair<std::uint32_t, BigInt>;
    std::map<Key, BigInt> memo;
    std::vector<Key> stack{{i, j}};

    auto settle = [&](const Key& key, BigInt value) -> bool {
        if (value > cap) return false;
        memo.emplace(key, std::move(value));
        stack.pop_back();
        return true;
    };

    while (!stack.empty()) {
        const Key key = stack.back();
        const auto& [ci, cj] = key;
        if (memo.contains(key)) {
            stack.pop_back();
            continue;
        }
        if (ci == 0) {
            if (!settle(key, 2 * cj)) return std::nullopt;  // A(0, j) = 2j
        } else if (cj == 1) {
            if (!settle(key, 2)) return std::nullopt;  // A(i, 1) = 2
        } else if (ci == 1) {
            // A(1, j) = 2^j by unrolling A(1, j) = A(0, A(1, j-1)).
            if (cj >= cap_bits + 1) return std::nullopt;
            if (!settle(key, BigInt(1) << static_cast<std::uint64_t>(cj))) return std::nullopt;
        } else {
            auto inner = memo.find({ci, cj - 1});
            if (inner == memo.end()) {
                stack.push_back({ci, cj - 1});
                continue;
            }
            auto outer = memo.find({ci - 1, inner->second});
            if (outer == memo.end()) {
                stack.push_back({ci - 1, inner->second});
                continue;
            }
            if (!settle(key, outer->second)) return std::nullopt;
        }
    }
    return memo.at({i, j});
}

}  // namespace shallowcode
