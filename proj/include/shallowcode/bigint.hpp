// Arbitrary-precision counters (exact, no floating point) plus the few
// integer helpers the slow-growing-function toolkit needs.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

#include "shallowcode/rng.hpp"

namespace shallowcode {

using BigInt = boost::multiprecision::cpp_int;

// Number of bits in n (0 for n == 0).
inline std::uint64_t bit_length(const BigInt& n) {
    return n.is_zero() ? 0 : boost::multiprecision::msb(n) + 1;
}

// ceil(log2 n) for n >= 1, exact via bit operations.
inline BigInt ceil_log2(const BigInt& n) {
    if (n <= 1) return 0;
    std::uint64_t bits = bit_length(n);
    BigInt pow2 = BigInt(1) << (bits - 1);
    return (n == pow2) ? BigInt(bits - 1) : BigInt(bits);
}

// floor(sqrt(n)), exact (Newton iteration on big integers).
inline BigInt isqrt(const BigInt& n) {
    if (n < 0) return 0;
    return boost::multiprecision::sqrt(n);
}

// Exactly uniform over [0, total) for arbitrary-precision totals.
inline BigInt uniform_bigint_below(const BigInt& total, RandomStream& rs) {
    if (total <= 1) return 0;
    const std::uint64_t bits = bit_length(total - 1);
    const std::uint64_t words = (bits + 63) / 64;
    for (;;) {
        BigInt r = 0;
        for (std::uint64_t w = 0; w < words; ++w) {
            r <<= 64;
            r += rs.next_u64();
        }
        r >>= (words * 64 - bits);
        if (r < total) return r;
    }
}

BigInt binomial(std::uint64_t n, std::uint64_t k);

}  // namespace shallowcode
