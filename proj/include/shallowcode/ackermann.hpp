// The slow-growing-function toolkit: lambda_d, the star operator, alpha(n),
// and the two-argument Ackermann function, all on exact big integers.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "shallowcode/bigint.hpp"

namespace shallowcode {

// star(f, n) = min{ i : f^(i)(n) <= 1 }, with star(f, n) = 0 when n <= 1.
BigInt star(const std::function<BigInt(const BigInt&)>& f, BigInt n);

// lambda_1(n) = floor(sqrt n); lambda_2(n) = ceil(log2 n);
// lambda_d(n) = star(lambda_{d-2}, n) for d >= 3.
// Inputs are capped at 10^6 bits; BadDepth for d < 1.
BigInt lambda(std::uint32_t d, const BigInt& n);

// alpha(n) = min{ even d : lambda_d(n) <= 6 }.
std::uint32_t alpha(const BigInt& n);

// A(0,j) = 2j; A(i,1) = 2; A(i,j) = A(i-1, A(i,j-1)). Iterative with
// memoization; returns nullopt (BeyondCap) once any intermediate exceeds cap.
std::optional<BigInt> ackermann(std::uint32_t i, const BigInt& j, const BigInt& cap);

}  // namespace shallowcode
