#include <doctest.h>

#include "shallowcode/ackermann.hpp"
#include "shallowcode/errors.hpp"

using namespace shallowcode;

namespace {

// Direct iteration oracle for star counts.
BigInt star_oracle(const std::function<BigInt(const BigInt&)>& f, BigInt n) {
    BigInt i = 0;
    while (n > 1) {
        n = f(n);
        ++i;
    }
    return i;
}

}  // namespace

TEST_CASE("lambda base cases") {
    CHECK(lambda(1, 16) == 4);   // floor sqrt
    CHECK(lambda(1, 17) == 4);
    CHECK(lambda(2, 8) == 3);    // ceil log2
    CHECK(lambda(2, 9) == 4);
    CHECK(lambda(2, 1) == 0);
    CHECK_THROWS_AS(lambda(0, 5), Error);
    CHECK_THROWS_AS(lambda(1, 0), Error);
}

TEST_CASE("lambda_4(65) = 4 by direct iteration") {
    // 65 -> 7 -> 3 -> 2 -> 1 under ceil log2.
    CHECK(lambda(4, 65) == 4);
    CHECK(lambda(4, 65) == star_oracle([](const BigInt& m) { return ceil_log2(m); }, 65));
}

TEST_CASE("lambda monotonicity and depth ordering") {
    for (std::uint32_t d : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
        BigInt prev = lambda(d, 1);
        for (std::uint64_t n = 2; n <= 3000; ++n) {
            BigInt cur = lambda(d, n);
            REQUIRE(cur >= prev);
            prev = cur;
        }
    }
    for (std::uint32_t d : {1u, 2u, 3u, 4u, 5u, 6u}) {
        for (std::uint64_t n : {2ull, 10ull, 100ull, 10000ull, 1000000ull}) {
            REQUIRE(lambda(d + 2, n) <= lambda(d, n));
        }
    }
}

TEST_CASE("star fixpoint identity") {
    auto log_fn = [](const BigInt& m) { return ceil_log2(m); };
    for (std::uint64_t n : {3ull, 5ull, 17ull, 230ull, 100000ull}) {
        BigInt fn = log_fn(n);
        if (fn >= 2) REQUIRE(star(log_fn, fn) == star(log_fn, n) - 1);
    }
}

TEST_CASE("alpha boundary values") {
    CHECK(alpha(64) == 2);   // ceil log2 64 = 6
    CHECK(alpha(65) == 4);   // lambda_2 = 7 > 6, lambda_4 = 4
    CHECK(alpha(1) == 2);
    BigInt prev = 0;
    for (std::uint64_t n = 1; n <= 100000; n = n * 3 / 2 + 1) {
        std::uint32_t a = alpha(n);
        REQUIRE(a % 2 == 0);
        REQUIRE(a >= 2);
        REQUIRE(BigInt(a) >= prev);
        prev = a;
    }
}

TEST_CASE("ackermann values") {
    const BigInt cap = BigInt(1) << 1000;
    CHECK(*ackermann(0, 5, cap) == 10);
    CHECK(*ackermann(1, 4, cap) == 16);   // A(1,j) = 2^j
    CHECK(*ackermann(2, 4, cap) == 65536);
    CHECK(*ackermann(2, 3, cap) == 16);
    CHECK(*ackermann(3, 3, cap) == 65536);
    for (std::uint32_t i = 0; i <= 6; ++i) REQUIRE(*ackermann(i, 2, cap) == 4);
    CHECK(!ackermann(3, 4, cap).has_value());  // 2^^65536 blows past the cap
    CHECK_THROWS_AS(ackermann(1, 0, cap), Error);
    CHECK_THROWS_AS(ackermann(1, 3, BigInt(1)), Error);
}

TEST_CASE("the tower example, structurally") {
    // A(2,5) = 2^65536 handled as a big integer; lambda_6 of it stays <= 6,
    // covering the d = 6 schedule step of the inverse-Ackermann claim.
    const BigInt cap = BigInt(1) << 100000;
    auto tower = ackermann(2, 5, cap);
    REQUIRE(tower.has_value());
    CHECK(bit_length(*tower) == 65537);
    CHECK(lambda(6, *tower) <= 6);
    CHECK(lambda(4, *tower) == 5);  // 2^65536 -> 65536 -> 16 -> 4 -> 2 -> 1
}
