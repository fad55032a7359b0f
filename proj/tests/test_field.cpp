#include <doctest.h>

#include "oracles.hpp"
#include "shallowcode/errors.hpp"
#include "shallowcode/field.hpp"

using namespace shallowcode;

TEST_CASE("make_field basics") {
    Field f2 = Field::make(2);
    CHECK(f2.characteristic() == 2);
    CHECK(f2.degree() == 1);
    CHECK(f2.modulus() == std::vector<Elem>{0, 1});

    Field f4 = Field::make(4);
    CHECK(f4.characteristic() == 2);
    CHECK(f4.degree() == 2);
    // 1 + x + x^2, the only irreducible monic quadratic over F_2.
    CHECK(f4.modulus() == std::vector<Elem>{1, 1, 1});

    CHECK_THROWS_AS(Field::make(6), Error);
    CHECK_THROWS_AS(Field::make(1), Error);
    CHECK_THROWS_AS(Field::make(0), Error);
}

TEST_CASE("make_field is canonical per q") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 64u, 81u, 128u, 256u}) {
        Field a = Field::make(q);
        Field b = Field::make(q);
        CHECK(a.modulus() == b.modulus());
        CHECK(a.q() == q);
    }
    // A larger field exercises the schoolbook (non-tabulated) path.
    Field big = Field::make(1u << 13);
    CHECK(big.degree() == 13);
    CHECK(big.mul(big.inv(12345), 12345) == 1);
}

TEST_CASE("field ops match the polynomial oracle") {
    for (std::uint32_t q : {4u, 8u, 9u, 27u, 25u}) {
        Field f = Field::make(q);
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b) {
                Elem got = f.mul(static_cast<Elem>(a), static_cast<Elem>(b));
                Elem want = oracles::poly_mul_mod(a, b, f.characteristic(), f.modulus());
                REQUIRE(got == want);
            }
    }
}

TEST_CASE("spec arithmetic examples") {
    Field f2 = Field::make(2);
    CHECK(f2.add(1, 1) == 0);

    // GF(4) with modulus 1+x+x^2, encoding {0,1,2=x,3=x+1}: x(x+1) = 1.
    Field f4 = Field::make(4);
    CHECK(f4.mul(2, 3) == 1);

    for (std::uint32_t q : {2u, 3u, 4u, 5u, 9u}) {
        Field f = Field::make(q);
        CHECK(f.inv(1) == 1);
        CHECK_THROWS_AS(f.inv(0), Error);
    }
}

TEST_CASE("field axioms exhaustively for q <= 9") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        Field f = Field::make(q);
        for (std::uint32_t a = 0; a < q; ++a) {
            CHECK(f.add(static_cast<Elem>(a), 0) == a);
            CHECK(f.mul(static_cast<Elem>(a), 1) == a);
            CHECK(f.add(static_cast<Elem>(a), f.neg(static_cast<Elem>(a))) == 0);
            if (a != 0) CHECK(f.mul(static_cast<Elem>(a), f.inv(static_cast<Elem>(a))) == 1);
            for (std::uint32_t b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                CHECK(f.sub(f.add(a, b), b) == a);
                for (std::uint32_t c = 0; c < q; ++c) {
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("uniform_element distribution and determinism") {
    Field f2 = Field::make(2);
    RandomStream rs(42);
    std::uint64_t ones = 0;
    const std::uint64_t draws = 100000;
    for (std::uint64_t i = 0; i < draws; ++i) ones += f2.uniform(rs);
    const double freq = static_cast<double>(ones) / draws;
    CHECK(freq > 0.49);
    CHECK(freq < 0.51);

    Field f3 = Field::make(3);
    RandomStream rs3(7);
    std::vector<bool> seen(3, false);
    for (int i = 0; i < 100; ++i) seen[f3.uniform(rs3)] = true;
    CHECK(seen[0]);
    CHECK(seen[1]);
    CHECK(seen[2]);

    RandomStream a(123), b(123);
    for (int i = 0; i < 1000; ++i) REQUIRE(f3.uniform(a) == f3.uniform(b));
}
