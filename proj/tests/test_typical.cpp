#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shallowcode/errors.hpp"
#include "shallowcode/typical.hpp"

using namespace shallowcode;

namespace {

ChannelSpec noiseless2() { return ChannelSpec::validate_symmetric(2, {1, 0, 0, 1}); }
ChannelSpec bsc(double p) { return ChannelSpec::validate_symmetric(2, oracles::bsc_matrix(p)); }

}  // namespace

TEST_CASE("is_typical on the noiseless channel") {
    TypicalParams params{noiseless2(), 4, 0.3};
    std::vector<Elem> y{0, 0, 0, 0};
    CHECK(is_typical(params, y, std::vector<Elem>{0, 0, 0, 0}));
    // One mismatch: fraction of zeros is 3/4, |3/4 - 1| = 0.25 <= 0.3; symbol 1
    // has zero posterior and is unconstrained.
    CHECK(is_typical(params, y, std::vector<Elem>{0, 0, 0, 1}));
    CHECK(!is_typical(params, y, std::vector<Elem>{0, 0, 1, 1}));
    CHECK_THROWS_AS(is_typical(params, y, std::vector<Elem>{0}), Error);
}

TEST_CASE("the clean word can be atypical for its own reception") {
    TypicalParams params{bsc(0.25), 16, 0.05};
    std::vector<Elem> y(16, 0);
    CHECK(!is_typical(params, y, y));  // |1 - 0.75| = 0.25 > 0.05
}

TEST_CASE("enumerate_typical") {
    TypicalParams all{bsc(0.25), 3, 1.0};
    std::vector<Elem> y{0, 1, 0};
    CHECK(enumerate_typical(all, y).size() == 8);  // eps = 1 admits everything

    TypicalParams params{noiseless2(), 4, 0.3};
    std::vector<Elem> y0(4, 0);
    auto members = enumerate_typical(params, y0);
    CHECK(members.size() == 5);  // Hamming ball of radius 1 around y
    for (const auto& x : members) CHECK(hamming_distance(x, y0) <= 1);
}

TEST_CASE("typical cardinality is independent of y") {
    RandomStream rs(4);
    for (int t = 0; t < 10; ++t) {
        const std::uint32_t q = 2 + rs.below(2);
        ChannelSpec ch = oracles::random_symmetric_channel(q, rs);
        const std::uint32_t n = 4 + rs.below(3);
        TypicalParams params{ch, n, 0.2 + 0.2 * rs.next_double()};
        std::size_t size0 = 0;
        bool first = true;
        for (const auto& y : oracles::all_vectors(q, n)) {
            std::size_t s = enumerate_typical(params, y).size();
            if (first) {
                size0 = s;
                first = false;
            } else {
                REQUIRE(s == size0);
            }
        }
    }
}

TEST_CASE("monotone in eps") {
    ChannelSpec ch = bsc(0.2);
    std::vector<Elem> y{0, 1, 1, 0, 0, 1};
    TypicalParams small{ch, 6, 0.1}, large{ch, 6, 0.4};
    auto a = enumerate_typical(small, y);
    auto b = enumerate_typical(large, y);
    CHECK(a.size() <= b.size());
    for (const auto& x : a) CHECK(is_typical(large, y, x));
}

TEST_CASE("count_typical closed forms") {
    TypicalParams all{bsc(0.3), 5, 1.0};
    CHECK(count_typical(all) == BigInt(32));  // q^n

    // BSC(0.25), n=16, eps=0.05: only flip count 4 admissible, C(16,4) = 1820.
    TypicalParams params{bsc(0.25), 16, 0.05};
    CHECK(count_typical(params) == BigInt(1820));
}

TEST_CASE("count_typical equals enumeration on random channels") {
    RandomStream rs(6021);
    for (int t = 0; t < 50; ++t) {
        const std::uint32_t q = 2 + rs.below(2);  // q <= 3
        ChannelSpec ch = oracles::random_symmetric_channel(q, rs);
        const std::uint32_t n = 2 + rs.below(9);  // n <= 10
        TypicalParams params{ch, n, 0.05 + 0.5 * rs.next_double()};
        std::vector<Elem> y(n, 0);
        REQUIRE(count_typical(params) == BigInt(enumerate_typical(params, y).size()));
    }
}

TEST_CASE("lemma 3.2 normalized log bracketing at n = 48") {
    TypicalParams params{bsc(0.25), 48, 0.02};
    const double log_count = std::log2(count_typical(params).convert_to<double>());
    const double h = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
    const double normalized = log_count / 48.0;
    CHECK(normalized > h - 0.25);
    CHECK(normalized < h + 0.25);
}

TEST_CASE("mass outside typical: exact and Monte Carlo agree") {
    ChannelSpec noiseless = noiseless2();
    TypicalParams p0{noiseless, 6, 0.4};
    CHECK(mass_outside_exact(p0) == doctest::Approx(0.0));
    RandomStream rs(11);
    CHECK(mass_outside_typical(p0, 2000, rs).estimate == doctest::Approx(0.0));

    TypicalParams p1{bsc(0.25), 12, 0.1};
    const double exact = mass_outside_exact(p1);
    RandomStream rs2(12);
    auto mc = mass_outside_typical(p1, 20000, rs2);
    CHECK(std::abs(mc.estimate - exact) <= 3 * mc.stderr_ + 1e-12);
}

TEST_CASE("exact mass matches direct enumeration of channel outputs") {
    // Full q^n enumeration as an independent oracle for the count-vector DFS.
    ChannelSpec ch = bsc(0.25);
    const std::uint32_t n = 8;
    TypicalParams params{ch, n, 0.1};
    std::vector<Elem> zero(n, 0);
    double direct = 0;
    for (const auto& z : oracles::all_vectors(2, n)) {
        double pr = 1;
        for (std::uint32_t i = 0; i < n; ++i) pr *= ch.p(0, z[i]);
        if (!is_typical(params, z, zero)) direct += pr;
    }
    CHECK(mass_outside_exact(params) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("chernoff comparator is reported") {
    TypicalParams params{bsc(0.2), 100, 0.1};
    RandomStream rs(3);
    auto mc = mass_outside_typical(params, 10, rs);
    const double expected = 4.0 * std::exp(-0.01 * 0.8 * 100 / 2);
    CHECK(mc.chernoff_comparator == doctest::Approx(expected).epsilon(1e-12));
}
