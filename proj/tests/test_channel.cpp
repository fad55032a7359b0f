#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shallowcode/channel.hpp"
#include "shallowcode/errors.hpp"

using namespace shallowcode;

TEST_CASE("validate_symmetric accepts and rejects") {
    // Noiseless q=3: identity matrix; sigma_y maps y to 0.
    std::vector<double> eye{1, 0, 0, 0, 1, 0, 0, 0, 1};
    ChannelSpec noiseless = ChannelSpec::validate_symmetric(3, eye);
    for (std::uint32_t y = 0; y < 3; ++y) CHECK(noiseless.sigma()[y][y] == 0);

    ChannelSpec bsc = ChannelSpec::validate_symmetric(2, oracles::bsc_matrix(0.11));
    CHECK(bsc.sigma()[0] == std::vector<Elem>{0, 1});
    CHECK(bsc.sigma()[1] == std::vector<Elem>{1, 0});  // the swap

    CHECK_THROWS_AS(ChannelSpec::validate_symmetric(2, {0.8, 0.2, 0.3, 0.7}), Error);
    CHECK_THROWS_AS(ChannelSpec::validate_symmetric(2, {0.8, 0.1, 0.1, 0.8}), Error);
}

TEST_CASE("capacity formula") {
    std::vector<double> eye{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    CHECK(capacity(ChannelSpec::validate_symmetric(4, eye)) == doctest::Approx(2.0));

    std::vector<double> uniform(4, 0.25);
    std::vector<double> m(16, 0.25);
    CHECK(capacity(ChannelSpec::validate_symmetric(4, m)) == doctest::Approx(0.0));

    ChannelSpec bsc = ChannelSpec::validate_symmetric(2, oracles::bsc_matrix(0.11));
    const double h = -(0.11 * std::log2(0.11) + 0.89 * std::log2(0.89));
    CHECK(capacity(bsc) == doctest::Approx(1 - h).epsilon(1e-12));
    CHECK(capacity(bsc) == doctest::Approx(0.500084).epsilon(1e-4));
}

TEST_CASE("capacity equals mutual information under the uniform input") {
    std::vector<double> eye{1, 0, 0, 0, 1, 0, 0, 0, 1};
    CHECK(mutual_information_uniform(ChannelSpec::validate_symmetric(3, eye)) ==
          doctest::Approx(std::log2(3.0)).epsilon(1e-12));

    std::vector<double> flat(9, 1.0 / 3);
    CHECK(mutual_information_uniform(ChannelSpec::validate_symmetric(3, flat)) ==
          doctest::Approx(0.0));

    RandomStream rs(31337);
    for (int t = 0; t < 100; ++t) {
        const std::uint32_t q = 2 + rs.below(4);  // up to 5
        ChannelSpec ch = oracles::random_symmetric_channel(q, rs);
        REQUIRE(std::abs(capacity(ch) - mutual_information_uniform(ch)) < 1e-9);
    }
}

TEST_CASE("sigma property holds exhaustively") {
    RandomStream rs(8);
    for (int t = 0; t < 50; ++t) {
        const std::uint32_t q = 2 + rs.below(4);
        ChannelSpec ch = oracles::random_symmetric_channel(q, rs);
        CHECK(ch.sigma()[0] == [&] {
            std::vector<Elem> id(q);
            for (std::uint32_t i = 0; i < q; ++i) id[i] = static_cast<Elem>(i);
            return id;
        }());
        for (std::uint32_t x = 0; x < q; ++x)
            for (std::uint32_t y = 0; y < q; ++y)
                REQUIRE(std::abs(ch.p(x, y) - ch.p(ch.sigma()[y][x], 0)) <= 1e-9);
    }
}

TEST_CASE("posterior0 is a probability vector") {
    RandomStream rs(99);
    for (int t = 0; t < 20; ++t) {
        ChannelSpec ch = oracles::random_symmetric_channel(2 + rs.below(4), rs);
        double sum = 0;
        for (double p : ch.posterior0()) {
            REQUIRE(p >= 0);
            sum += p;
        }
        REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-9));
        // Doubly stochastic: posterior0 is column 0 itself.
        for (std::uint32_t c = 0; c < ch.q(); ++c)
            REQUIRE(ch.posterior0()[c] == doctest::Approx(ch.p(c, 0)));
    }
}

TEST_CASE("transmit") {
    std::vector<double> eye{1, 0, 0, 1};
    ChannelSpec noiseless = ChannelSpec::validate_symmetric(2, eye);
    RandomStream rs(5);
    std::vector<Elem> x{0, 1, 1, 0, 1};
    CHECK(transmit(noiseless, x, rs) == x);

    ChannelSpec bsc0 = ChannelSpec::validate_symmetric(2, oracles::bsc_matrix(0.0));
    CHECK(transmit(bsc0, x, rs) == x);

    ChannelSpec bsc = ChannelSpec::validate_symmetric(2, oracles::bsc_matrix(0.11));
    std::vector<Elem> zeros(100000, 0);
    RandomStream rs2(123);
    auto y = transmit(bsc, zeros, rs2);
    double flips = 0;
    for (Elem e : y) flips += e;
    CHECK(flips / zeros.size() == doctest::Approx(0.11).epsilon(0.05));

    RandomStream a(9), b(9);
    CHECK(transmit(bsc, x, a) == transmit(bsc, x, b));
}

TEST_CASE("q-ary entropy") {
    CHECK(entropy_q(0.0, 3) == doctest::Approx(0.0));
    CHECK(entropy_q(0.5, 2) == doctest::Approx(1.0));
    CHECK(entropy_q(2.0 / 3, 3) == doctest::Approx(1.0));  // maximum at 1 - 1/q
    CHECK_THROWS_AS(entropy_q(-0.1, 2), Error);
    CHECK_THROWS_AS(entropy_q(1.1, 2), Error);
}
