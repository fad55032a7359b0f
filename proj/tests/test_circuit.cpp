#include <doctest.h>

#include "oracles.hpp"
#include "shallowcode/circuit.hpp"
#include "shallowcode/errors.hpp"

using namespace shallowcode;

namespace {

LinearCircuit single_gate_sum(const Field& f, std::uint32_t n) {
    Gate g;
    for (std::uint32_t i = 0; i < n; ++i) g.wires.push_back({input_ref(i), 1});
    std::vector<Gate> layer{g};
    return LinearCircuit(f, n, {layer});
}

}  // namespace

TEST_CASE("evaluate on identity and sum gates") {
    Field f3 = Field::make(3);
    LinearCircuit id = identity_circuit(f3, 2);
    CHECK(id.evaluate(std::vector<Elem>{1, 2}) == std::vector<Elem>{1, 2});
    CHECK(id.wire_count() == 2);
    CHECK(id.depth() == 1);

    Field f2 = Field::make(2);
    LinearCircuit sum = single_gate_sum(f2, 2);
    CHECK(sum.evaluate(std::vector<Elem>{1, 1}) == std::vector<Elem>{0});
    CHECK(sum.wire_count() == 2);
    CHECK(sum.depth() == 1);

    CHECK_THROWS_AS(sum.evaluate(std::vector<Elem>{1}), Error);
}

TEST_CASE("chained gates with modular coefficients") {
    // GF(3): layer1 g = 2 x1; layer2 h = 2 g; h(2) = 4*2 mod 3 = 2.
    Field f3 = Field::make(3);
    Gate g;
    g.wires.push_back({input_ref(0), 2});
    Gate h;
    h.wires.push_back({gate_ref(0, 0), 2});
    LinearCircuit c(f3, 1, {{g}, {h}});
    CHECK(c.evaluate(std::vector<Elem>{2}) == std::vector<Elem>{2});
    CHECK(c.depth() == 2);

    // Collapsing turns h into a single gate with coefficient 4 mod 3 = 1.
    LinearCircuit collapsed = collapse_final_layer(c);
    CHECK(collapsed.depth() == 1);
    CHECK(collapsed.layers()[0][0].wires.size() == 1);
    CHECK(collapsed.layers()[0][0].wires[0].coeff == 1);
    CHECK(collapsed.evaluate(std::vector<Elem>{2}) == std::vector<Elem>{2});
}

TEST_CASE("generator matrix matches evaluation") {
    Field f2 = Field::make(2);
    Matrix gid = to_generator_matrix(identity_circuit(f2, 3));
    CHECK(gid.rows == 3);
    CHECK(gid.cols == 3);
    for (std::uint32_t i = 0; i < 3; ++i)
        for (std::uint32_t j = 0; j < 3; ++j) CHECK(gid.at(i, j) == (i == j ? 1 : 0));

    Matrix gsum = to_generator_matrix(single_gate_sum(f2, 2));
    CHECK(gsum.rows == 2);
    CHECK(gsum.cols == 1);
    CHECK(gsum.at(0, 0) == 1);
    CHECK(gsum.at(1, 0) == 1);
}

TEST_CASE("random circuits: matrix action equals evaluation on all inputs") {
    RandomStream rs(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const std::uint32_t q = trial % 2 == 0 ? 2 : 3;
        Field f = Field::make(q);
        const std::uint32_t k = 2 + rs.below(3);  // up to 4 inputs, 3^4 = 81
        LinearCircuit c = oracles::random_circuit(f, k, 1 + rs.below(3), 5, rs);
        Matrix g = to_generator_matrix(c);
        for (const auto& x : oracles::all_vectors(q, k))
            REQUIRE(c.evaluate(x) == apply_generator(f, g, x));
    }
}

TEST_CASE("serial_compose function and metrics") {
    Field f2 = Field::make(2);
    LinearCircuit id2 = identity_circuit(f2, 2);
    LinearCircuit composed = serial_compose(id2, id2);
    CHECK(composed.depth() == 2);
    CHECK(composed.evaluate(std::vector<Elem>{1, 0}) == std::vector<Elem>{1, 0});

    Field f3 = Field::make(3);
    CHECK_THROWS_AS(serial_compose(id2, identity_circuit(f3, 2)), Error);
    CHECK_THROWS_AS(serial_compose(id2, identity_circuit(f2, 3)), Error);

    // Generator matrix of a composition equals the matrix product, checked
    // exhaustively on all inputs for small k, q.
    RandomStream rs(7);
    for (int trial = 0; trial < 10; ++trial) {
        const std::uint32_t q = trial % 2 == 0 ? 2 : 3;
        Field f = Field::make(q);
        const std::uint32_t k = 2 + rs.below(3);
        LinearCircuit c1 = oracles::random_circuit(f, k, 1 + rs.below(2), 4, rs);
        LinearCircuit c2 = oracles::random_circuit(f, c1.n_outputs(), 1 + rs.below(2), 4, rs);
        LinearCircuit both = serial_compose(c1, c2);
        CHECK(both.depth() == c1.depth() + c2.depth());
        for (const auto& x : oracles::all_vectors(q, k))
            REQUIRE(both.evaluate(x) == c2.evaluate(c1.evaluate(x)));
    }
}

TEST_CASE("collapse_final_layer preserves the function") {
    Field f2 = Field::make(2);
    CHECK_THROWS_AS(collapse_final_layer(identity_circuit(f2, 2)), Error);

    RandomStream rs(99);
    int done = 0;
    for (int trial = 0; trial < 40 && done < 20; ++trial) {
        const std::uint32_t q = trial % 2 == 0 ? 2 : 3;
        Field f = Field::make(q);
        const std::uint32_t k = 2 + rs.below(4);  // up to k=5, 2^5 = 32 inputs
        LinearCircuit c = oracles::random_circuit(f, k, 2 + rs.below(2), 4, rs);
        std::optional<LinearCircuit> collapsed;
        try {
            collapsed = collapse_final_layer(c);
        } catch (const Error& e) {
            // Cancellation to an empty gate is a legal random-circuit outcome.
            REQUIRE(e.code() == "CollapseCancellation");
        }
        if (!collapsed) continue;
        ++done;
        CHECK(collapsed->depth() == c.depth() - 1);
        for (const auto& x : oracles::all_vectors(q, k))
            REQUIRE(collapsed->evaluate(x) == c.evaluate(x));
    }
    CHECK(done >= 10);
}

TEST_CASE("linearity on random circuits") {
    RandomStream rs(5);
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        Field f = Field::make(q);
        LinearCircuit c = oracles::random_circuit(f, 4, 2, 5, rs);
        for (int i = 0; i < 200; ++i) {
            Elem a = f.uniform(rs), b = f.uniform(rs);
            std::vector<Elem> x(4), y(4), axby(4);
            for (int j = 0; j < 4; ++j) {
                x[j] = f.uniform(rs);
                y[j] = f.uniform(rs);
                axby[j] = f.add(f.mul(a, x[j]), f.mul(b, y[j]));
            }
            auto ex = c.evaluate(x), ey = c.evaluate(y), exy = c.evaluate(axby);
            for (std::size_t j = 0; j < exy.size(); ++j)
                REQUIRE(exy[j] == f.add(f.mul(a, ex[j]), f.mul(b, ey[j])));
        }
    }
}

TEST_CASE("duplicate sources merge and zero wires are rejected") {
    Field f2 = Field::make(2);
    auto merged = make_gate(f2, {{input_ref(0), 1}, {input_ref(0), 1}});
    CHECK(!merged.has_value());  // 1 + 1 = 0 over GF(2): everything cancels

    Field f3 = Field::make(3);
    auto g = make_gate(f3, {{input_ref(0), 1}, {input_ref(0), 1}});
    REQUIRE(g.has_value());
    CHECK(g->wires.size() == 1);
    CHECK(g->wires[0].coeff == 2);
}

TEST_CASE("hamming helpers") {
    std::vector<Elem> zero(5, 0);
    CHECK(hamming_weight(zero) == 0);
    std::vector<Elem> u{1, 2, 0}, v{1, 0, 0};
    CHECK(hamming_distance(u, u) == 0);
    CHECK(hamming_distance(u, v) == 1);
    CHECK(hamming_weight(u) == 2);
    std::vector<Elem> w{1, 0};
    CHECK_THROWS_AS(hamming_distance(u, w), Error);
}

TEST_CASE("wire accounting is additive under serial composition") {
    Field f2 = Field::make(2);
    RandomStream rs(17);
    LinearCircuit c1 = oracles::random_circuit(f2, 3, 2, 4, rs);
    LinearCircuit c2 = oracles::random_circuit(f2, c1.n_outputs(), 2, 4, rs);
    LinearCircuit both = serial_compose(c1, c2);
    CHECK(both.wire_count() == c1.wire_count() + c2.wire_count());
}
