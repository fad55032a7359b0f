// Layered unbounded-fan-in weighted-addition circuits over F_q.
//
// Size is the total number of wires; depth is the layer count. Constructors
// keep every layer live (some gate reads the immediately preceding layer), so
// layer count equals longest-path depth. Circuits are immutable after
// construction; all transforms return new circuits.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shallowcode/field.hpp"

namespace shallowcode {

struct WireSource {
    enum class Kind : std::uint8_t { input, gate };
    Kind kind;
    std::uint32_t layer;  // meaningful for kind == gate
    std::uint32_t index;  // input index, or gate index within layer

    friend auto operator<=>(const WireSource&, const WireSource&) = default;
};

inline WireSource input_ref(std::uint32_t i) { return {WireSource::Kind::input, 0, i}; }
inline WireSource gate_ref(std::uint32_t layer, std::uint32_t index) {
    return {WireSource::Kind::gate, layer, index};
}

struct Wire {
    WireSource src;
    Elem coeff;  // always nonzero
};

struct Gate {
    std::vector<Wire> wires;  // sorted by source, duplicates merged
};

// Merge duplicate sources (summing coefficients) and drop zero coefficients.
// Returns nullopt if everything cancels; a gate must keep fan-in >= 1.
std::optional<Gate> make_gate(const Field& field, std::vector<Wire> wires);

class LinearCircuit {
public:
    LinearCircuit(Field field, std::uint32_t n_inputs, std::vector<std::vector<Gate>> layers);

    const Field& field() const { return field_; }
    std::uint32_t n_inputs() const { return n_inputs_; }
    const std::vector<std::vector<Gate>>& layers() const { return layers_; }
    const std::vector<Gate>& output_layer() const { return layers_.back(); }
    std::uint32_t n_outputs() const { return static_cast<std::uint32_t>(layers_.back().size()); }

    std::uint32_t depth() const { return static_cast<std::uint32_t>(layers_.size()); }
    std::uint64_t wire_count() const;

    std::vector<Elem> evaluate(std::span<const Elem> x) const;

private:
    Field field_;
    std::uint32_t n_inputs_;
    std::vector<std::vector<Gate>> layers_;
};

// Throws InvalidCircuit when an invariant is broken (used on file load too).
void validate_circuit(const LinearCircuit& c);

// Generator matrix: row i = evaluate(e_i), so encode(x) = sum_i x_i * row(i).
struct Matrix {
    std::uint32_t rows = 0;  // message length k
    std::uint32_t cols = 0;  // block length n
    std::vector<Elem> data;  // row-major

    Elem at(std::uint32_t r, std::uint32_t c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
    Elem& at(std::uint32_t r, std::uint32_t c) { return data[static_cast<std::size_t>(r) * cols + c]; }
};

Matrix to_generator_matrix(const LinearCircuit& c);
std::vector<Elem> apply_generator(const Field& field, const Matrix& g, std::span<const Elem> x);

LinearCircuit serial_compose(const LinearCircuit& c1, const LinearCircuit& c2);
LinearCircuit collapse_final_layer(const LinearCircuit& c);

// Identity-wiring circuit (one layer, gate i reads input i with coefficient 1).
LinearCircuit identity_circuit(const Field& field, std::uint32_t n);

std::uint64_t hamming_weight(std::span<const Elem> v);
std::uint64_t hamming_distance(std::span<const Elem> u, std::span<const Elem> v);

}  // namespace shallowcode
