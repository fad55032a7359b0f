#include "shallowcode/circuit.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "shallowcode/errors.hpp"
#include "shallowcode/limits.hpp"

namespace shallowcode {

std::optional<Gate> make_gate(const Field& field, std::vector<Wire> wires) {
    std::sort(wires.begin(), wires.end(),
              [](const Wire& a, const Wire& b) { return a.src < b.src; });
    Gate g;
    g.wires.reserve(wires.size());
    for (const Wire& w : wires) {
        if (!g.wires.empty() && g.wires.back().src == w.src) {
            g.wires.back().coeff = field.add(g.wires.back().coeff, w.coeff);
        } else {
            g.wires.push_back(w);
        }
    }
    std::erase_if(g.wires, [](const Wire& w) { return w.coeff == 0; });
    if (g.wires.empty()) return std::nullopt;
    return g;
}

LinearCircuit::LinearCircuit(Field field, std::uint32_t n_inputs,
                             std::vector<std::vector<Gate>> layers)
    : field_(std::move(field)), n_inputs_(n_inputs), layers_(std::move(layers)) {
    validate_circuit(*this);
}

std::uint64_t LinearCircuit::wire_count() const {
    std::uint64_t total = 0;
    for (const auto& layer : layers_)
        for (const auto& gate : layer) total += gate.wires.size();
    return total;
}

std::vector<Elem> LinearCircuit::evaluate(std::span<const Elem> x) const {
    if (x.size() != n_inputs_)
        raise("InputLengthMismatch", "expected " + std::to_string(n_inputs_) + " inputs, got " +
                                         std::to_string(x.size()));
    std::vector<std::vector<Elem>> values(layers_.size());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        values[l].resize(layers_[l].size());
        for (std::size_t gi = 0; gi < layers_[l].size(); ++gi) {
            Elem acc = 0;
            for (const Wire& w : layers_[l][gi].wires) {
                Elem v = (w.src.kind == WireSource::Kind::input) ? x[w.src.index]
                                                                 : values[w.src.layer][w.src.index];
                acc = field_.add(acc, field_.mul(w.coeff, v));
            }
            values[l][gi] = acc;
        }
    }
    return values.back();
}

void validate_circuit(const LinearCircuit& c) {
    const auto& layers = c.layers();
    if (layers.empty()) raise("InvalidCircuit", "circuit has no layers");
    if (c.n_inputs() == 0) raise("InvalidCircuit", "circuit has no inputs");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        if (layers[l].empty()) raise("InvalidCircuit", "layer " + std::to_string(l) + " is empty");
        bool reads_previous = (l == 0);
        for (std::size_t gi = 0; gi < layers[l].size(); ++gi) {
            const Gate& g = layers[l][gi];
            if (g.wires.empty()) raise("InvalidCircuit", "empty gate at layer " + std::to_string(l));
            for (std::size_t wi = 0; wi < g.wires.size(); ++wi) {
                const Wire& w = g.wires[wi];
                if (w.coeff == 0 || w.coeff >= c.field().q())
                    raise("InvalidCircuit", "wire coefficient out of range");
                if (w.src.kind == WireSource::Kind::input) {
                    if (w.src.index >= c.n_inputs()) raise("InvalidCircuit", "input index out of range");
                } else {
                    if (w.src.layer >= l) raise("InvalidCircuit", "wire source not in an earlier layer");
                    if (w.src.index >= layers[w.src.layer].size())
                        raise("InvalidCircuit", "gate index out of range");
                    if (w.src.layer + 1 == l) reads_previous = true;
                }
                if (wi > 0 && !(g.wires[wi - 1].src < w.src))
                    raise("InvalidCircuit", "gate wires not sorted/deduplicated");
            }
        }
        if (!reads_previous)
            raise("InvalidCircuit", "layer " + std::to_string(l) + " reads nothing from layer " +
                                        std::to_string(l - 1));
    }
}

Matrix to_generator_matrix(const LinearCircuit& c) {
    if (c.n_inputs() > Limits::get().gen_matrix_inputs)
        raise("TooManyInputs", "n_inputs " + std::to_string(c.n_inputs()) + " exceeds cap");
    Matrix g;
    g.rows = c.n_inputs();
    g.cols = c.n_outputs();
    g.data.assign(static_cast<std::size_t>(g.rows) * g.cols, 0);
    std::vector<Elem> basis(c.n_inputs(), 0);
    for (std::uint32_t i = 0; i < c.n_inputs(); ++i) {
        basis[i] = 1;
        std::vector<Elem> out = c.evaluate(basis);
        std::copy(out.begin(), out.end(), g.data.begin() + static_cast<std::size_t>(i) * g.cols);
        basis[i] = 0;
    }
    return g;
}

std::vector<Elem> apply_generator(const Field& field, const Matrix& g, std::span<const Elem> x) {
    if (x.size() != g.rows) raise("InputLengthMismatch", "message length does not match matrix");
    std::vector<Elem> out(g.cols, 0);
    for (std::uint32_t i = 0; i < g.rows; ++i) {
        if (x[i] == 0) continue;
        for (std::uint32_t j = 0; j < g.cols; ++j)
            out[j] = field.add(out[j], field.mul(x[i], g.at(i, j)));
    }
    return out;
}

LinearCircuit serial_compose(const LinearCircuit& c1, const LinearCircuit& c2) {
    if (c1.field() != c2.field()) raise("FieldMismatch", "circuits over different fields");
    if (c1.n_outputs() != c2.n_inputs())
        raise("ArityMismatch", "c1 has " + std::to_string(c1.n_outputs()) + " outputs, c2 expects " +
                                   std::to_string(c2.n_inputs()));
    std::vector<std::vector<Gate>> layers = c1.layers();
    const std::uint32_t base = c1.depth();
    for (std::uint32_t l = 0; l < c2.depth(); ++l) {
        std::vector<Gate> layer = c2.layers()[l];
        for (Gate& g : layer) {
            for (Wire& w : g.wires) {
                if (w.src.kind == WireSource::Kind::input) {
                    // c2's inputs are c1's output gates.
                    w.src = gate_ref(base - 1, w.src.index);
                } else {
                    w.src.layer += base;
                }
            }
            std::sort(g.wires.begin(), g.wires.end(),
                      [](const Wire& a, const Wire& b) { return a.src < b.src; });
        }
        layers.push_back(std::move(layer));
    }
    return LinearCircuit(c1.field(), c1.n_inputs(), std::move(layers));
}

LinearCircuit collapse_final_layer(const LinearCircuit& c) {
    if (c.depth() < 2) raise("DepthTooSmall", "collapse needs depth >= 2");
    const Field& f = c.field();
    const auto& layers = c.layers();
    const std::size_t last = layers.size() - 1;
    std::vector<Gate> collapsed;
    collapsed.reserve(layers[last].size());
    for (const Gate& g : layers[last]) {
        std::map<WireSource, Elem> form;
        auto accumulate = [&](WireSource src, Elem coeff) {
            Elem& slot = form[src];
            slot = f.add(slot, coeff);
            if (slot == 0) form.erase(src);
        };
        for (const Wire& w : g.wires) {
            if (w.src.kind == WireSource::Kind::input) {
                accumulate(w.src, w.coeff);
            } else {
                // Substitute the read gate's linear form, whatever layer it is in.
                for (const Wire& inner : layers[w.src.layer][w.src.index].wires)
                    accumulate(inner.src, f.mul(w.coeff, inner.coeff));
            }
        }
        if (form.empty())
            raise("CollapseCancellation", "collapsed gate cancelled to the zero form");
        Gate ng;
        ng.wires.reserve(form.size());
        for (const auto& [src, coeff] : form) ng.wires.push_back({src, coeff});
        collapsed.push_back(std::move(ng));
    }
    std::vector<std::vector<Gate>> out_layers(layers.begin(), layers.begin() + (last - 1));
    out_layers.push_back(std::move(collapsed));
    return LinearCircuit(f, c.n_inputs(), std::move(out_layers));
}

LinearCircuit identity_circuit(const Field& field, std::uint32_t n) {
    std::vector<Gate> layer(n);
    for (std::uint32_t i = 0; i < n; ++i) layer[i].wires.push_back({input_ref(i), 1});
    return LinearCircuit(field, n, {std::move(layer)});
}

std::uint64_t hamming_weight(std::span<const Elem> v) {
    std::uint64_t w = 0;
    for (Elem e : v) w += (e != 0);
    return w;
}

std::uint64_t hamming_distance(std::span<const Elem> u, std::span<const Elem> v) {
    if (u.size() != v.size()) raise("LengthMismatch", "hamming_distance needs equal lengths");
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < u.size(); ++i) d += (u[i] != v[i]);
    return d;
}

}  // namespace shallowcode
