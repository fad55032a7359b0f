// Independent oracles used by the tests. These deliberately avoid the library
// implementation paths they check: polynomial arithmetic is schoolbook over
// digit vectors, matrices come from explicit evaluation, counts from direct
// enumeration.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "shallowcode/channel.hpp"
#include "shallowcode/circuit.hpp"
#include "shallowcode/field.hpp"
#include "shallowcode/rng.hpp"

namespace oracles {

using shallowcode::Elem;

// Base-p digit vector of an element index.
inline std::vector<std::uint32_t> digits(std::uint32_t idx, std::uint32_t p, std::uint32_t m) {
    std::vector<std::uint32_t> d(m, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
        d[i] = idx % p;
        idx /= p;
    }
    return d;
}

inline std::uint32_t undigits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
    std::uint32_t idx = 0;
    for (std::size_t i = d.size(); i-- > 0;) idx = idx * p + d[i];
    return idx;
}

// Schoolbook polynomial product reduced by the modulus (low-to-high coeffs).
inline Elem poly_mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p,
                         const std::vector<Elem>& modulus) {
    const auto m = static_cast<std::uint32_t>(modulus.size() - 1);
    auto da = digits(a, p, m), db = digits(b, p, m);
    std::vector<std::uint32_t> prod(2 * m - 1, 0);
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    for (std::size_t k = prod.size(); k-- > m;) {
        std::uint32_t c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        for (std::uint32_t i = 0; i < m; ++i)
            prod[k - m + i] = (prod[k - m + i] + p - (c * modulus[i]) % p) % p;
    }
    prod.resize(m);
    std::vector<std::uint32_t> out(prod.begin(), prod.end());
    return static_cast<Elem>(undigits(out, p));
}

// All q^n vectors of length n over [0, q), odometer order.
inline std::vector<std::vector<Elem>> all_vectors(std::uint32_t q, std::uint32_t n) {
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> x(n, 0);
    for (;;) {
        out.push_back(x);
        std::uint32_t i = 0;
        while (i < n && x[i] == q - 1) x[i++] = 0;
        if (i == n) break;
        ++x[i];
    }
    return out;
}

// Random circulant-based symmetric channel (rows are cyclic shifts of a
// random probability vector), optionally relabelled on the output side.
inline shallowcode::ChannelSpec random_symmetric_channel(std::uint32_t q,
                                                         shallowcode::RandomStream& rs,
                                                         bool relabel = true) {
    std::vector<double> base(q);
    double sum = 0;
    for (auto& v : base) {
        v = 0.05 + rs.next_double();
        sum += v;
    }
    for (auto& v : base) v /= sum;
    std::vector<std::uint32_t> perm(q);
    for (std::uint32_t i = 0; i < q; ++i) perm[i] = i;
    if (relabel)
        for (std::uint32_t i = q - 1; i > 0; --i)
            std::swap(perm[i], perm[rs.below(i + 1)]);
    std::vector<double> matrix(static_cast<std::size_t>(q) * q);
    for (std::uint32_t x = 0; x < q; ++x)
        for (std::uint32_t y = 0; y < q; ++y) matrix[x * q + perm[y]] = base[(y + q - x) % q];
    return shallowcode::ChannelSpec::validate_symmetric(q, matrix);
}

inline std::vector<double> bsc_matrix(double flip) {
    return {1 - flip, flip, flip, 1 - flip};
}

// Uniformly random layered circuit for equivalence sweeps.
inline shallowcode::LinearCircuit random_circuit(const shallowcode::Field& field,
                                                 std::uint32_t n_inputs, std::uint32_t depth,
                                                 std::uint32_t max_gates,
                                                 shallowcode::RandomStream& rs) {
    using namespace shallowcode;
    std::vector<std::vector<Gate>> layers(depth);
    std::vector<std::uint32_t> sizes(depth);
    for (std::uint32_t l = 0; l < depth; ++l) sizes[l] = 1 + rs.below(max_gates);
    for (std::uint32_t l = 0; l < depth; ++l) {
        for (std::uint32_t gi = 0; gi < sizes[l]; ++gi) {
            std::vector<Wire> wires;
            // Always read the previous layer so every layer stays live.
            if (l > 0) {
                auto idx = static_cast<std::uint32_t>(rs.below(sizes[l - 1]));
                wires.push_back({gate_ref(l - 1, idx), field.uniform_nonzero(rs)});
            }
            const std::uint32_t extra = 1 + rs.below(3);
            for (std::uint32_t e = 0; e < extra; ++e) {
                if (l == 0 || rs.below(2) == 0) {
                    auto idx = static_cast<std::uint32_t>(rs.below(n_inputs));
                    wires.push_back({input_ref(idx), field.uniform_nonzero(rs)});
                } else {
                    auto ll = static_cast<std::uint32_t>(rs.below(l));
                    auto idx = static_cast<std::uint32_t>(rs.below(sizes[ll]));
                    wires.push_back({gate_ref(ll, idx), field.uniform_nonzero(rs)});
                }
            }
            auto g = make_gate(field, std::move(wires));
            if (!g) {
                // Cancellation: fall back to a bare input read.
                Gate fallback;
                fallback.wires.push_back({input_ref(0), 1});
                if (l > 0) {
                    fallback.wires.push_back({gate_ref(l - 1, 0), 1});
                }
                layers[l].push_back(std::move(fallback));
            } else {
                layers[l].push_back(std::move(*g));
            }
        }
    }
    return LinearCircuit(field, n_inputs, std::move(layers));
}

}  // namespace oracles
