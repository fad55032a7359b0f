// Exact arithmetic over F_q for prime powers q <= 2^16.
//
// Elements are indices in [0, q); the base-p digits of an index are the
// coefficients of a polynomial of degree < m over F_p (digit i = coefficient
// of x^i), so index 0 is the additive and index 1 the multiplicative
// identity. The modulus is the lexicographically smallest monic irreducible
// polynomial of its degree (coefficients compared low-degree-first), which
// makes make_field(q) canonical: same q, same field, byte for byte.
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "shallowcode/rng.hpp"

namespace shallowcode {

using Elem = std::uint16_t;

class Field {
public:
    // q = p^m, p prime, m >= 1, q <= 2^16. Throws NotPrimePower otherwise.
    static Field make(std::uint32_t q);

    std::uint32_t q() const { return data_->q; }
    std::uint32_t characteristic() const { return data_->p; }
    std::uint32_t degree() const { return data_->m; }
    // Coefficients low-to-high, length m+1, monic. For m = 1 this is the
    // degenerate polynomial x, i.e. {0, 1}.
    const std::vector<Elem>& modulus() const { return data_->modulus; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;  // DivisionByZero for a = 0

    Elem pow(Elem a, std::uint64_t e) const;

    // Uniform over all q elements (zero included); exact via rejection sampling.
    Elem uniform(RandomStream& rs) const;
    // Uniform over the q-1 nonzero elements.
    Elem uniform_nonzero(RandomStream& rs) const;

    bool operator==(const Field& other) const {
        return data_->q == other.data_->q;  // canonical modulus per q
    }
    bool operator!=(const Field& other) const { return !(*this == other); }

private:
    struct Data {
        std::uint32_t q = 0, p = 0, m = 0;
        std::vector<Elem> modulus;
        bool is_binary = false;         // p == 2: add is XOR on indices
        std::vector<Elem> exp_table;    // g^i for i in [0, q-1), when tabulated
        std::vector<std::uint32_t> log_table;  // log_g a for a != 0
        bool tabulated = false;
    };

    explicit Field(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    Elem mul_schoolbook(Elem a, Elem b) const;

    std::shared_ptr<const Data> data_;
};

}  // namespace shallowcode
