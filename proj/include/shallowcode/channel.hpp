// Symmetric discrete memoryless channels: validation, capacity, posteriors,
// the per-output-symbol permutations sigma_y, sampling, and entropy helpers.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "shallowcode/field.hpp"
#include "shallowcode/rng.hpp"

namespace shallowcode {

using Rational = std::pair<std::int64_t, std::int64_t>;

class ChannelSpec {
public:
    // matrix is row-major q x q, row = input x, column = output y.
    // Throws NotStochastic / NotSymmetric (with the violating index).
    static ChannelSpec validate_symmetric(std::uint32_t q, const std::vector<double>& matrix,
                                          std::optional<std::vector<Rational>> exact = std::nullopt);

    std::uint32_t q() const { return q_; }
    double p(std::uint32_t x, std::uint32_t y) const { return matrix_[x * q_ + y]; }
    const std::vector<double>& matrix() const { return matrix_; }
    const std::optional<std::vector<Rational>>& exact() const { return exact_; }

    double capacity_bits() const { return capacity_; }
    // p(X = c | Y = 0) under the uniform input distribution.
    const std::vector<double>& posterior0() const { return posterior0_; }
    // Exact zero test for posterior0 (rational channels bypass the 1e-12 cut).
    bool posterior0_is_zero(std::uint32_t c) const { return posterior0_zero_[c]; }
    // sigma_[y][x]: p(Y=y|X=x) = p(Y=0|X=sigma_y(x)); sigma_0 is the identity.
    const std::vector<std::vector<Elem>>& sigma() const { return sigma_; }

    std::uint32_t n_nonzero_posterior() const { return n_nonzero_posterior_; }
    double min_positive_row0() const { return min_positive_row0_; }

private:
    ChannelSpec() = default;

    std::uint32_t q_ = 0;
    std::vector<double> matrix_;
    std::optional<std::vector<Rational>> exact_;
    double capacity_ = 0;
    std::vector<double> posterior0_;
    std::vector<bool> posterior0_zero_;
    std::vector<std::vector<Elem>> sigma_;
    std::vector<double> row_cdf_;  // per-row cumulative, for transmit
    std::uint32_t n_nonzero_posterior_ = 0;
    double min_positive_row0_ = 0;

    friend std::vector<Elem> transmit(const ChannelSpec&, std::span<const Elem>, RandomStream&);
};

double capacity(const ChannelSpec& spec);

// Independent oracle for capacity: I(X;Y) from the joint with uniform input.
double mutual_information_uniform(const ChannelSpec& spec);

std::vector<Elem> transmit(const ChannelSpec& spec, std::span<const Elem> x, RandomStream& rs);

// q-ary entropy H_q(x); DomainError outside [0, 1].
double entropy_q(double x, std::uint32_t q);

// Base-2 entropy of a probability vector, with 0 log 0 = 0.
double entropy_bits(std::span<const double> probs);

}  // namespace shallowcode
