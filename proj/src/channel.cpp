#include "shallowcode/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shallowcode/errors.hpp"

namespace shallowcode {
namespace {

constexpr double kSymTol = 1e-9;
constexpr double kZeroTol = 1e-12;

double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

}  // namespace

double entropy_bits(std::span<const double> probs) {
    double h = 0;
    for (double p : probs) h -= xlog2x(p);
    return h;
}

double entropy_q(double x, std::uint32_t q) {
    if (x < 0 || x > 1) raise("DomainError", "entropy_q needs x in [0,1]");
    if (q < 2) raise("DomainError", "entropy_q needs q >= 2");
    const double logq = std::log2(static_cast<double>(q));
    double h = 0;
    if (x > 0) h += x * std::log2(static_cast<double>(q - 1)) / logq - x * std::log2(x) / logq;
    if (x < 1) h -= (1 - x) * std::log2(1 - x) / logq;
    return h;
}

ChannelSpec ChannelSpec::validate_symmetric(std::uint32_t q, const std::vector<double>& matrix,
                                            std::optional<std::vector<Rational>> exact) {
    if (q < 2) raise("NotStochastic", "alphabet size must be >= 2");
    if (matrix.size() != static_cast<std::size_t>(q) * q)
        raise("NotStochastic", "matrix must be q x q");
    if (exact && exact->size() != matrix.size())
        raise("NotStochastic", "exact matrix must be q x q");

    for (std::uint32_t x = 0; x < q; ++x) {
        double sum = 0;
        for (std::uint32_t y = 0; y < q; ++y) {
            double v = matrix[x * q + y];
            if (v < -kSymTol || v > 1 + kSymTol)
                raise("NotStochastic", "entry out of [0,1] at row " + std::to_string(x));
            sum += v;
        }
        if (std::abs(sum - 1.0) > kSymTol)
            raise("NotStochastic", "row " + std::to_string(x) + " sums to " + std::to_string(sum));
    }

    auto sorted_row = [&](std::uint32_t x) {
        std::vector<double> r(matrix.begin() + x * q, matrix.begin() + (x + 1) * q);
        std::sort(r.begin(), r.end());
        return r;
    };
    auto sorted_col = [&](std::uint32_t y) {
        std::vector<double> c(q);
        for (std::uint32_t x = 0; x < q; ++x) c[x] = matrix[x * q + y];
        std::sort(c.begin(), c.end());
        return c;
    };
    const auto row0 = sorted_row(0);
    for (std::uint32_t x = 1; x < q; ++x) {
        auto r = sorted_row(x);
        for (std::uint32_t i = 0; i < q; ++i)
            if (std::abs(r[i] - row0[i]) > kSymTol)
                raise("NotSymmetric", "row " + std::to_string(x) + " is not a permutation of row 0",
                      "row " + std::to_string(x));
    }
    const auto col0 = sorted_col(0);
    for (std::uint32_t y = 0; y < q; ++y) {
        auto c = sorted_col(y);
        for (std::uint32_t i = 0; i < q; ++i)
            if (std::abs(c[i] - col0[i]) > kSymTol)
                raise("NotSymmetric", "column " + std::to_string(y) + " is not a permutation of column 0",
                      "column " + std::to_string(y));
    }

    ChannelSpec spec;
    spec.q_ = q;
    spec.matrix_ = matrix;
    spec.exact_ = std::move(exact);

    // Uniform input makes p(Y=0) = 1/q, so posterior0[c] = p(Y=0|X=c): column 0.
    spec.posterior0_.resize(q);
    for (std::uint32_t c = 0; c < q; ++c) spec.posterior0_[c] = matrix[c * q + 0];
    spec.posterior0_zero_.resize(q);
    for (std::uint32_t c = 0; c < q; ++c) {
        if (spec.exact_) {
            spec.posterior0_zero_[c] = (*spec.exact_)[c * q + 0].first == 0;
        } else {
            spec.posterior0_zero_[c] = spec.posterior0_[c] <= kZeroTol;
        }
        if (!spec.posterior0_zero_[c]) ++spec.n_nonzero_posterior_;
    }

    // sigma_y: sort each column's (probability, input) pairs and match ranks
    // against column 0, ties broken by input index; sigma_0 is the identity.
    spec.sigma_.assign(q, std::vector<Elem>(q));
    std::vector<std::pair<double, std::uint32_t>> base(q);
    for (std::uint32_t x = 0; x < q; ++x) base[x] = {matrix[x * q + 0], x};
    std::sort(base.begin(), base.end());
    for (std::uint32_t y = 0; y < q; ++y) {
        std::vector<std::pair<double, std::uint32_t>> cur(q);
        for (std::uint32_t x = 0; x < q; ++x) cur[x] = {matrix[x * q + y], x};
        std::sort(cur.begin(), cur.end());
        for (std::uint32_t r = 0; r < q; ++r) spec.sigma_[y][cur[r].second] = static_cast<Elem>(base[r].second);
    }
    for (std::uint32_t x = 0; x < q; ++x) spec.sigma_[0][x] = static_cast<Elem>(x);

    std::vector<double> first_row(matrix.begin(), matrix.begin() + q);
    spec.capacity_ = std::log2(static_cast<double>(q)) - entropy_bits(first_row);

    spec.min_positive_row0_ = 1.0;
    for (double v : first_row)
        if (v > kZeroTol) spec.min_positive_row0_ = std::min(spec.min_positive_row0_, v);

    spec.row_cdf_.resize(static_cast<std::size_t>(q) * q);
    for (std::uint32_t x = 0; x < q; ++x) {
        double acc = 0;
        for (std::uint32_t y = 0; y < q; ++y) {
            acc += matrix[x * q + y];
            spec.row_cdf_[x * q + y] = acc;
        }
        spec.row_cdf_[x * q + q - 1] = 1.0;
    }
    return spec;
}

double capacity(const ChannelSpec& spec) { return spec.capacity_bits(); }

double mutual_information_uniform(const ChannelSpec& spec) {
    const std::uint32_t q = spec.q();
    std::vector<double> py(q, 0.0);
    for (std::uint32_t x = 0; x < q; ++x)
        for (std::uint32_t y = 0; y < q; ++y) py[y] += spec.p(x, y) / q;
    double mi = 0;
    for (std::uint32_t x = 0; x < q; ++x) {
        for (std::uint32_t y = 0; y < q; ++y) {
            double joint = spec.p(x, y) / q;
            if (joint > 0 && py[y] > 0) mi += joint * std::log2(joint / ((1.0 / q) * py[y]));
        }
    }
    return mi;
}

std::vector<Elem> transmit(const ChannelSpec& spec, std::span<const Elem> x, RandomStream& rs) {
    const std::uint32_t q = spec.q();
    std::vector<Elem> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= q) raise("DomainError", "input symbol out of alphabet");
        const double u = rs.next_double();
        const double* cdf = spec.row_cdf_.data() + static_cast<std::size_t>(x[i]) * q;
        std::uint32_t s = 0;
        while (s + 1 < q && u >= cdf[s]) ++s;
        y[i] = static_cast<Elem>(s);
    }
    return y;
}

}  // namespace shallowcode
