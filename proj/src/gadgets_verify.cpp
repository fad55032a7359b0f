// Range-detector verification engines: generic weight-band enumeration with
// incremental sparse updates, a meet-in-the-middle engine for q=2 circuits
// with few outputs and a small lower bound, and a sampled fallback.
#include <algorithm>
#include <cmath>
#include <string>

#include "shallowcode/channel.hpp"
#include "shallowcode/errors.hpp"
#include "shallowcode/gadgets.hpp"
#include "shallowcode/limits.hpp"

namespace shallowcode {

RangeDetectorSpec RangeDetectorSpec::make(std::uint32_t m_in, std::uint32_t n_out,
                                          std::uint64_t ell, std::uint64_t k, std::uint64_t r,
                                          std::optional<std::uint64_t> s) {
    RangeDetectorSpec spec;
    spec.m_in = m_in;
    spec.n_out = n_out;
    spec.ell = ell;
    spec.k = k;
    spec.r = r;
    spec.s = s.value_or(n_out);
    if (!(1 <= spec.ell && spec.ell <= spec.k && spec.k <= m_in))
        raise("DomainError", "range detector needs 1 <= ell <= k <= m_in");
    if (!(spec.r <= spec.s && spec.s <= n_out))
        raise("DomainError", "range detector needs 0 <= r <= s <= n_out");
    return spec;
}

PgcSpec PgcSpec::make(std::uint32_t n, std::uint64_t r, std::uint64_t s, std::uint32_t expansion,
                      std::uint64_t out_weight_min) {
    PgcSpec spec;
    spec.n = n;
    spec.r = r;
    spec.s = s == 0 ? n : s;
    spec.expansion = expansion;
    spec.out_weight_min = out_weight_min == 0
                              ? (static_cast<std::uint64_t>(expansion) * n + 7) / 8
                              : out_weight_min;
    if (!(1 <= spec.r && spec.r <= spec.s && spec.s <= n))
        raise("DomainError", "PGC needs 1 <= r <= s <= n");
    if (expansion < 2) raise("DomainError", "PGC needs expansion >= 2");
    return spec;
}

RangeDetectorSpec PgcSpec::as_range_detector() const {
    return RangeDetectorSpec::make(n, expansion * n, r, s, out_weight_min, expansion * n);
}

std::string to_string(Verified v) {
    switch (v) {
        case Verified::exhaustive: return "exhaustive";
        case Verified::sampled: return "sampled";
        case Verified::failed: return "failed";
    }
    return "failed";
}

namespace {

struct SparseRows {
    std::uint32_t n_in = 0, n_out = 0;
    std::vector<std::vector<std::pair<std::uint32_t, Elem>>> rows;  // per input
};

SparseRows sparse_rows(const Matrix& g) {
    SparseRows s;
    s.n_in = g.rows;
    s.n_out = g.cols;
    s.rows.resize(g.rows);
    for (std::uint32_t i = 0; i < g.rows; ++i)
        for (std::uint32_t j = 0; j < g.cols; ++j)
            if (g.at(i, j) != 0) s.rows[i].push_back({j, g.at(i, j)});
    return s;
}

// Inputs enumerated after fixing the first nonzero value to 1; valid because
// wt(C(lambda x)) = wt(C(x)) for lambda != 0.
BigInt scaled_input_count(std::uint32_t n, std::uint64_t ell, std::uint64_t k, std::uint32_t q) {
    BigInt total = 0;
    for (std::uint64_t w = ell; w <= k && w <= n; ++w) {
        BigInt t = binomial(n, w);
        for (std::uint64_t i = 0; i + 1 < w; ++i) t *= (q - 1);
        total += t;
    }
    return total;
}

class GenericEnumerator {
public:
    GenericEnumerator(const Field& f, const SparseRows& rows, const RangeDetectorSpec& spec)
        : f_(f), rows_(rows), spec_(spec), acc_(rows.n_out, 0) {}

    RdCheck run() {
        RdCheck out;
        out.engine = "enumeration";
        support_.clear();
        values_.clear();
        for (std::uint64_t w = spec_.ell; w <= spec_.k && w <= rows_.n_in; ++w) {
            if (!descend(0, w, true)) {
                out.pass = false;
                out.level = Verified::failed;
                out.witness = make_witness();
                out.inputs_checked = checked_;
                return out;
            }
        }
        out.pass = true;
        out.level = Verified::exhaustive;
        out.inputs_checked = checked_;
        return out;
    }

private:
    void apply(std::uint32_t i, Elem delta) {
        for (const auto& [j, v] : rows_.rows[i]) {
            Elem old = acc_[j];
            acc_[j] = f_.add(old, f_.mul(delta, v));
            nonzero_ += (acc_[j] != 0) - (old != 0);
        }
    }

    bool leaf_ok() {
        ++checked_;
        return nonzero_ >= spec_.r && nonzero_ <= spec_.s;
    }

    // Chooses `remaining` more support positions starting at `start`; `first`
    // marks the scaling slot whose value is pinned to 1.
    bool descend(std::uint32_t start, std::uint64_t remaining, bool first) {
        if (remaining == 0) return leaf_ok();
        for (std::uint32_t i = start; i + remaining <= rows_.n_in; ++i) {
            support_.push_back(i);
            Elem prev = 0;
            const Elem vmax = first ? 1 : static_cast<Elem>(f_.q() - 1);
            bool ok = true;
            for (Elem v = 1; v <= vmax && ok; ++v) {
                apply(i, f_.sub(v, prev));
                prev = v;
                values_.push_back(v);
                ok = descend(i + 1, remaining - 1, false);
                if (ok) values_.pop_back();
            }
            if (!ok) return false;
            apply(i, f_.neg(prev));
            support_.pop_back();
        }
        return true;
    }

    std::vector<Elem> make_witness() const {
        std::vector<Elem> x(rows_.n_in, 0);
        for (std::size_t t = 0; t < support_.size(); ++t) x[support_[t]] = values_[t];
        return x;
    }

    const Field& f_;
    const SparseRows& rows_;
    const RangeDetectorSpec& spec_;
    std::vector<Elem> acc_;
    std::uint64_t nonzero_ = 0;
    std::uint64_t checked_ = 0;
    std::vector<std::uint32_t> support_;
    std::vector<Elem> values_;
};

// ---- q = 2 meet in the middle -------------------------------------------
//
// Any linear circuit over F_2 is a matrix V; a violation of the lower bound
// is a subset S (ell <= |S| <= k) with xor of rows in S hitting a target of
// weight < r. Split inputs into halves, tabulate per-(sum, size) subset
// counts, and join the tables through each low-weight target.

struct MitmTables {
    std::uint32_t m = 0;
    std::uint64_t max_size = 0;
    std::vector<std::uint32_t> left, right;  // [(size << m) + sum] -> count

    std::uint32_t& at(std::vector<std::uint32_t>& t, std::uint64_t size, std::uint32_t sum) const {
        return t[(size << m) + sum];
    }
};

bool mitm_applicable(const RangeDetectorSpec& spec, std::uint32_t q, const Limits& lim) {
    if (q != 2 || spec.n_out > 20 || spec.s != spec.n_out) return false;
    if (spec.r > 6 || spec.k > 32) return false;
    BigInt targets = 0;
    for (std::uint64_t j = 0; j < spec.r; ++j) targets += binomial(spec.n_out, j);
    if (targets > 100000) return false;
    const std::uint32_t nh = (spec.m_in + 1) / 2;
    BigInt half = 0;
    for (std::uint64_t w = 0; w <= std::min<std::uint64_t>(spec.k, nh); ++w) half += binomial(nh, w);
    return half <= lim.mitm_half;
}

void mitm_fill(std::vector<std::uint32_t>& table, const std::vector<std::uint32_t>& rows,
               std::uint32_t m, std::uint64_t max_size) {
    // DFS over subsets of `rows` with size <= max_size, counting (sum, size).
    auto rec = [&](auto&& self, std::uint32_t start, std::uint32_t sum, std::uint64_t size) -> void {
        table[(size << m) + sum]++;
        if (size == max_size) return;
        for (std::uint32_t i = start; i < rows.size(); ++i)
            self(self, i + 1, sum ^ rows[i], size + 1);
    };
    rec(rec, 0, 0, 0);
}

// Recover one subset of `rows` with the given sum and size.
bool mitm_trace(const std::vector<std::uint32_t>& rows, std::uint32_t want_sum,
                std::uint64_t want_size, std::vector<std::uint32_t>& out,
                std::uint32_t start = 0, std::uint32_t sum = 0, std::uint64_t size = 0) {
    if (size == want_size) return sum == want_sum;
    for (std::uint32_t i = start; i < rows.size(); ++i) {
        out.push_back(i);
        if (mitm_trace(rows, want_sum, want_size, out, i + 1, sum ^ rows[i], size + 1)) return true;
        out.pop_back();
    }
    return false;
}

RdCheck mitm_verify(const Matrix& g, const RangeDetectorSpec& spec) {
    RdCheck out;
    out.engine = "mitm";
    const std::uint32_t m = spec.n_out;
    std::vector<std::uint32_t> packed(g.rows, 0);
    for (std::uint32_t i = 0; i < g.rows; ++i)
        for (std::uint32_t j = 0; j < g.cols; ++j)
            if (g.at(i, j)) packed[i] |= 1u << j;

    const std::uint32_t nh = (spec.m_in + 1) / 2;
    std::vector<std::uint32_t> rows_l(packed.begin(), packed.begin() + nh);
    std::vector<std::uint32_t> rows_r(packed.begin() + nh, packed.end());
    const std::uint64_t max_l = std::min<std::uint64_t>(spec.k, rows_l.size());
    const std::uint64_t max_r = std::min<std::uint64_t>(spec.k, rows_r.size());

    std::vector<std::uint32_t> tl((max_l + 1) << m, 0), tr((max_r + 1) << m, 0);
    mitm_fill(tl, rows_l, m, max_l);
    mitm_fill(tr, rows_r, m, max_r);
    out.inputs_checked = scaled_input_count(spec.m_in, spec.ell, spec.k, 2)
                             .convert_to<std::uint64_t>();

    // Targets: all outputs of weight < r.
    std::vector<std::uint32_t> targets;
    for (std::uint32_t e = 0; e < (1u << m); ++e)
        if (static_cast<std::uint64_t>(__builtin_popcount(e)) < spec.r) targets.push_back(e);

    for (std::uint32_t e : targets) {
        for (std::uint64_t a = 0; a <= max_l; ++a) {
            for (std::uint64_t b = 0; b <= max_r; ++b) {
                const std::uint64_t w = a + b;
                if (w < spec.ell || w > spec.k) continue;
                for (std::uint32_t sum = 0; sum < (1u << m); ++sum) {
                    if (tl[(a << m) + sum] == 0) continue;
                    if (tr[(b << m) + (sum ^ e)] == 0) continue;
                    // Violation: reconstruct a witness.
                    std::vector<std::uint32_t> wl, wr;
                    mitm_trace(rows_l, sum, a, wl);
                    mitm_trace(rows_r, sum ^ e, b, wr);
                    std::vector<Elem> x(spec.m_in, 0);
                    for (std::uint32_t i : wl) x[i] = 1;
                    for (std::uint32_t i : wr) x[nh + i] = 1;
                    out.pass = false;
                    out.level = Verified::failed;
                    out.witness = std::move(x);
                    return out;
                }
            }
        }
    }
    out.pass = true;
    out.level = Verified::exhaustive;
    return out;
}

RdCheck sampled_verify(const Field& f, const SparseRows& rows, const RangeDetectorSpec& spec,
                       RandomStream& rs, std::uint64_t samples) {
    RdCheck out;
    out.engine = "sampled";
    // Weight sampled proportionally to the number of inputs of that weight.
    std::vector<BigInt> cum;
    BigInt total = 0;
    for (std::uint64_t w = spec.ell; w <= spec.k; ++w) {
        BigInt t = binomial(spec.m_in, w);
        for (std::uint64_t i = 0; i < w; ++i) t *= (f.q() - 1);
        total += t;
        cum.push_back(total);
    }
    std::vector<Elem> acc(spec.n_out);
    for (std::uint64_t t = 0; t < samples; ++t) {
        BigInt pick = uniform_bigint_below(total, rs);
        std::uint64_t w = spec.ell;
        for (std::size_t i = 0; i < cum.size(); ++i) {
            if (pick < cum[i]) {
                w = spec.ell + i;
                break;
            }
        }
        // Floyd sampling of the support.
        std::vector<std::uint32_t> support;
        for (std::uint32_t j = spec.m_in - static_cast<std::uint32_t>(w); j < spec.m_in; ++j) {
            auto v = static_cast<std::uint32_t>(rs.below(j + 1));
            if (std::find(support.begin(), support.end(), v) != support.end()) support.push_back(j);
            else support.push_back(v);
        }
        std::fill(acc.begin(), acc.end(), 0);
        std::vector<Elem> x(spec.m_in, 0);
        for (std::uint32_t i : support) {
            x[i] = f.uniform_nonzero(rs);
            for (const auto& [j, v] : rows.rows[i]) acc[j] = f.add(acc[j], f.mul(x[i], v));
        }
        std::uint64_t wt = 0;
        for (Elem e : acc) wt += (e != 0);
        ++out.inputs_checked;
        if (wt < spec.r || wt > spec.s) {
            out.pass = false;
            out.level = Verified::failed;
            out.witness = std::move(x);
            return out;
        }
    }
    out.pass = true;
    out.level = Verified::sampled;
    return out;
}

void check_spec_matches(const LinearCircuit& c, const RangeDetectorSpec& spec) {
    if (c.n_inputs() != spec.m_in || c.n_outputs() != spec.n_out)
        raise("ArityMismatch", "circuit is " + std::to_string(c.n_inputs()) + "->" +
                                   std::to_string(c.n_outputs()) + ", spec wants " +
                                   std::to_string(spec.m_in) + "->" + std::to_string(spec.n_out));
}

}  // namespace

RdCheck verify_range_detector(const LinearCircuit& c, const RangeDetectorSpec& spec) {
    check_spec_matches(c, spec);
    const Limits& lim = Limits::get();
    // Vacuous bounds need no enumeration.
    if (spec.r == 0 && spec.s == spec.n_out) {
        RdCheck out;
        out.pass = true;
        out.level = Verified::exhaustive;
        out.engine = "trivial";
        return out;
    }
    const Matrix g = to_generator_matrix(c);
    if (scaled_input_count(spec.m_in, spec.ell, spec.k, c.field().q()) <= lim.enum_inputs) {
        const SparseRows rows = sparse_rows(g);
        return GenericEnumerator(c.field(), rows, spec).run();
    }
    if (mitm_applicable(spec, c.field().q(), lim)) return mitm_verify(g, spec);
    raise("TooLarge", "input weight band exceeds the exact verification caps");
}

RdCheck check_range_detector(const LinearCircuit& c, const RangeDetectorSpec& spec,
                             RandomStream& rs, std::uint64_t samples) {
    check_spec_matches(c, spec);
    const Limits& lim = Limits::get();
    if (samples == 0) samples = lim.samples;
    if (spec.r == 0 && spec.s == spec.n_out) {
        RdCheck out;
        out.pass = true;
        out.level = Verified::exhaustive;
        out.engine = "trivial";
        return out;
    }
    const Matrix g = to_generator_matrix(c);
    if (scaled_input_count(spec.m_in, spec.ell, spec.k, c.field().q()) <= lim.enum_inputs) {
        const SparseRows rows = sparse_rows(g);
        return GenericEnumerator(c.field(), rows, spec).run();
    }
    if (mitm_applicable(spec, c.field().q(), lim)) return mitm_verify(g, spec);
    const SparseRows rows = sparse_rows(g);
    return sampled_verify(c.field(), rows, spec, rs, samples);
}

BigInt ball_volume(std::uint32_t n, std::uint32_t radius, std::uint32_t q) {
    if (radius > n || q < 2) raise("DomainError", "ball_volume needs 0 <= radius <= n, q >= 2");
    BigInt total = 0;
    for (std::uint32_t i = 0; i <= radius; ++i) {
        BigInt t = binomial(n, i);
        for (std::uint32_t j = 0; j < i; ++j) t *= (q - 1);
        total += t;
    }
    return total;
}

double entropy_volume_bound(std::uint32_t n, double gamma, std::uint32_t q) {
    if (gamma < 0 || gamma > 1.0 - 1.0 / q) raise("DomainError", "need 0 <= gamma <= 1 - 1/q");
    return std::pow(static_cast<double>(q), entropy_q(gamma, q) * n);
}

}  // namespace shallowcode
