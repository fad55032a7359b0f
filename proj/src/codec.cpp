#include "shallowcode/codec.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <set>
#include <thread>

#include "shallowcode/ackermann.hpp"
#include "shallowcode/errors.hpp"
#include "shallowcode/limits.hpp"

namespace shallowcode {
namespace {

std::uint64_t checked_message_count(std::uint32_t q, std::uint32_t k, std::uint64_t cap,
                                    const char* what) {
    double count = std::pow(static_cast<double>(q), static_cast<double>(k));
    if (count > static_cast<double>(cap)) raise("TooLarge", std::string(what) + ": q^k exceeds cap");
    std::uint64_t c = 1;
    for (std::uint32_t i = 0; i < k; ++i) c *= q;
    return c;
}

// ---- packed GF(2) decoding ------------------------------------------------
//
// For q = 2 and n <= 64 a codeword is one machine word; typicality of x given
// y collapses to popcount(x ^ s) lying in an integer interval, with s the
// mask of coordinates whose sigma_{y_i} is the swap.

struct PackedCode {
    std::uint32_t k = 0, n = 0;
    std::vector<std::uint64_t> rows;
    std::int64_t lo = 0, hi = -1;  // admissible interval for popcount(x ^ s)

    static std::optional<PackedCode> make(const CodeInstance& inst, const ChannelSpec& ch,
                                          double eps) {
        if (inst.field.q() != 2 || inst.n > 64 || inst.k > 62) return std::nullopt;
        PackedCode p;
        p.k = inst.k;
        p.n = inst.n;
        p.rows.resize(inst.k, 0);
        for (std::uint32_t i = 0; i < inst.k; ++i)
            for (std::uint32_t j = 0; j < inst.n; ++j)
                if (inst.gen.at(i, j)) p.rows[i] |= 1ull << j;
        const CountBox box = admissible_counts(ch, inst.n, eps);
        // z = x ^ s; N_1(z) = popcount, N_0 = n - N_1.
        std::int64_t lo = 0, hi = inst.n;
        if (box.constrained[1]) {
            lo = std::max(lo, box.lo[1]);
            hi = std::min(hi, box.hi[1]);
        }
        if (box.constrained[0]) {
            lo = std::max<std::int64_t>(lo, inst.n - box.hi[0]);
            hi = std::min<std::int64_t>(hi, inst.n - box.lo[0]);
        }
        p.lo = lo;
        p.hi = hi;
        return p;
    }

    std::uint64_t swap_mask(const ChannelSpec& ch, std::span<const Elem> y) const {
        std::uint64_t s = 0;
        for (std::uint32_t i = 0; i < n; ++i)
            if (ch.sigma()[y[i]][0] == 1) s |= 1ull << i;
        return s;
    }

    bool typical(std::uint64_t cw, std::uint64_t s) const {
        const std::int64_t w = std::popcount(cw ^ s);
        return w >= lo && w <= hi;
    }

    std::uint64_t pack(std::span<const Elem> v) const {
        std::uint64_t out = 0;
        for (std::uint32_t i = 0; i < v.size(); ++i)
            if (v[i]) out |= 1ull << i;
        return out;
    }

    std::uint64_t encode_mask(std::uint64_t msg_bits) const {
        std::uint64_t cw = 0;
        for (std::uint32_t i = 0; i < k; ++i)
            if ((msg_bits >> i) & 1) cw ^= rows[i];
        return cw;
    }

    // Visits all 2^k codewords in Gray-code order; f(msg_bits, cw) returning
    // false stops the walk early.
    template <typename F>
    void walk(F&& f) const {
        std::uint64_t cw = 0;
        const std::uint64_t total = 1ull << k;
        if (!f(0, cw)) return;
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            cw ^= rows[std::countr_zero(idx)];
            if (!f(idx ^ (idx >> 1), cw)) return;
        }
    }
};

// ---- generic odometer decoding --------------------------------------------

struct GenericWalker {
    const CodeInstance& inst;
    const ChannelSpec& ch;
    std::vector<std::vector<std::pair<std::uint32_t, Elem>>> rows;  // sparse generator rows
    CountBox box;

    GenericWalker(const CodeInstance& inst_, const ChannelSpec& ch_, double eps)
        : inst(inst_), ch(ch_), box(admissible_counts(ch_, inst_.n, eps)) {
        rows.resize(inst.k);
        for (std::uint32_t i = 0; i < inst.k; ++i)
            for (std::uint32_t j = 0; j < inst.n; ++j)
                if (inst.gen.at(i, j)) rows[i].push_back({j, inst.gen.at(i, j)});
    }

    // Visits all q^k messages; f(message digits, counts-ok) false stops.
    template <typename F>
    void walk(std::span<const Elem> y, F&& f) const {
        const Field& fld = inst.field;
        const std::uint32_t q = fld.q();
        std::vector<Elem> digits(inst.k, 0);
        std::vector<Elem> cw(inst.n, 0);
        std::vector<std::int64_t> counts(q, 0);
        for (std::uint32_t j = 0; j < inst.n; ++j) ++counts[ch.sigma()[y[j]][0]];

        auto apply = [&](std::uint32_t i, Elem delta) {
            for (const auto& [j, v] : rows[i]) {
                Elem old = cw[j];
                Elem nw = fld.add(old, fld.mul(delta, v));
                --counts[ch.sigma()[y[j]][old]];
                ++counts[ch.sigma()[y[j]][nw]];
                cw[j] = nw;
            }
        };
        auto ok = [&]() {
            for (std::uint32_t c = 0; c < q; ++c) {
                if (!box.constrained[c]) continue;
                if (counts[c] < box.lo[c] || counts[c] > box.hi[c]) return false;
            }
            return true;
        };

        for (;;) {
            if (!f(digits, ok())) return;
            std::uint32_t i = 0;
            while (i < inst.k && digits[i] == q - 1) {
                apply(i, fld.sub(0, digits[i]));
                digits[i++] = 0;
            }
            if (i == inst.k) return;
            apply(i, fld.sub(static_cast<Elem>(digits[i] + 1), digits[i]));
            ++digits[i];
        }
    }
};

std::vector<Elem> unpack_bits(std::uint64_t bits, std::uint32_t k) {
    std::vector<Elem> m(k, 0);
    for (std::uint32_t i = 0; i < k; ++i) m[i] = (bits >> i) & 1;
    return m;
}

// Decoding failure indicator with early exit: failure unless the sent
// codeword is typical and no other codeword is.
bool decode_fails(const CodeInstance& inst, const ChannelSpec& ch, double eps,
                  std::span<const Elem> y, std::span<const Elem> message,
                  const std::optional<PackedCode>& packed) {
    if (packed) {
        const std::uint64_t s = packed->swap_mask(ch, y);
        const std::uint64_t m_bits = packed->pack(message);
        const std::uint64_t m_cw = packed->encode_mask(m_bits);
        if (!packed->typical(m_cw, s)) return true;
        bool other = false;
        packed->walk([&](std::uint64_t msg, std::uint64_t cw) {
            if (msg != m_bits && packed->typical(cw, s)) {
                other = true;
                return false;
            }
            return true;
        });
        return other;
    }
    checked_message_count(inst.field.q(), inst.k, Limits::get().decode_messages, "failure_prob_mc");
    GenericWalker walker(inst, ch, eps);
    std::vector<Elem> cw = inst.encode(message);
    if (!is_typical({ch, inst.n, eps}, y, cw)) return true;
    bool other = false;
    walker.walk(y, [&](const std::vector<Elem>& digits, bool typ) {
        if (typ && !std::equal(digits.begin(), digits.end(), message.begin(), message.end())) {
            other = true;
            return false;
        }
        return true;
    });
    return other;
}

}  // namespace

double default_eps(const ChannelSpec& channel, std::uint32_t n) {
    return std::max(1.0 / n, channel.min_positive_row0() / 2.0);
}

std::string channel_digest(const ChannelSpec& channel) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto eat = [&](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    eat(channel.q());
    for (double d : channel.matrix()) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(d));
        std::memcpy(&bits, &d, sizeof(bits));
        eat(bits);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CodeInstance build_capacity_code(const ChannelSpec& channel, double rate_target, std::uint32_t n,
                                 double gamma, std::uint64_t seed, const CodecConfig& cfg) {
    const double cap = capacity(channel);
    if (rate_target >= cap)
        raise("RateAboveCapacity", "rate " + std::to_string(rate_target) +
                                       " is not below capacity " + std::to_string(cap));
    if (!(gamma > 0 && gamma < 1)) raise("DomainError", "gamma must lie in (0, 1)");
    const Field field = Field::make(channel.q());
    const double logq = std::log2(static_cast<double>(channel.q()));
    const auto k = static_cast<std::uint32_t>(std::floor(rate_target * n / logq + 1e-12));
    if (k < 1) raise("BadShape", "block length too small for the requested rate");

    const std::uint32_t depth_budget =
        cfg.mother_depth.value_or(std::max<std::uint32_t>(2, alpha(BigInt(k))));
    BuildReport mother = build_good_code(field, k, depth_budget, cfg.gadgets,
                                         mix64(seed ^ 0x6d6f746865720000ull));
    const std::uint32_t big = mother.circuit.n_outputs();
    const double gamma_left = static_cast<double>(mother.rd.r) / big;  // weight target / (R k)

    RandomStream rs = RandomStream::derive(seed, 0xd15);
    std::uint32_t tries = 0;
    for (std::uint32_t d = std::min(cfg.disperser_d0, n);; d = std::min(2 * d, n)) {
        bool at_cap = (d >= n);
        try {
            DisperserSearch found =
                find_disperser(big, n, d, gamma_left, gamma, rs, cfg.max_tries / 4 + 1);
            tries += found.tries;
            // Assign uniform coefficients to the edges; retry on an unwired or
            // all-zero gate (the circuit IR has no empty gates).
            for (std::uint32_t at = 0; at < 8; ++at) {
                ++tries;
                std::vector<std::vector<std::uint32_t>> incoming(n);
                for (std::uint32_t v = 0; v < big; ++v)
                    for (std::uint32_t r : found.graph.adj[v]) incoming[r].push_back(v);
                std::vector<Gate> layer;
                layer.reserve(n);
                bool ok = true;
                for (std::uint32_t j = 0; j < n && ok; ++j) {
                    std::vector<Wire> wires;
                    for (std::uint32_t v : incoming[j]) {
                        Elem a = field.uniform(rs);
                        if (a != 0) wires.push_back({input_ref(v), a});
                    }
                    auto g = make_gate(field, std::move(wires));
                    if (!g) ok = false;
                    else layer.push_back(std::move(*g));
                }
                if (!ok) continue;
                try {
                    LinearCircuit dispersed(field, big, {std::move(layer)});
                    LinearCircuit encoder =
                        collapse_final_layer(serial_compose(mother.circuit, dispersed));
                    CodeInstance inst{field, k, n, encoder, to_generator_matrix(encoder), {}};
                    inst.meta.seed = seed;
                    inst.meta.channel_digest = channel_digest(channel);
                    inst.meta.rate_bits = static_cast<double>(k) / n * logq;
                    inst.meta.gamma = gamma;
                    inst.meta.eps_default = default_eps(channel, n);
                    inst.meta.wires = encoder.wire_count();
                    inst.meta.depth = encoder.depth();
                    inst.meta.mother_mode = mother.notes;
                    inst.meta.mother_verified = to_string(mother.verified);
                    inst.meta.disperser_degree = d;
                    inst.meta.disperser_mode =
                        found.check.mode == CheckMode::exhaustive ? "exhaustive" : "sampled";
                    inst.meta.tries = tries;
                    return inst;
                } catch (const Error& e) {
                    if (e.code() != "CollapseCancellation" && e.code() != "InvalidCircuit") throw;
                }
            }
        } catch (const Error& e) {
            if (e.code() != "Exhausted") throw;
            if (at_cap) throw;
        }
        if (at_cap) raise("Exhausted", "no disperser layer found up to degree n");
    }
}

DecodeResult decode_typical(const CodeInstance& inst, const ChannelSpec& channel, double eps,
                            std::span<const Elem> y) {
    if (y.size() != inst.n) raise("LengthMismatch", "received word length mismatch");
    DecodeResult result;
    auto packed = PackedCode::make(inst, channel, eps);
    if (packed) {
        const std::uint64_t s = packed->swap_mask(channel, y);
        std::uint64_t last = 0;
        packed->walk([&](std::uint64_t msg, std::uint64_t cw) {
            if (packed->typical(cw, s)) {
                ++result.candidates;
                last = msg;
            }
            return true;
        });
        if (result.candidates == 1) result.message = unpack_bits(last, inst.k);
        return result;
    }
    checked_message_count(inst.field.q(), inst.k, Limits::get().decode_messages, "decode_typical");
    GenericWalker walker(inst, channel, eps);
    std::vector<Elem> last;
    walker.walk(y, [&](const std::vector<Elem>& digits, bool typ) {
        if (typ) {
            ++result.candidates;
            last = digits;
        }
        return true;
    });
    if (result.candidates == 1) result.message = std::move(last);
    return result;
}

double failure_prob_exact(const CodeInstance& inst, const ChannelSpec& channel, double eps,
                          std::span<const Elem> message) {
    const std::uint32_t q = channel.q();
    double states = std::pow(static_cast<double>(q), static_cast<double>(inst.n));
    if (states > static_cast<double>(Limits::get().failure_exact_outputs))
        raise("TooLarge", "failure_prob_exact: q^n exceeds cap");
    const std::vector<Elem> cw = inst.encode(message);
    std::vector<Elem> m(message.begin(), message.end());

    double total = 0;
    std::vector<Elem> y(inst.n, 0);
    auto rec = [&](auto&& self, std::uint32_t pos, double prob) -> void {
        if (prob == 0) return;
        if (pos == inst.n) {
            DecodeResult dec = decode_typical(inst, channel, eps, y);
            if (!dec.message || *dec.message != m) total += prob;
            return;
        }
        for (std::uint32_t s = 0; s < q; ++s) {
            y[pos] = static_cast<Elem>(s);
            self(self, pos + 1, prob * channel.p(cw[pos], s));
        }
    };
    rec(rec, 0, 1.0);
    return total;
}

McResult failure_prob_mc(const CodeInstance& inst, const ChannelSpec& channel, double eps,
                         std::uint32_t message_sample_size, std::uint64_t trials,
                         std::uint64_t seed, std::uint32_t threads) {
    if (message_sample_size < 1) raise("DomainError", "need at least one message");
    auto packed = PackedCode::make(inst, channel, eps);
    if (!packed)
        checked_message_count(inst.field.q(), inst.k, Limits::get().decode_messages,
                              "failure_prob_mc");

    // Sampled messages: the all-zero message first, then distinct random ones.
    std::vector<std::vector<Elem>> messages{std::vector<Elem>(inst.k, 0)};
    {
        RandomStream ms = RandomStream::derive(seed, 0x6d7367);
        std::set<std::vector<Elem>> seen{messages[0]};
        double space = std::pow(static_cast<double>(inst.field.q()),
                                static_cast<double>(inst.k));
        const auto want = static_cast<std::uint32_t>(
            std::min(static_cast<double>(message_sample_size), space));
        while (messages.size() < want) {
            std::vector<Elem> m(inst.k);
            for (auto& e : m) e = inst.field.uniform(ms);
            if (seen.insert(m).second) messages.push_back(std::move(m));
        }
    }

    constexpr std::uint64_t kBlock = 256;
    struct Task {
        std::uint32_t msg;
        std::uint64_t block, first, count;
    };
    std::vector<Task> tasks;
    for (std::uint32_t mi = 0; mi < messages.size(); ++mi)
        for (std::uint64_t first = 0, b = 0; first < trials; first += kBlock, ++b)
            tasks.push_back({mi, b, first, std::min(kBlock, trials - first)});

    std::vector<std::uint64_t> failures(messages.size(), 0);
    std::vector<std::uint64_t> task_failures(tasks.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            const Task& task = tasks[t];
            RandomStream rs =
                RandomStream::derive(seed, (static_cast<std::uint64_t>(task.msg) << 32) + task.block);
            const std::vector<Elem>& m = messages[task.msg];
            const std::vector<Elem> cw = inst.encode(m);
            std::uint64_t fails = 0;
            for (std::uint64_t i = 0; i < task.count; ++i) {
                std::vector<Elem> y = transmit(channel, cw, rs);
                if (decode_fails(inst, channel, eps, y, m, packed)) ++fails;
            }
            task_failures[t] = fails;
        }
    };
    threads = std::max<std::uint32_t>(threads, 1);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::uint32_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t t = 0; t < tasks.size(); ++t) failures[tasks[t].msg] += task_failures[t];

    McResult out;
    for (std::uint32_t mi = 0; mi < messages.size(); ++mi) {
        McMessageRow row;
        row.message = messages[mi];
        row.trials = trials;
        row.failures = failures[mi];
        row.estimate = trials ? static_cast<double>(failures[mi]) / trials : 0.0;
        row.stderr_ = trials ? std::sqrt(row.estimate * (1 - row.estimate) / trials) : 0.0;
        if (row.estimate >= out.max_estimate) {
            out.max_estimate = row.estimate;
            out.stderr_at_max = row.stderr_;
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

bool restriction_uniformity_check(const Field& field, const BipartiteGraph& h,
                                  std::span<const Elem> x) {
    validate_graph(h);
    if (x.size() != h.n_left) raise("LengthMismatch", "x must live on the left vertex set");
    const std::uint32_t q = field.q();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (left, right)
    for (std::uint32_t v = 0; v < h.n_left; ++v)
        for (std::uint32_t r : h.adj[v]) edges.push_back({v, r});
    if (hamming_weight(x) == 0) raise("BadInput", "x must be nonzero (S would be empty)");

    double states = std::pow(static_cast<double>(q), static_cast<double>(edges.size()));
    if (states > static_cast<double>(Limits::get().uniformity_states))
        raise("TooLarge", "q^|E| exceeds the uniformity cap");

    // S = N(supp(x)), the gates whose value can depend on x.
    std::vector<std::uint32_t> s_index(h.n_right, UINT32_MAX);
    std::vector<std::uint32_t> s_verts;
    for (std::uint32_t v = 0; v < h.n_left; ++v) {
        if (x[v] == 0) continue;
        for (std::uint32_t r : h.adj[v])
            if (s_index[r] == UINT32_MAX) {
                s_index[r] = static_cast<std::uint32_t>(s_verts.size());
                s_verts.push_back(r);
            }
    }
    std::uint64_t cells = 1;
    for (std::size_t i = 0; i < s_verts.size(); ++i) cells *= q;
    std::vector<std::uint64_t> tally(cells, 0);

    std::vector<Elem> alpha(edges.size(), 0);
    std::vector<Elem> value(s_verts.size(), 0);
    for (;;) {
        std::fill(value.begin(), value.end(), 0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto [u, r] = edges[e];
            if (x[u] == 0 || s_index[r] == UINT32_MAX) continue;
            value[s_index[r]] =
                field.add(value[s_index[r]], field.mul(alpha[e], x[u]));
        }
        std::uint64_t cell = 0;
        for (std::size_t i = 0; i < s_verts.size(); ++i) cell = cell * q + value[i];
        ++tally[cell];
        std::size_t e = 0;
        while (e < edges.size() && alpha[e] == q - 1) alpha[e++] = 0;
        if (e == edges.size()) break;
        ++alpha[e];
    }
    for (std::uint64_t c : tally)
        if (c != tally[0]) return false;
    return true;
}

double predicted_exponent(const ChannelSpec& channel, double rate, double gamma, double /*eps*/) {
    const std::uint32_t q = channel.q();
    std::vector<double> row(channel.matrix().begin(), channel.matrix().begin() + q);
    return rate - (1 - gamma) * std::log2(static_cast<double>(q)) + entropy_bits(row);
}

}  // namespace shallowcode
