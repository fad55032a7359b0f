// Las Vegas builders for the mother-code combinators.
#include <algorithm>
#include <cmath>
#include <string>

#include "shallowcode/ackermann.hpp"
#include "shallowcode/errors.hpp"
#include "shallowcode/gadgets.hpp"
#include "shallowcode/limits.hpp"

namespace shallowcode {
namespace {

// Substream labels, so each builder stage draws from its own stream.
enum Stream : std::uint64_t {
    st_wiring = 1,
    st_coeffs = 2,
    st_verify = 3,
    st_stage = 4,
};

RandomStream stage_stream(std::uint64_t seed, std::uint64_t label, std::uint64_t t) {
    return RandomStream::derive(seed, (label << 32) + t);
}

// Distinct sources with coefficients uniform over F_q; zero coefficients drop
// their wires, and an all-zero draw is redrawn so the gate keeps fan-in >= 1.
Gate sample_gate_distinct(const Field& f, std::uint32_t n_src, std::uint32_t fanin,
                          RandomStream& rs,
                          const std::function<WireSource(std::uint32_t)>& src) {
    fanin = std::min(fanin, n_src);
    for (;;) {
        std::vector<std::uint32_t> picks;
        for (std::uint32_t j = n_src - fanin; j < n_src; ++j) {
            auto t = static_cast<std::uint32_t>(rs.below(j + 1));
            if (std::find(picks.begin(), picks.end(), t) != picks.end()) picks.push_back(j);
            else picks.push_back(t);
        }
        std::vector<Wire> wires;
        for (std::uint32_t i : picks) {
            Elem c = f.uniform(rs);
            if (c != 0) wires.push_back({src(i), c});
        }
        if (auto g = make_gate(f, std::move(wires))) return *g;
    }
}

// Sources sampled with repetition, then merged; redrawn while everything
// cancels.
Gate sample_gate_repetition(const Field& f, std::uint32_t n_src, std::uint32_t fanin,
                            RandomStream& rs,
                            const std::function<WireSource(std::uint32_t)>& src) {
    for (;;) {
        std::vector<Wire> wires;
        for (std::uint32_t t = 0; t < fanin; ++t) {
            auto i = static_cast<std::uint32_t>(rs.below(n_src));
            Elem c = f.uniform(rs);
            if (c != 0) wires.push_back({src(i), c});
        }
        if (auto g = make_gate(f, std::move(wires))) return *g;
    }
}

BuildReport finish_report(LinearCircuit circuit, RangeDetectorSpec rd, const RdCheck& check,
                          std::uint32_t tries, std::uint64_t seed, std::string notes) {
    BuildReport rep{std::move(circuit), rd, check.pass ? check.level : Verified::failed,
                    tries,  0,  0,      seed, std::move(notes)};
    rep.wires = rep.circuit.wire_count();
    rep.depth = rep.circuit.depth();
    return rep;
}

// One disperser-shaped layer with uniform coefficients: left = the base's
// outputs, rights sampled at twice the width and purged back down so output
// fan-in stays bounded by the post-purge right degree.
LinearCircuit sample_amplifier_layer(const Field& f, std::uint32_t n_left, std::uint32_t n_out,
                                     double rho, std::uint32_t d, double eps, RandomStream& rs) {
    const std::uint32_t m2 = 2 * n_out;
    const std::uint32_t deg = std::min(d, m2);
    BipartiteGraph g = sample_left_regular(n_left, m2, deg, rs);
    {
        RandomStream check_rs = RandomStream::derive(rs.next_u64(), 1);
        DisperserCheck check = check_disperser(g, rho, eps, check_rs, 2000);
        if (!check.pass) raise("DisperserRejected", "sampled wiring failed the disperser check");
    }
    BipartiteGraph purged = purge_right_half(g);
    // Reverse adjacency: per right vertex, its incident lefts.
    std::vector<std::vector<std::uint32_t>> incoming(purged.n_right);
    for (std::uint32_t v = 0; v < purged.n_left; ++v)
        for (std::uint32_t r : purged.adj[v]) incoming[r].push_back(v);

    std::vector<Gate> layer;
    layer.reserve(n_out);
    for (std::uint32_t j = 0; j < n_out; ++j) {
        if (incoming[j].empty()) raise("DisperserRejected", "purged wiring left an output unwired");
        std::vector<Wire> wires;
        for (std::uint32_t v : incoming[j]) {
            Elem c = f.uniform(rs);
            if (c != 0) wires.push_back({input_ref(v), c});
        }
        auto gate = make_gate(f, std::move(wires));
        if (!gate) raise("DisperserRejected", "output gate drew all-zero coefficients");
        layer.push_back(std::move(*gate));
    }
    return LinearCircuit(f, n_left, {std::move(layer)});
}

}  // namespace

LinearCircuit repetition_pgc(const Field& field, std::uint32_t n, std::uint32_t expansion) {
    std::vector<Gate> layer;
    layer.reserve(static_cast<std::size_t>(n) * expansion);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t t = 0; t < expansion; ++t) {
            Gate g;
            g.wires.push_back({input_ref(i), 1});
            layer.push_back(std::move(g));
        }
    return LinearCircuit(field, n, {std::move(layer)});
}

BuildReport build_rate_amplifier(const LinearCircuit& base, std::uint64_t ell, std::uint64_t k,
                                 double rho, double c_target, double delta,
                                 const GadgetConfig& cfg, std::uint64_t seed) {
    const Field& f = base.field();
    const std::uint32_t big = base.n_outputs();
    {
        // Precondition: the base really maps [ell, k] to relative weight >= rho.
        auto rd = RangeDetectorSpec::make(base.n_inputs(), big, ell, k,
                                          static_cast<std::uint64_t>(std::ceil(rho * big - 1e-9)));
        RandomStream rs = stage_stream(seed, st_verify, 0);
        RdCheck pre = check_range_detector(base, rd, rs);
        if (!pre.pass) raise("PreconditionFailed", "base circuit does not reach relative weight rho");
    }
    const auto n_out = static_cast<std::uint32_t>(c_target * base.n_inputs());
    if (n_out < 1) raise("BadShape", "c_target produces no outputs");
    const auto target = static_cast<std::uint64_t>(std::ceil(delta * n_out - 1e-9));
    const auto rd = RangeDetectorSpec::make(base.n_inputs(), n_out, ell, k, target);

    for (std::uint32_t t = 1; t <= cfg.max_tries; ++t) {
        // Degree escalates as tries burn down.
        const std::uint32_t d = cfg.rate_d0 << std::min<std::uint32_t>(4 * (t - 1) / cfg.max_tries, 3);
        RandomStream rs = stage_stream(seed, st_wiring, t);
        try {
            LinearCircuit layer = sample_amplifier_layer(f, big, n_out, rho, d, cfg.rate_eps, rs);
            LinearCircuit composed = serial_compose(base, layer);
            RandomStream vs = stage_stream(seed, st_verify, t);
            RdCheck check = check_range_detector(composed, rd, vs, cfg.samples);
            if (check.pass)
                return finish_report(std::move(composed), rd, check, t, seed,
                                     "rate_amplifier d=" + std::to_string(d));
        } catch (const Error& e) {
            if (e.code() != "DisperserRejected" && e.code() != "Exhausted") throw;
        }
    }
    raise("Exhausted", "rate amplifier failed after " + std::to_string(cfg.max_tries) + " tries");
}

BuildReport compose_pgcs(const std::vector<std::pair<LinearCircuit, PgcSpec>>& parts,
                         const GadgetConfig& cfg, std::uint64_t seed) {
    if (parts.empty()) raise("RangesDontAbut", "no parts to compose");
    const Field& f = parts[0].first.field();
    const std::uint32_t n = parts[0].second.n;
    const std::uint32_t big = parts[0].first.n_outputs();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& [c, ps] = parts[i];
        if (c.field() != f) raise("FieldMismatch", "parts over different fields");
        if (ps.n != n || c.n_inputs() != n) raise("ArityMismatch", "parts disagree on n");
        if (c.n_outputs() != big) raise("ArityMismatch", "parts disagree on output length");
        if (i > 0 && parts[i - 1].second.s != ps.r)
            raise("RangesDontAbut", "part " + std::to_string(i) + " does not abut its predecessor");
    }
    const std::uint64_t r1 = parts.front().second.r;
    const std::uint64_t rt = parts.back().second.s;
    const std::uint64_t target = parts[0].second.out_weight_min;
    const auto rd = RangeDetectorSpec::make(n, big, r1, rt, target);

    // Stack the parts side by side over the shared input.
    const std::uint32_t max_depth = [&] {
        std::uint32_t d = 0;
        for (const auto& [c, ps] : parts) d = std::max(d, c.depth());
        return d;
    }();
    std::vector<std::vector<Gate>> layers(max_depth);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out_base(parts.size());  // (layer, offset)
    for (std::size_t p = 0; p < parts.size(); ++p) {
        const LinearCircuit& c = parts[p].first;
        std::vector<std::uint32_t> offset(c.depth());
        for (std::uint32_t l = 0; l < c.depth(); ++l) {
            offset[l] = static_cast<std::uint32_t>(layers[l].size());
            for (Gate g : c.layers()[l]) {
                for (Wire& w : g.wires)
                    if (w.src.kind == WireSource::Kind::gate)
                        w.src = gate_ref(w.src.layer, offset[w.src.layer] + w.src.index);
                layers[l].push_back(std::move(g));
            }
        }
        out_base[p] = {c.depth() - 1, offset[c.depth() - 1]};
    }

    const double rho = static_cast<double>((n + 3) / 4) / big;  // combined mid target n/4
    for (std::uint32_t t = 1; t <= cfg.max_tries; ++t) {
        RandomStream rs = stage_stream(seed, st_coeffs, t);
        try {
            // Combination layer: y_j = sum_i alpha_{j,i} C_i(x)_j.
            std::vector<std::vector<Gate>> work = layers;
            std::vector<Gate> combo;
            combo.reserve(big);
            for (std::uint32_t j = 0; j < big; ++j) {
                std::optional<Gate> gate;
                for (std::uint32_t redraw = 0; redraw < 64 && !gate; ++redraw) {
                    std::vector<Wire> wires;
                    for (std::size_t p = 0; p < parts.size(); ++p) {
                        Elem a = f.uniform(rs);
                        if (a != 0)
                            wires.push_back({gate_ref(out_base[p].first, out_base[p].second + j), a});
                    }
                    gate = make_gate(f, std::move(wires));
                }
                if (!gate) raise("DisperserRejected", "combination gate kept cancelling");
                combo.push_back(std::move(*gate));
            }
            work.push_back(std::move(combo));
            LinearCircuit combined(f, n, std::move(work));

            const std::uint32_t d = cfg.rate_d0 << std::min<std::uint32_t>(4 * (t - 1) / cfg.max_tries, 3);
            LinearCircuit amp = sample_amplifier_layer(f, big, big, rho, d, cfg.rate_eps, rs);
            LinearCircuit full = collapse_final_layer(serial_compose(combined, amp));

            RandomStream vs = stage_stream(seed, st_verify, t);
            RdCheck check = check_range_detector(full, rd, vs, cfg.samples);
            if (check.pass)
                return finish_report(std::move(full), rd, check, t, seed,
                                     "compose t=" + std::to_string(parts.size()));
        } catch (const Error& e) {
            if (e.code() != "DisperserRejected" && e.code() != "CollapseCancellation" &&
                e.code() != "InvalidCircuit")
                throw;
        }
    }
    raise("Exhausted", "compose_pgcs failed after " + std::to_string(cfg.max_tries) + " tries");
}

BuildReport build_output_amplifier(const Field& field, std::uint32_t n, std::uint32_t m,
                                   const GadgetConfig& cfg, std::uint64_t seed) {
    if (m < 3 * n) raise("BadShape", "output amplifier needs m >= 3n");
    const auto rd = RangeDetectorSpec::make(n, m, (n + 7) / 8, n, (m + 7) / 8);
    for (std::uint32_t t = 1; t <= cfg.max_tries; ++t) {
        RandomStream rs = stage_stream(seed, st_wiring, t);
        std::vector<Gate> layer;
        layer.reserve(m);
        for (std::uint32_t j = 0; j < m; ++j)
            layer.push_back(sample_gate_distinct(field, n, cfg.amp_fanin, rs, input_ref));
        LinearCircuit c(field, n, {std::move(layer)});
        RandomStream vs = stage_stream(seed, st_verify, t);
        RdCheck check = check_range_detector(c, rd, vs, cfg.samples);
        if (check.pass) return finish_report(std::move(c), rd, check, t, seed, "output_amplifier");
    }
    raise("Exhausted", "output amplifier failed after " + std::to_string(cfg.max_tries) + " tries");
}

BuildReport build_condenser(const Field& field, std::uint32_t n, double r, double s,
                            const GadgetConfig& cfg, std::uint64_t seed) {
    if (r < cfg.c0 || r > n) raise("BadShape", "condenser needs r in [c0, n]");
    const auto m_out = static_cast<std::uint32_t>(std::floor(n / r));
    const double t_real = n / std::pow(r, 1.5);
    if (s < 1 || s > t_real) raise("BadShape", "condenser needs 1 <= s <= n / r^1.5");
    if (m_out < 1) raise("BadShape", "condenser has no outputs");
    const auto ell = static_cast<std::uint64_t>(std::ceil(s - 1e-9));
    const auto k = static_cast<std::uint64_t>(std::floor(t_real + 1e-9));
    const auto rd = RangeDetectorSpec::make(n, m_out, ell, k, ell, m_out);

    for (std::uint32_t t = 1; t <= cfg.max_tries; ++t) {
        RandomStream rs = stage_stream(seed, st_wiring, t);
        // Each input feeds a constant number of outputs with nonzero weights.
        std::vector<std::vector<Wire>> gate_wires(m_out);
        const std::uint32_t fanout = std::min(cfg.condenser_fanin, m_out);
        bool covered = true;
        for (std::uint32_t i = 0; i < n; ++i) {
            std::vector<std::uint32_t> outs;
            for (std::uint32_t j = m_out - fanout; j < m_out; ++j) {
                auto v = static_cast<std::uint32_t>(rs.below(j + 1));
                if (std::find(outs.begin(), outs.end(), v) != outs.end()) outs.push_back(j);
                else outs.push_back(v);
            }
            for (std::uint32_t o : outs) gate_wires[o].push_back({input_ref(i), field.uniform_nonzero(rs)});
        }
        std::vector<Gate> layer;
        layer.reserve(m_out);
        for (std::uint32_t j = 0; j < m_out && covered; ++j) {
            auto g = make_gate(field, std::move(gate_wires[j]));
            if (!g) covered = false;
            else layer.push_back(std::move(*g));
        }
        if (!covered) continue;
        LinearCircuit c(field, n, {std::move(layer)});
        RandomStream vs = stage_stream(seed, st_verify, t);
        RdCheck check = check_range_detector(c, rd, vs, cfg.samples);
        if (check.pass) return finish_report(std::move(c), rd, check, t, seed, "condenser");
    }
    raise("Exhausted", "condenser failed after " + std::to_string(cfg.max_tries) + " tries");
}

BuildReport reduce_pgc(const Field& field, std::uint32_t n, double r, std::uint64_t s,
                       std::uint64_t t, const InnerPgcBuilder& inner, const GadgetConfig& cfg,
                       std::uint64_t seed) {
    if (r < cfg.c0 || r > n) raise("BadShape", "reduction needs r in [c0, n]");
    const double t_max = n / std::pow(r, 1.5);
    if (!(1 <= s && s <= t && static_cast<double>(t) <= t_max + 1e-9))
        raise("BadShape", "reduction needs 1 <= s <= t <= n / r^1.5");
    const auto m_inner = static_cast<std::uint32_t>(std::floor(n / r));
    const std::uint32_t big = cfg.expansion * n;
    if (big < 3u * cfg.expansion * m_inner) raise("BadShape", "reduction leaves no room to amplify");
    const auto rd = RangeDetectorSpec::make(n, big, s, t, (big + 7) / 8);

    auto run_stage = [](const char* stage, auto&& fn) -> BuildReport {
        try {
            return fn();
        } catch (const Error& e) {
            throw Error(e.code(), std::string(stage) + ": " + e.what(), e.witness());
        }
    };

    for (std::uint32_t attempt = 1; attempt <= 4; ++attempt) {
        const std::uint64_t sub = seed + 0x9e37 * (attempt - 1);
        BuildReport cond = run_stage("condenser", [&] {
            return build_condenser(field, n, r, static_cast<double>(s), cfg, mix64(sub + 1));
        });
        BuildReport in = run_stage("inner", [&] { return inner(m_inner, s, mix64(sub + 2)); });
        BuildReport amp = run_stage("amplifier", [&] {
            return build_output_amplifier(field, cfg.expansion * m_inner, big, cfg, mix64(sub + 3));
        });
        LinearCircuit chain =
            serial_compose(serial_compose(cond.circuit, in.circuit), amp.circuit);
        RandomStream vs = stage_stream(seed, st_verify, attempt);
        RdCheck check = check_range_detector(chain, rd, vs, cfg.samples);
        if (check.pass) {
            std::string notes = "reduce r=" + std::to_string(r) +
                                " stages=" + to_string(cond.verified) + "/" +
                                to_string(in.verified) + "/" + to_string(amp.verified);
            return finish_report(std::move(chain), rd, check, attempt, seed, std::move(notes));
        }
    }
    raise("Exhausted", "reduction chain failed end-to-end verification");
}

BuildReport build_depth2_pgc(const Field& field, std::uint32_t n, double r,
                             const GadgetConfig& cfg, std::uint64_t seed) {
    if (r < 2 || r > n) raise("BadShape", "depth-2 PGC needs 2 <= r <= n");
    const std::uint32_t big = cfg.expansion * n;
    const auto lo = static_cast<std::uint64_t>(std::ceil(n / r - 1e-9));
    const auto rd = RangeDetectorSpec::make(n, big, std::max<std::uint64_t>(lo, 1), n, (big + 7) / 8);
    const double logr = std::log2(std::max(2.0, r));

    // Halving schedule k_1 = r, k_{i+1} = k_i / 2: stage i guards the weight
    // band [n/k_i, n/k_{i+1}].
    std::vector<double> ks;
    for (double kk = r; kk > 1.0; kk /= 2) ks.push_back(kk);

    std::uint32_t mid_total = 0;
    std::uint32_t mid_min = 0;
    std::vector<std::uint32_t> stage_sizes, stage_fans;
    for (double kk : ks) {
        auto sz = static_cast<std::uint32_t>(std::ceil(cfg.c_mid * (n / kk) * logr));
        auto fan = static_cast<std::uint32_t>(std::ceil(cfg.c_fan * kk));
        stage_sizes.push_back(sz);
        stage_fans.push_back(std::max<std::uint32_t>(fan, 1));
        mid_total += sz;
        mid_min = mid_min == 0 ? sz : std::min(mid_min, sz);
    }
    const std::uint64_t mid_target = (mid_min + 7) / 8;

    for (std::uint32_t t = 1; t <= cfg.max_tries; ++t) {
        RandomStream rs = stage_stream(seed, st_wiring, t);
        std::vector<Gate> middle;
        middle.reserve(mid_total);
        for (std::size_t i = 0; i < ks.size(); ++i)
            for (std::uint32_t gidx = 0; gidx < stage_sizes[i]; ++gidx)
                middle.push_back(sample_gate_repetition(field, n, stage_fans[i], rs, input_ref));
        LinearCircuit mid_circuit(field, n, {std::move(middle)});

        RandomStream vs = stage_stream(seed, st_verify, t);
        const auto rd_mid = RangeDetectorSpec::make(n, mid_total, rd.ell, n, mid_target);
        RdCheck mid_check = check_range_detector(mid_circuit, rd_mid, vs, cfg.samples);
        if (!mid_check.pass) continue;

        const double rho = static_cast<double>(mid_target) / mid_total;
        const std::uint32_t d = cfg.rate_d0 << std::min<std::uint32_t>(4 * (t - 1) / cfg.max_tries, 3);
        try {
            LinearCircuit amp = sample_amplifier_layer(field, mid_total, big, rho, d, cfg.rate_eps, rs);
            LinearCircuit full = serial_compose(mid_circuit, amp);
            RdCheck check = check_range_detector(full, rd, vs, cfg.samples);
            if (check.pass) {
                std::string notes = "depth2 stages=" + std::to_string(ks.size()) +
                                    " mid=" + std::to_string(mid_total);
                return finish_report(std::move(full), rd, check, t, seed, std::move(notes));
            }
        } catch (const Error& e) {
            if (e.code() != "DisperserRejected") throw;
        }
    }
    raise("Exhausted", "depth-2 PGC failed after " + std::to_string(cfg.max_tries) + " tries");
}

std::vector<std::uint64_t> band_thresholds(std::uint32_t n, std::uint32_t depth_budget,
                                           const GadgetConfig& cfg) {
    // Weight thresholds T_0 = n > T_1 > ... > 1, with ratio schedule
    // rho_1 = sched_r1 and rho_{j+1} = A(K-1, rho_j) (lambda_4-style doubling
    // escape at the d = 4 base, where the paper's 2^sqrt schedule has fixed
    // points at desk scale).
    const std::uint32_t K = depth_budget / 2;
    std::vector<std::uint64_t> thresholds{n};
    BigInt rho = cfg.sched_r1;
    while (thresholds.back() > 1) {
        auto w = static_cast<std::uint64_t>((BigInt(n) + rho - 1) / rho);  // ceil(n / rho)
        if (w >= thresholds.back()) w = thresholds.back() - 1;
        thresholds.push_back(std::max<std::uint64_t>(w, 1));
        if (thresholds.back() == 1) break;
        if (K >= 3) {
            auto next = ackermann(K - 1, rho, BigInt(n));
            rho = next ? *next : BigInt(n) + 1;  // beyond n: final band reaches weight 1
        } else {
            const BigInt root = isqrt(rho);
            const std::uint32_t ceil_root =
                root.convert_to<std::uint32_t>() + (root * root < rho ? 1 : 0);
            rho = std::max<BigInt>(BigInt(1) << ceil_root, BigInt(rho * 2));
        }
        if (rho > n) rho = BigInt(n) + 1;
    }
    return thresholds;
}

namespace {

BuildReport direct_good_code(const Field& field, std::uint32_t n, const GadgetConfig& cfg,
                             std::uint64_t seed) {
    const std::uint32_t big = cfg.expansion * n;
    const auto rd = RangeDetectorSpec::make(n, big, 1, n, (big + 7) / 8);
    for (std::uint32_t t = 1; t <= cfg.max_tries; ++t) {
        RandomStream rs = stage_stream(seed, st_wiring, t);
        // Uniform random generator matrix as a depth-1 circuit.
        bool ok = true;
        std::vector<Gate> layer;
        layer.reserve(big);
        for (std::uint32_t j = 0; j < big && ok; ++j) {
            std::vector<Wire> wires;
            for (std::uint32_t i = 0; i < n; ++i) {
                Elem c = field.uniform(rs);
                if (c != 0) wires.push_back({input_ref(i), c});
            }
            auto g = make_gate(field, std::move(wires));
            if (!g) ok = false;
            else layer.push_back(std::move(*g));
        }
        if (!ok) continue;
        LinearCircuit c(field, n, {std::move(layer)});
        RandomStream vs = stage_stream(seed, st_verify, t);
        RdCheck check = check_range_detector(c, rd, vs, cfg.samples);
        if (check.pass) return finish_report(std::move(c), rd, check, t, seed, "direct");
    }
    raise("Exhausted", "direct good code failed after " + std::to_string(cfg.max_tries) + " tries");
}

// One band [lo, hi] at the given depth budget: a reduction chain when the
// band is narrow enough, otherwise a depth-2 PGC covering [lo, n].
BuildReport build_band(const Field& field, std::uint32_t n, std::uint64_t lo, std::uint64_t hi,
                       std::uint32_t budget, const GadgetConfig& cfg, std::uint64_t seed) {
    if (budget >= 3 && hi < n) {
        const double r = std::floor(std::pow(static_cast<double>(n) / hi, 2.0 / 3.0));
        const auto m_inner = r >= 1 ? static_cast<std::uint32_t>(std::floor(n / r)) : n;
        const bool inner_direct = m_inner <= cfg.n_small;
        const bool inner_fits = inner_direct || budget >= 4;
        if (r >= std::max<std::uint32_t>(3, cfg.c0) && m_inner >= 1 && 3 * m_inner <= n &&
            inner_fits && lo <= hi) {
            InnerPgcBuilder inner = [&](std::uint32_t ni, std::uint64_t s_in,
                                        std::uint64_t sd) -> BuildReport {
                if (ni <= cfg.n_small) return direct_good_code(field, ni, cfg, sd);
                const double rr = static_cast<double>(ni) / static_cast<double>(s_in);
                return build_depth2_pgc(field, ni, std::max(2.0, rr), cfg, sd);
            };
            return reduce_pgc(field, n, r, lo, hi, inner, cfg, seed);
        }
    }
    return build_depth2_pgc(field, n, std::max(2.0, static_cast<double>(n) / lo), cfg, seed);
}

}  // namespace

BuildReport build_good_code(const Field& field, std::uint32_t n, std::uint32_t depth_budget,
                            const GadgetConfig& cfg, std::uint64_t seed) {
    if (depth_budget < 2) raise("DepthBudgetTooSmall", "good code needs depth budget >= 2");
    if (depth_budget % 2 != 0) raise("BadDepth", "depth budget must be even");
    if (n < 1) raise("BadShape", "good code needs n >= 1");

    if (n <= cfg.n_small) return direct_good_code(field, n, cfg, seed);
    if (depth_budget == 2) {
        BuildReport rep = build_depth2_pgc(field, n, n, cfg, seed);
        rep.notes = "good_code " + rep.notes;
        return rep;
    }

    const std::vector<std::uint64_t> thresholds = band_thresholds(n, depth_budget, cfg);
    // Bands share endpoints: [T_{j+1}, T_j], composed in ascending order.
    std::vector<std::pair<LinearCircuit, PgcSpec>> parts;
    std::string notes = "good_code bands=";
    Verified weakest = Verified::exhaustive;
    for (std::size_t j = thresholds.size() - 1; j >= 1; --j) {
        const std::uint64_t lo = thresholds[j];
        const std::uint64_t hi = thresholds[j - 1];
        BuildReport band = (j == 1)
                               ? build_depth2_pgc(field, n,
                                                  std::max(2.0, static_cast<double>(n) / lo), cfg,
                                                  mix64(seed + 101 * j))
                               : build_band(field, n, lo, hi, depth_budget - 1, cfg,
                                            mix64(seed + 101 * j));
        if (band.verified == Verified::sampled) weakest = Verified::sampled;
        notes += "[" + std::to_string(lo) + "," + std::to_string(hi) + "]d" +
                 std::to_string(band.depth);
        parts.emplace_back(std::move(band.circuit),
                           PgcSpec::make(n, lo, hi, cfg.expansion));
    }
    if (parts.size() == 1) {
        // Single band already covers [1, n].
        RandomStream vs = stage_stream(seed, st_verify, 0);
        const auto rd = RangeDetectorSpec::make(n, cfg.expansion * n, 1, n,
                                                (static_cast<std::uint64_t>(cfg.expansion) * n + 7) / 8);
        RdCheck check = check_range_detector(parts[0].first, rd, vs, cfg.samples);
        if (!check.pass) raise("Exhausted", "single-band good code failed verification");
        return finish_report(std::move(parts[0].first), rd, check, 1, seed, std::move(notes));
    }
    BuildReport composed = compose_pgcs(parts, cfg, mix64(seed + 7));
    composed.notes = notes + " " + composed.notes;
    if (weakest == Verified::sampled && composed.verified == Verified::exhaustive)
        composed.verified = Verified::sampled;
    composed.seed = seed;
    return composed;
}

}  // namespace shallowcode
