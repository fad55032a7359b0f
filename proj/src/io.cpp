#include "shallowcode/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "shallowcode/errors.hpp"

namespace shallowcode {

using nlohmann::json;

json circuit_to_json(const LinearCircuit& c) {
    json jf;
    jf["p"] = c.field().characteristic();
    jf["m"] = c.field().degree();
    jf["modulus"] = c.field().modulus();
    json layers = json::array();
    for (const auto& layer : c.layers()) {
        json jl = json::array();
        for (const auto& gate : layer) {
            json wires = json::array();
            for (const Wire& w : gate.wires) {
                if (w.src.kind == WireSource::Kind::input)
                    wires.push_back({"in", w.src.index, 0, w.coeff});
                else
                    wires.push_back({"gate", w.src.layer, w.src.index, w.coeff});
            }
            jl.push_back({{"wires", std::move(wires)}});
        }
        layers.push_back(std::move(jl));
    }
    return {{"field", std::move(jf)}, {"n_inputs", c.n_inputs()}, {"layers", std::move(layers)}};
}

LinearCircuit circuit_from_json(const json& j) {
    const auto& jf = j.at("field");
    const auto p = jf.at("p").get<std::uint32_t>();
    const auto m = jf.at("m").get<std::uint32_t>();
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) q *= p;
    Field field = Field::make(q);
    const auto modulus = jf.at("modulus").get<std::vector<Elem>>();
    if (modulus != field.modulus())
        raise("InvalidCircuit", "file carries a non-canonical modulus for q=" + std::to_string(q));

    std::vector<std::vector<Gate>> layers;
    for (const auto& jl : j.at("layers")) {
        std::vector<Gate> layer;
        for (const auto& jg : jl) {
            std::vector<Wire> wires;
            for (const auto& jw : jg.at("wires")) {
                const auto kind = jw.at(0).get<std::string>();
                const auto a = jw.at(1).get<std::uint32_t>();
                const auto b = jw.at(2).get<std::uint32_t>();
                const auto coeff = jw.at(3).get<Elem>();
                if (kind == "in") wires.push_back({input_ref(a), coeff});
                else if (kind == "gate") wires.push_back({gate_ref(a, b), coeff});
                else raise("InvalidCircuit", "unknown wire source kind: " + kind);
            }
            Gate g;
            g.wires = std::move(wires);
            layer.push_back(std::move(g));
        }
        layers.push_back(std::move(layer));
    }
    return LinearCircuit(field, j.at("n_inputs").get<std::uint32_t>(), std::move(layers));
}

json channel_to_json(const ChannelSpec& spec) {
    const std::uint32_t q = spec.q();
    json matrix = json::array();
    for (std::uint32_t x = 0; x < q; ++x) {
        json row = json::array();
        for (std::uint32_t y = 0; y < q; ++y) row.push_back(spec.p(x, y));
        matrix.push_back(std::move(row));
    }
    json out{{"q", q}, {"matrix", std::move(matrix)}};
    if (spec.exact()) {
        json ex = json::array();
        for (std::uint32_t x = 0; x < q; ++x) {
            json row = json::array();
            for (std::uint32_t y = 0; y < q; ++y) {
                const auto& [num, den] = (*spec.exact())[x * q + y];
                row.push_back({num, den});
            }
            ex.push_back(std::move(row));
        }
        out["exact"] = std::move(ex);
    }
    return out;
}

ChannelSpec channel_from_json(const json& j) {
    const auto q = j.at("q").get<std::uint32_t>();
    std::vector<double> matrix;
    matrix.reserve(static_cast<std::size_t>(q) * q);
    for (const auto& row : j.at("matrix"))
        for (const auto& v : row) matrix.push_back(v.get<double>());
    std::optional<std::vector<Rational>> exact;
    if (j.contains("exact")) {
        exact.emplace();
        for (const auto& row : j.at("exact")) {
            for (const auto& v : row) {
                const auto num = v.at(0).get<std::int64_t>();
                const auto den = v.at(1).get<std::int64_t>();
                if (den <= 0) raise("NotStochastic", "exact entries need positive denominators");
                exact->push_back({num, den});
            }
        }
        // Exact entries override the doubles they describe.
        if (exact->size() != matrix.size()) raise("NotStochastic", "exact matrix must be q x q");
        for (std::size_t i = 0; i < matrix.size(); ++i)
            matrix[i] = static_cast<double>((*exact)[i].first) / static_cast<double>((*exact)[i].second);
    }
    return ChannelSpec::validate_symmetric(q, matrix, std::move(exact));
}

json graph_to_json(const BipartiteGraph& g) {
    return {{"n_left", g.n_left}, {"n_right", g.n_right}, {"adj", g.adj}};
}

BipartiteGraph graph_from_json(const json& j) {
    BipartiteGraph g;
    g.n_left = j.at("n_left").get<std::uint32_t>();
    g.n_right = j.at("n_right").get<std::uint32_t>();
    g.adj = j.at("adj").get<std::vector<std::vector<std::uint32_t>>>();
    validate_graph(g);
    return g;
}

json code_to_json(const CodeInstance& inst) {
    json j = circuit_to_json(inst.encoder);
    j["meta"] = {{"seed", inst.meta.seed},
                 {"channel_digest", inst.meta.channel_digest},
                 {"k", inst.k},
                 {"n", inst.n},
                 {"rate_bits", inst.meta.rate_bits},
                 {"gamma", inst.meta.gamma},
                 {"eps_default", inst.meta.eps_default},
                 {"wires", inst.meta.wires},
                 {"depth", inst.meta.depth},
                 {"mother_mode", inst.meta.mother_mode},
                 {"mother_verified", inst.meta.mother_verified},
                 {"disperser_degree", inst.meta.disperser_degree},
                 {"disperser_mode", inst.meta.disperser_mode},
                 {"tries", inst.meta.tries}};
    return j;
}

CodeInstance code_from_json(const json& j) {
    LinearCircuit encoder = circuit_from_json(j);
    const auto& m = j.at("meta");
    CodeInstance inst{encoder.field(),
                      m.at("k").get<std::uint32_t>(),
                      m.at("n").get<std::uint32_t>(),
                      encoder,
                      to_generator_matrix(encoder),
                      {}};
    if (inst.encoder.n_inputs() != inst.k || inst.encoder.n_outputs() != inst.n)
        raise("InvalidCircuit", "meta k/n disagree with the encoder circuit");
    inst.meta.seed = m.at("seed").get<std::uint64_t>();
    inst.meta.channel_digest = m.at("channel_digest").get<std::string>();
    inst.meta.rate_bits = m.at("rate_bits").get<double>();
    inst.meta.gamma = m.at("gamma").get<double>();
    inst.meta.eps_default = m.at("eps_default").get<double>();
    inst.meta.wires = m.at("wires").get<std::uint64_t>();
    inst.meta.depth = m.at("depth").get<std::uint32_t>();
    inst.meta.mother_mode = m.at("mother_mode").get<std::string>();
    inst.meta.mother_verified = m.at("mother_verified").get<std::string>();
    inst.meta.disperser_degree = m.at("disperser_degree").get<std::uint32_t>();
    inst.meta.disperser_mode = m.at("disperser_mode").get<std::string>();
    inst.meta.tries = m.at("tries").get<std::uint32_t>();
    return inst;
}

json report_to_json(const BuildReport& report) {
    return {{"spec",
             {{"m_in", report.rd.m_in},
              {"n_out", report.rd.n_out},
              {"ell", report.rd.ell},
              {"k", report.rd.k},
              {"r", report.rd.r},
              {"s", report.rd.s}}},
            {"verified", to_string(report.verified)},
            {"tries", report.tries},
            {"wires", report.wires},
            {"depth", report.depth},
            {"seed", report.seed},
            {"notes", report.notes}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise("FileNotFound", "cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise("FileError", "cannot write " + path);
    out << j.dump(2) << "\n";
}

const char* kCsvHeader =
    "seed,n,k,q,rate,eps,gamma,trials,failures,estimate,stderr,wires,depth,verified";

std::string csv_row(std::uint64_t seed, const CodeInstance& inst, double eps, double gamma,
                    std::uint64_t trials, std::uint64_t failures, double estimate, double stderr_,
                    const std::string& verified) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%llu,%u,%u,%u,%.12g,%.12g,%.12g,%llu,%llu,%.12g,%.12g,%llu,%u,%s",
                  static_cast<unsigned long long>(seed), inst.n, inst.k, inst.field.q(),
                  inst.meta.rate_bits, eps, gamma, static_cast<unsigned long long>(trials),
                  static_cast<unsigned long long>(failures), estimate, stderr_,
                  static_cast<unsigned long long>(inst.meta.wires), inst.meta.depth,
                  verified.c_str());
    return buf;
}

}  // namespace shallowcode
