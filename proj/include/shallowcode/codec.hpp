// End-to-end code assembly: mother code + random-coefficient disperser layer,
// typical-set decoding, and exact / Monte-Carlo failure probability.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shallowcode/channel.hpp"
#include "shallowcode/circuit.hpp"
#include "shallowcode/disperser.hpp"
#include "shallowcode/gadgets.hpp"
#include "shallowcode/typical.hpp"

namespace shallowcode {

struct CodecConfig {
    GadgetConfig gadgets;
    std::optional<std::uint32_t> mother_depth;  // default alpha(k)
    std::uint32_t disperser_d0 = 8;             // left degree, doubled on exhaustion
    std::uint32_t max_tries = 200;
};

struct CodeMeta {
    std::uint64_t seed = 0;
    std::string channel_digest;
    double rate_bits = 0;  // (k/n) log2 q
    double gamma = 0;
    double eps_default = 0;
    std::uint64_t wires = 0;
    std::uint32_t depth = 0;
    std::string mother_mode;      // "direct" or the band structure
    std::string mother_verified;  // exhaustive / sampled
    std::uint32_t disperser_degree = 0;
    std::string disperser_mode;  // exhaustive / sampled
    std::uint32_t tries = 0;
};

struct CodeInstance {
    Field field;
    std::uint32_t k = 0, n = 0;
    LinearCircuit encoder;
    Matrix gen;  // cached generator matrix, row i = encode(e_i)
    CodeMeta meta;

    std::vector<Elem> encode(std::span<const Elem> message) const {
        return apply_generator(field, gen, message);
    }
};

// eps default: max(1/n, p_min/2) with p_min the smallest positive entry of
// row 0.
double default_eps(const ChannelSpec& channel, std::uint32_t n);

// FNV-1a over the canonical matrix bytes; stable across runs.
std::string channel_digest(const ChannelSpec& channel);

CodeInstance build_capacity_code(const ChannelSpec& channel, double rate_target, std::uint32_t n,
                                 double gamma, std::uint64_t seed, const CodecConfig& cfg);

struct DecodeResult {
    std::optional<std::vector<Elem>> message;  // set iff candidates == 1
    std::uint64_t candidates = 0;
};

DecodeResult decode_typical(const CodeInstance& inst, const ChannelSpec& channel, double eps,
                            std::span<const Elem> y);

double failure_prob_exact(const CodeInstance& inst, const ChannelSpec& channel, double eps,
                          std::span<const Elem> message);

struct McMessageRow {
    std::vector<Elem> message;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double estimate = 0;
    double stderr_ = 0;
};

struct McResult {
    std::vector<McMessageRow> rows;  // row 0 is always the all-zero message
    double max_estimate = 0;
    double stderr_at_max = 0;
};

// Monte Carlo transmit -> decode per sampled message (the all-zero message is
// always included). Deterministic for a fixed seed regardless of `threads`.
McResult failure_prob_mc(const CodeInstance& inst, const ChannelSpec& channel, double eps,
                         std::uint32_t message_sample_size, std::uint64_t trials,
                         std::uint64_t seed, std::uint32_t threads = 1);

// Enumerates every coefficient assignment on E(H) and checks that the image
// restricted to N(supp(x)) is exactly uniform (all value counts equal).
bool restriction_uniformity_check(const Field& field, const BipartiteGraph& h,
                                  std::span<const Elem> x);

// r - (1 - gamma) log2 q + H2(row); the o(1) term (where eps enters) is
// dropped.
double predicted_exponent(const ChannelSpec& channel, double rate, double gamma, double eps = 0);

}  // namespace shallowcode
