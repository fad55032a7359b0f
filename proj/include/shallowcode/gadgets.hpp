// The combinator zoo behind the mother code: range detectors, partial good
// codes, rate/output amplifiers, condensers, composition, reduction, and the
// recursive good-code builder. Every probabilistic-method existence argument
// becomes a Las Vegas construction: sample randomness, verify the target
// property by brute force, resample on failure, and report honestly.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shallowcode/bigint.hpp"
#include "shallowcode/circuit.hpp"
#include "shallowcode/disperser.hpp"
#include "shallowcode/rng.hpp"

namespace shallowcode {

struct RangeDetectorSpec {
    std::uint32_t m_in = 0, n_out = 0;
    std::uint64_t ell = 0, k = 0;  // input weight range
    std::uint64_t r = 0, s = 0;    // output weight range; s defaults to n_out

    static RangeDetectorSpec make(std::uint32_t m_in, std::uint32_t n_out, std::uint64_t ell,
                                  std::uint64_t k, std::uint64_t r,
                                  std::optional<std::uint64_t> s = std::nullopt);
};

// A (n, r, s)-partial good code is the (n, R n, r, s, target, R n) range
// detector with R the expansion (default 32) and target = R n / 8 (i.e. 4n).
struct PgcSpec {
    std::uint32_t n = 0;
    std::uint64_t r = 1, s = 0;          // input weight range; s defaults to n
    std::uint32_t expansion = 32;        // R
    std::uint64_t out_weight_min = 0;    // defaults to 4n

    static PgcSpec make(std::uint32_t n, std::uint64_t r, std::uint64_t s,
                        std::uint32_t expansion = 32, std::uint64_t out_weight_min = 0);
    RangeDetectorSpec as_range_detector() const;
};

enum class Verified : std::uint8_t { exhaustive, sampled, failed };
std::string to_string(Verified v);

struct RdCheck {
    bool pass = false;
    Verified level = Verified::failed;  // exhaustive/sampled on completion
    std::optional<std::vector<Elem>> witness;
    std::uint64_t inputs_checked = 0;
    std::string engine;  // "enumeration", "mitm", "sampled"
};

// Exact verification only (enumeration under the input cap, or the q=2
// meet-in-the-middle engine when the circuit has few outputs and a small
// lower bound); throws TooLarge when no exact engine fits.
RdCheck verify_range_detector(const LinearCircuit& c, const RangeDetectorSpec& spec);

// Exact when affordable, sampled fallback otherwise (used by the builders).
RdCheck check_range_detector(const LinearCircuit& c, const RangeDetectorSpec& spec,
                             RandomStream& rs, std::uint64_t samples = 0);

struct GadgetConfig {
    std::uint32_t expansion = 32;        // PGC output expansion R
    std::uint32_t amp_fanin = 12;        // output amplifier gate fan-in
    std::uint32_t condenser_fanin = 6;   // condenser edges per input
    std::uint32_t c0 = 16;               // condenser lower bound on r (paper's c0(q))
    std::uint32_t n_small = 10;          // direct-mode threshold for good codes
    std::uint32_t max_tries = 200;       // Las Vegas retry budget
    std::uint32_t c_mid = 8;             // depth-2 middle layer size multiplier
    std::uint32_t c_fan = 2;             // depth-2 middle layer fan-in multiplier
    std::uint32_t sched_r1 = 8;          // first threshold ratio of the band schedule
    double rate_eps = 0.25;              // disperser eps for rate amplification
    std::uint32_t rate_d0 = 8;           // initial left degree, doubled on exhaustion
    std::uint64_t samples = 10000;       // sampled-verification probes
};

struct BuildReport {
    LinearCircuit circuit;
    RangeDetectorSpec rd;  // the claim that was verified
    Verified verified = Verified::failed;
    std::uint32_t tries = 0;
    std::uint64_t wires = 0;
    std::uint32_t depth = 0;
    std::uint64_t seed = 0;
    std::string notes;  // stage structure, one line
};

// The canonical depth-1 PGC: every input repeated `expansion` times.
LinearCircuit repetition_pgc(const Field& field, std::uint32_t n, std::uint32_t expansion = 32);

// Appends one layer of disperser-shaped wiring with uniform coefficients to
// lift relative output weight from rho to delta on the given input range
// (Lemma "rate amplifier"). c_target scales the output count: n_out =
// floor(c_target * n_inputs(base)).
BuildReport build_rate_amplifier(const LinearCircuit& base, std::uint64_t ell, std::uint64_t k,
                                 double rho, double c_target, double delta,
                                 const GadgetConfig& cfg, std::uint64_t seed);

// Combines PGCs with abutting ranges r_1 < ... < r_{t+1} into one PGC on
// [r_1, r_{t+1}]; depth = max part depth + 1.
BuildReport compose_pgcs(const std::vector<std::pair<LinearCircuit, PgcSpec>>& parts,
                         const GadgetConfig& cfg, std::uint64_t seed);

// (n, m, n/8, n, m/8) range detector, m >= 3n, depth 1, bounded gate fan-in.
BuildReport build_output_amplifier(const Field& field, std::uint32_t n, std::uint32_t m,
                                   const GadgetConfig& cfg, std::uint64_t seed);

// (n, floor(n/r), s, n/r^1.5, s, floor(n/r)) range detector, depth 1.
BuildReport build_condenser(const Field& field, std::uint32_t n, double r, double s,
                            const GadgetConfig& cfg, std::uint64_t seed);

// Condenser -> inner PGC on floor(n/r) inputs -> output amplifier back to
// expansion * n outputs; depth = inner depth + 2.
using InnerPgcBuilder = std::function<BuildReport(std::uint32_t n_inner, std::uint64_t s,
                                                  std::uint64_t seed)>;
BuildReport reduce_pgc(const Field& field, std::uint32_t n, double r, std::uint64_t s,
                       std::uint64_t t, const InnerPgcBuilder& inner, const GadgetConfig& cfg,
                       std::uint64_t seed);

// Depth-2 PGC covering weights [ceil(n/r), n]: one middle layer holding the
// halving-schedule stages side by side, one rate-amplifier layer below.
BuildReport build_depth2_pgc(const Field& field, std::uint32_t n, double r,
                             const GadgetConfig& cfg, std::uint64_t seed);

// Good code F_q^n -> F_q^{expansion n} with weight >= 4n on every nonzero
// input: direct Las Vegas sampling for n <= n_small, recursive band assembly
// (Ackermann thresholds, reduce/depth-2 bands, composition) above.
BuildReport build_good_code(const Field& field, std::uint32_t n, std::uint32_t depth_budget,
                            const GadgetConfig& cfg, std::uint64_t seed);

// Weight thresholds of the band schedule for a given depth budget (top down,
// strictly decreasing, ending at 1). Exposed for tests.
std::vector<std::uint64_t> band_thresholds(std::uint32_t n, std::uint32_t depth_budget,
                                           const GadgetConfig& cfg);

// Exact Hamming-ball volume and the q^{H_q(gamma) n} bound.
BigInt ball_volume(std::uint32_t n, std::uint32_t radius, std::uint32_t q);
double entropy_volume_bound(std::uint32_t n, double gamma, std::uint32_t q);

}  // namespace shallowcode
