#include "shallowcode/limits.hpp"

#include <cstdlib>
#include <string>

#include "shallowcode/errors.hpp"

namespace shallowcode {

Limits Limits::parse(const char* spec) {
    Limits lim;
    if (spec == nullptr) return lim;
    std::string s(spec);
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string item = s.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty()) continue;
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) raise("BadLimits", "expected key=value in SHALLOWCODE_LIMITS: " + item);
        std::string key = item.substr(0, eq);
        std::uint64_t value = std::stoull(item.substr(eq + 1));
        if (key == "enum_inputs") lim.enum_inputs = value;
        else if (key == "mitm_half") lim.mitm_half = value;
        else if (key == "comb_subsets") lim.comb_subsets = value;
        else if (key == "typical_enum") lim.typical_enum = value;
        else if (key == "mass_exact_states") lim.mass_exact_states = value;
        else if (key == "decode_messages") lim.decode_messages = value;
        else if (key == "failure_exact_outputs") lim.failure_exact_outputs = value;
        else if (key == "gen_matrix_inputs") lim.gen_matrix_inputs = value;
        else if (key == "uniformity_states") lim.uniformity_states = value;
        else if (key == "samples") lim.samples = value;
        else raise("BadLimits", "unknown SHALLOWCODE_LIMITS key: " + key);
    }
    return lim;
}

const Limits& Limits::get() {
    static const Limits lim = parse(std::getenv("SHALLOWCODE_LIMITS"));
    return lim;
}

}  // namespace shallowcode
