// JSON file formats: circuits, channels, graphs, code instances (circuit +
// meta), build reports, and the experiment CSV schema.
#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "shallowcode/channel.hpp"
#include "shallowcode/circuit.hpp"
#include "shallowcode/codec.hpp"
#include "shallowcode/disperser.hpp"
#include "shallowcode/gadgets.hpp"

namespace shallowcode {

nlohmann::json circuit_to_json(const LinearCircuit& c);
LinearCircuit circuit_from_json(const nlohmann::json& j);

nlohmann::json channel_to_json(const ChannelSpec& spec);
ChannelSpec channel_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const BipartiteGraph& g);
BipartiteGraph graph_from_json(const nlohmann::json& j);

nlohmann::json code_to_json(const CodeInstance& inst);
CodeInstance code_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const BuildReport& report);

nlohmann::json load_json_file(const std::string& path);
// Stable formatting (sorted keys, 2-space indent, trailing newline), so a
// fixed seed reproduces files byte for byte.
void save_json_file(const std::string& path, const nlohmann::json& j);

// seed,n,k,q,rate,eps,gamma,trials,failures,estimate,stderr,wires,depth,verified
extern const char* kCsvHeader;
std::string csv_row(std::uint64_t seed, const CodeInstance& inst, double eps, double gamma,
                    std::uint64_t trials, std::uint64_t failures, double estimate, double stderr_,
                    const std::string& verified);

}  // namespace shallowcode
