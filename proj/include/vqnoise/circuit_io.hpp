#ifndef VQNOISE_CIRCUIT_IO_HPP
#define VQNOISE_CIRCUIT_IO_HPP

#include <string>

#include <json.hpp>

#include "vqnoise/channels.hpp"
#include "vqnoise/circuit.hpp"

namespace vqnoise {

// Circuit document:
// {
//   "qubits": 4,
//   "gates": [
//     {"kind": "rotation", "generator": "XIIZ", "param_slot": 0},
//     {"kind": "cz", "qubits": [0, 1]},
//     {"kind": "unitary", "qubits": [2], "name": "h",
//      "matrix": [[[re, im], ...], ...]}
//   ]
// }
nlohmann::json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& doc);

// {"q1": .., "q2": .., "q_readout": ..} or
// {"q_scale": .., "c": {"1": .., "2": ..}, "c_readout": ..(optional)}
// plus optional "parameter_sigma2". Unknown keys are rejected.
nlohmann::json noise_spec_to_json(const NoiseSpec& spec);
NoiseSpec noise_spec_from_json(const nlohmann::json& doc);

void reject_unknown_keys(const nlohmann::json& obj, const std::vector<std::string>& allowed,
                         const std::string& context);

} // namespace vqnoise

#endif
