#include "vqnoise/circuit_io.hpp"

#include <algorithm>

#include "vqnoise/errors.hpp"

namespace vqnoise {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& context) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw config_error(context + ": unknown key '" + it.key() + "'");
    }
}

json circuit_to_json(const Circuit& circuit) {
    json gates = json::array();
    for (const Gate& g : circuit.gates) {
        if (const auto* rot = std::get_if<RotationGate>(&g)) {
            gates.push_back({{"kind", "rotation"},
                             {"generator", rot->generator.letters()},
                             {"param_slot", rot->slot}});
        } else {
            const auto& fg = std::get<FixedGate>(g);
            if (fg.kind == FixedGate::Kind::CZ) {
                gates.push_back({{"kind", "cz"}, {"qubits", fg.qubits}});
            } else {
                json rows = json::array();
                for (std::size_t r = 0; r < fg.matrix.dim(); ++r) {
                    json row = json::array();
                    for (std::size_t c = 0; c < fg.matrix.dim(); ++c)
                        row.push_back({fg.matrix(r, c).real(), fg.matrix(r, c).imag()});
                    rows.push_back(std::move(row));
                }
                gates.push_back({{"kind", "unitary"},
                                 {"qubits", fg.qubits},
                                 {"name", fg.name},
                                 {"matrix", std::move(rows)}});
            }
        }
    }
    return json{{"qubits", circuit.num_qubits}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const json& doc) {
    reject_unknown_keys(doc, {"qubits", "gates"}, "circuit");
    Circuit c;
    c.num_qubits = doc.at("qubits").get<int>();
    int max_slot = -1;
    for (const json& g : doc.at("gates")) {
        const std::string kind = g.at("kind").get<std::string>();
        if (kind == "rotation") {
            reject_unknown_keys(g, {"kind", "generator", "param_slot"}, "rotation gate");
            const auto letters = g.at("generator").get<std::string>();
            if (static_cast<int>(letters.size()) != c.num_qubits)
                throw config_error("circuit: generator length != qubit count");
            RotationGate rot{PauliString::from_letters(letters), g.at("param_slot").get<int>()};
            max_slot = std::max(max_slot, rot.slot);
            c.gates.emplace_back(std::move(rot));
        } else if (kind == "cz") {
            reject_unknown_keys(g, {"kind", "qubits"}, "cz gate");
            const auto qubits = g.at("qubits").get<std::vector<int>>();
            if (qubits.size() != 2) throw config_error("circuit: cz needs exactly 2 qubits");
            c.gates.emplace_back(make_cz(qubits[0], qubits[1]));
        } else if (kind == "unitary") {
            reject_unknown_keys(g, {"kind", "qubits", "name", "matrix"}, "unitary gate");
            const auto qubits = g.at("qubits").get<std::vector<int>>();
            const json& rows = g.at("matrix");
            const std::size_t d = rows.size();
            Matrix m(d);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t col = 0; col < d; ++col) {
                    const json& e = rows.at(r).at(col);
                    m(r, col) = cplx{e.at(0).get<double>(), e.at(1).get<double>()};
                }
            c.gates.emplace_back(
                make_custom(qubits, std::move(m), g.value("name", std::string{"custom"})));
        } else {
            throw config_error("circuit: unknown gate kind '" + kind + "'");
        }
    }
    c.num_params = max_slot + 1;
    c.validate();
    return c;
}

json noise_spec_to_json(const NoiseSpec& spec) {
    json j{{"q1", spec.q1}, {"q2", spec.q2}, {"q_readout", spec.q_readout}};
    if (spec.parameter_sigma2 > 0.0) j["parameter_sigma2"] = spec.parameter_sigma2;
    return j;
}

NoiseSpec noise_spec_from_json(const json& doc) {
    NoiseSpec spec;
    if (doc.contains("q_scale")) {
        reject_unknown_keys(doc, {"q_scale", "c", "c_readout", "parameter_sigma2"}, "noise spec");
        const json& c = doc.at("c");
        reject_unknown_keys(c, {"1", "2"}, "noise spec c");
        std::optional<double> c_ro;
        if (doc.contains("c_readout")) c_ro = doc.at("c_readout").get<double>();
        spec = NoiseSpec::scaled(doc.at("q_scale").get<double>(), c.at("1").get<double>(),
                                 c.at("2").get<double>(), c_ro);
    } else {
        reject_unknown_keys(doc, {"q1", "q2", "q_readout", "parameter_sigma2"}, "noise spec");
        spec = NoiseSpec::direct(doc.value("q1", 0.0), doc.value("q2", 0.0),
                                 doc.value("q_readout", 0.0));
    }
    spec.parameter_sigma2 = doc.value("parameter_sigma2", 0.0);
    if (spec.parameter_sigma2 < 0.0) throw config_error("noise spec: negative parameter_sigma2");
    return spec;
}

} // namespace vqnoise
