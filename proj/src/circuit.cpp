#include "vqnoise/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace vqnoise {

FixedGate make_cz(int qubit_a, int qubit_b) {
    if (qubit_a == qubit_b) throw std::invalid_argument("CZ: qubits must differ");
    FixedGate g;
    g.kind = FixedGate::Kind::CZ;
    g.qubits = {qubit_a, qubit_b};
    return g;
}

FixedGate make_custom(std::vector<int> qubits, Matrix unitary, std::string name) {
    FixedGate g;
    g.kind = FixedGate::Kind::Custom;
    g.qubits = std::move(qubits);
    if (unitary.dim() != (std::size_t{1} << g.qubits.size()))
        throw std::invalid_argument("custom gate: matrix dim != 2^k");
    if (!unitary.is_unitary(1e-12))
        throw std::invalid_argument("custom gate: matrix not unitary to 1e-12");
    g.matrix = std::move(unitary);
    g.name = std::move(name);
    return g;
}

int Circuit::add_rotation(const PauliString& generator) {
    if (generator.num_qubits() != num_qubits)
        throw std::invalid_argument("add_rotation: generator qubit count mismatch");
    if (generator.is_identity())
        throw std::invalid_argument("add_rotation: generator must have weight >= 1");
    const int slot = num_params++;
    gates.push_back(RotationGate{generator, slot});
    return slot;
}

void Circuit::add_fixed(FixedGate gate) {
    for (int q : gate.qubits)
        if (q < 0 || q >= num_qubits) throw std::invalid_argument("add_fixed: qubit out of range");
    gates.push_back(std::move(gate));
}

void Circuit::validate() const {
    std::vector<int> slot_use(static_cast<std::size_t>(num_params), 0);
    for (const Gate& g : gates) {
        if (const auto* rot = std::get_if<RotationGate>(&g)) {
            if (rot->generator.num_qubits() != num_qubits)
                throw std::invalid_argument("circuit: generator qubit count mismatch");
            if (rot->generator.is_identity())
                throw std::invalid_argument("circuit: rotation generator is identity");
            if (rot->slot < 0 || rot->slot >= num_params)
                throw std::invalid_argument("circuit: parameter slot out of range");
            slot_use[static_cast<std::size_t>(rot->slot)]++;
        } else {
            const auto& fg = std::get<FixedGate>(g);
            for (int q : fg.qubits)
                if (q < 0 || q >= num_qubits)
                    throw std::invalid_argument("circuit: fixed-gate qubit out of range");
            if (fg.kind == FixedGate::Kind::Custom) {
                if (fg.matrix.dim() != (std::size_t{1} << fg.qubits.size()))
                    throw std::invalid_argument("circuit: custom matrix dim mismatch");
                if (!fg.matrix.is_unitary(1e-12))
                    throw std::invalid_argument("circuit: custom matrix not unitary");
            }
        }
    }
    for (int uses : slot_use)
        if (uses != 1)
            throw std::invalid_argument("circuit: each slot must be referenced exactly once");
}

std::vector<int> Circuit::gate_support(const Gate& gate, int num_qubits) {
    std::vector<int> support;
    if (const auto* rot = std::get_if<RotationGate>(&gate)) {
        for (int q = 0; q < num_qubits; ++q)
            if (rot->generator.letter(q) != 'I') support.push_back(q);
    } else {
        support = std::get<FixedGate>(gate).qubits;
        std::sort(support.begin(), support.end());
    }
    return support;
}

} // namespace vqnoise
