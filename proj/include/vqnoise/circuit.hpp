#ifndef VQNOISE_CIRCUIT_HPP
#define VQNOISE_CIRCUIT_HPP

#include <string>
#include <variant>
#include <vector>

#include "vqnoise/matrix.hpp"
#include "vqnoise/pauli.hpp"

namespace vqnoise {

// Parametric Pauli rotation U(theta) = exp(-i theta A / 2) with A^2 = I.
struct RotationGate {
    PauliString generator;
    int slot = -1; // index into the real parameter vector
};

struct FixedGate {
    enum class Kind { CZ, Custom };
    Kind kind = Kind::CZ;
    std::vector<int> qubits;
    Matrix matrix;    // Custom only; dim 2^qubits.size(), unitary to 1e-12
    std::string name; // Custom only, for serialization
};

using Gate = std::variant<RotationGate, FixedGate>;

FixedGate make_cz(int qubit_a, int qubit_b);
FixedGate make_custom(std::vector<int> qubits, Matrix unitary, std::string name = "custom");

// Ordered gate list; gates[0] acts on the input state first.
struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;
    int num_params = 0;

    // Appends and assigns the next free parameter slot; returns the slot.
    int add_rotation(const PauliString& generator);
    void add_fixed(FixedGate gate);

    // Every slot < num_params referenced by exactly one gate, qubit indices in
    // range, fixed matrices unitary. Throws std::invalid_argument otherwise.
    void validate() const;

    // Sorted qubit support of a gate; size is the k in "k-qubit gate".
    static std::vector<int> gate_support(const Gate& gate, int num_qubits);
};

} // namespace vqnoise

#endif
