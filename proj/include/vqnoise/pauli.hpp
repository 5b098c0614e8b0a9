#ifndef VQNOISE_PAULI_HPP
#define VQNOISE_PAULI_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vqnoise/types.hpp"

namespace vqnoise {

// n-qubit Pauli string in symplectic (x, z) form. Qubit 0 is the leftmost
// tensor factor and maps to the most significant bit of a basis index, so
// |i> = |i_1>|i_2>...|i_n| with i = i_1 i_2 ... i_n in binary.
//
// Acting on a computational basis state,
//   A|i> = phase(i) |i XOR flip_mask()>,
// which is all the simulation kernels need: X and Y flip the bit, Y and Z
// contribute signs, and each Y contributes one factor of i.
class PauliString {
  public:
    PauliString() = default;
    PauliString(int num_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

    static PauliString identity(int num_qubits);
    static PauliString single(int num_qubits, int qubit, char letter);
    // One letter per qubit, e.g. "XIZY"; letters[q] acts on qubit q.
    static PauliString from_letters(std::string_view letters);

    int num_qubits() const { return num_qubits_; }
    char letter(int qubit) const;
    std::string letters() const;

    int weight() const;
    bool is_identity() const { return (x_mask_ | z_mask_) == 0; }
    bool commutes_with(const PauliString& other) const;

    // Index-space bit mask flipped by this string (X and Y components).
    std::uint64_t flip_mask() const { return x_mask_; }
    // Coefficient of |i XOR flip_mask()> in A|i>.
    cplx phase(std::uint64_t basis_index) const;

    bool operator==(const PauliString& other) const = default;

  private:
    int num_qubits_ = 0;
    std::uint64_t x_mask_ = 0; // index-space bits carrying X or Y
    std::uint64_t z_mask_ = 0; // index-space bits carrying Z or Y
};

// All 4^k Pauli strings on k qubits in lexicographic letter order
// (I < X < Y < Z per qubit, qubit 0 most significant). Index 0 is identity.
std::vector<PauliString> pauli_basis(int num_qubits);

// Non-identity strings on `targets` inside an n-qubit register, enumerated in
// the same per-qubit letter order. Used by the depolarizing decomposition.
std::vector<PauliString> nonidentity_paulis_on(int num_qubits, const std::vector<int>& targets);

} // namespace vqnoise

#endif
