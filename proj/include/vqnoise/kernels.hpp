#ifndef VQNOISE_KERNELS_HPP
#define VQNOISE_KERNELS_HPP

#include <span>

#include "vqnoise/circuit.hpp"
#include "vqnoise/state.hpp"

namespace vqnoise {

// Amplitude-level kernels. Each operates on a contiguous 2^n amplitude block
// and is OpenMP-parallel above a size threshold (tiny states run serial; the
// threshold avoids paying fork/join cost on the 16-amplitude problems the
// bound checks live on). The serial reference in ref.hpp builds full gate
// matrices instead and exists as an independent oracle.
namespace kern {

// Work size below which loops stay serial; under it the fork/join cost
// exceeds the loop body.
inline constexpr std::size_t kParallelCutoff = std::size_t{1} << 13;

// psi <- cos(t/2) psi - i sin(t/2) A psi
void rotation(std::span<cplx> amps, int num_qubits, const PauliString& generator, double angle);

// psi <- A psi (trajectory firing; Pauli string as a gate)
void pauli(std::span<cplx> amps, int num_qubits, const PauliString& op);

void cz(std::span<cplx> amps, int num_qubits, int qubit_a, int qubit_b);

// Dense k-qubit unitary on the listed qubits (qubits[0] = most significant
// gate-local index).
void unitary(std::span<cplx> amps, int num_qubits, const std::vector<int>& qubits,
             const Matrix& u);

} // namespace kern

void apply_rotation(StateVector& psi, const PauliString& generator, double angle);
void apply_pauli(StateVector& psi, const PauliString& op);
void apply_gate(StateVector& psi, const Gate& gate, std::span<const double> params);
void apply_gate_inverse(StateVector& psi, const Gate& gate, std::span<const double> params);

StateVector run_circuit(const Circuit& circuit, std::span<const double> params,
                        const StateVector& input);
// V^dagger |psi> for a circuit V; used by spectral observables.
StateVector run_circuit_inverse(const Circuit& circuit, std::span<const double> params,
                                const StateVector& input);

// rho <- U rho U^dagger
void density_apply_gate(DensityMatrix& rho, const Gate& gate, std::span<const double> params);
void density_apply_gate_inverse(DensityMatrix& rho, const Gate& gate,
                                std::span<const double> params);
void density_apply_rotation(DensityMatrix& rho, const PauliString& generator, double angle);

// rho <- (1-p) rho + p A rho A
void density_apply_stochastic_pauli(DensityMatrix& rho, const PauliString& generator, double p);

// rho <- (1-q) rho + q/(4^k-1) sum_P P rho P over non-identity P on targets.
// Direct Kraus-sum route, kept separate from the Gaussian decomposition so the
// two can be compared.
void density_apply_depolarizing(DensityMatrix& rho, const std::vector<int>& targets, double q);

} // namespace vqnoise

#endif
