#ifndef VQNOISE_REF_HPP
#define VQNOISE_REF_HPP

#include <span>

#include "vqnoise/circuit.hpp"
#include "vqnoise/state.hpp"

namespace vqnoise::ref {

// Serial reference implementation. Everything here goes through explicit
// 2^n x 2^n matrices and plain loops; no OpenMP, no amplitude tricks. It is
// the oracle the fast kernels are tested against and the baseline in the
// benchmark. Usable up to n ~ 10.

Matrix pauli_matrix(const PauliString& p);
Matrix gate_matrix(const Gate& gate, int num_qubits, std::span<const double> params);
Matrix circuit_matrix(const Circuit& circuit, std::span<const double> params);

// Embed a k-qubit unitary acting on `qubits` into the full register.
Matrix embed(int num_qubits, const std::vector<int>& qubits, const Matrix& u);

StateVector run_circuit(const Circuit& circuit, std::span<const double> params,
                        const StateVector& input);

DensityMatrix conjugate(const Matrix& u, const DensityMatrix& rho); // U rho U^dagger
DensityMatrix stochastic_pauli(const PauliString& generator, double p, const DensityMatrix& rho);
DensityMatrix depolarizing(const std::vector<int>& targets, double q, int num_qubits,
                           const DensityMatrix& rho);

} // namespace vqnoise::ref

#endif
