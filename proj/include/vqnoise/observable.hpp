#ifndef VQNOISE_OBSERVABLE_HPP
#define VQNOISE_OBSERVABLE_HPP

#include <variant>
#include <vector>

#include "vqnoise/circuit.hpp"
#include "vqnoise/state.hpp"

namespace vqnoise {

struct DenseObservable {
    Matrix h; // Hermitian to 1e-12, checked at construction via make_dense_observable
};

// H = V diag(E) V^dagger with V a circuit at fixed parameters. Avoids ever
// materializing the 2^n x 2^n matrix; <psi|H|psi> needs one inverse-circuit run.
struct SpectralObservable {
    std::vector<double> eigenvalues; // ascending, eigenvalue i belongs to V|i>
    Circuit diagonalizer;
    std::vector<double> diagonalizer_params;
};

using Observable = std::variant<DenseObservable, SpectralObservable>;

DenseObservable make_dense_observable(Matrix h);
SpectralObservable make_spectral_observable(std::vector<double> eigenvalues, Circuit diagonalizer,
                                            std::vector<double> params);

int observable_qubits(const Observable& obs);

double expectation(const StateVector& psi, const Observable& obs);
double expectation(const DensityMatrix& rho, const Observable& obs);

} // namespace vqnoise

#endif
