#include "vqnoise/observable.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "vqnoise/kernels.hpp"

namespace vqnoise {

DenseObservable make_dense_observable(Matrix h) {
    if (!std::has_single_bit(h.dim()))
        throw std::invalid_argument("dense observable: dim must be a power of two");
    if (!h.is_hermitian(1e-12))
        throw std::invalid_argument("dense observable: matrix not Hermitian to 1e-12");
    return DenseObservable{std::move(h)};
}

SpectralObservable make_spectral_observable(std::vector<double> eigenvalues, Circuit diagonalizer,
                                            std::vector<double> params) {
    if (eigenvalues.size() != dim_of(diagonalizer.num_qubits))
        throw std::invalid_argument("spectral observable: eigenvalue count != 2^n");
    if (!std::is_sorted(eigenvalues.begin(), eigenvalues.end()))
        throw std::invalid_argument("spectral observable: eigenvalues must be ascending");
    if (static_cast<int>(params.size()) != diagonalizer.num_params)
        throw std::invalid_argument("spectral observable: parameter count mismatch");
    return SpectralObservable{std::move(eigenvalues), std::move(diagonalizer), std::move(params)};
}

int observable_qubits(const Observable& obs) {
    if (const auto* d = std::get_if<DenseObservable>(&obs))
        return std::countr_zero(d->h.dim());
    return std::get<SpectralObservable>(obs).diagonalizer.num_qubits;
}

double expectation(const StateVector& psi, const Observable& obs) {
    if (observable_qubits(obs) != psi.num_qubits)
        throw std::invalid_argument("expectation: dimension mismatch");
    if (const auto* d = std::get_if<DenseObservable>(&obs)) {
        const std::size_t n = d->h.dim();
        cplx acc{0.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) {
            cplx row{0.0, 0.0};
            for (std::size_t c = 0; c < n; ++c) row += d->h(r, c) * psi.amps[c];
            acc += std::conj(psi.amps[r]) * row;
        }
        return acc.real();
    }
    const auto& s = std::get<SpectralObservable>(obs);
    StateVector rotated = run_circuit_inverse(s.diagonalizer, s.diagonalizer_params, psi);
    double e = 0.0;
    for (std::size_t i = 0; i < rotated.dim(); ++i)
        e += s.eigenvalues[i] * std::norm(rotated.amps[i]);
    return e;
}

double expectation(const DensityMatrix& rho, const Observable& obs) {
    if (observable_qubits(obs) != rho.num_qubits)
        throw std::invalid_argument("expectation: dimension mismatch");
    if (const auto* d = std::get_if<DenseObservable>(&obs)) {
        const std::size_t n = d->h.dim();
        cplx acc{0.0, 0.0};
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) acc += rho.at(r, c) * d->h(c, r);
        return acc.real();
    }
    // tr(rho H) = sum_i E_i (V^dagger rho V)_{ii}
    const auto& s = std::get<SpectralObservable>(obs);
    DensityMatrix rotated = rho;
    for (auto it = s.diagonalizer.gates.rbegin(); it != s.diagonalizer.gates.rend(); ++it)
        density_apply_gate_inverse(rotated, *it, s.diagonalizer_params);
    double e = 0.0;
    for (std::size_t i = 0; i < rotated.dim(); ++i) e += s.eigenvalues[i] * rotated.at(i, i).real();
    return e;
}

} // namespace vqnoise
