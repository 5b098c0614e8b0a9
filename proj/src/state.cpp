#include "vqnoise/state.hpp"

#include <cmath>
#include <stdexcept>

namespace vqnoise {

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.dim()) throw std::invalid_argument("StateVector::basis: index out of range");
    s.amps[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double ss = 0.0;
    for (const cplx& a : amps) ss += std::norm(a);
    return std::sqrt(ss);
}

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) throw std::runtime_error("StateVector::normalize: zero vector");
    for (cplx& a : amps) a /= n;
}

cplx inner(const StateVector& bra, const StateVector& ket) {
    if (bra.dim() != ket.dim()) throw std::invalid_argument("inner: dimension mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < bra.dim(); ++i) acc += std::conj(bra.amps[i]) * ket.amps[i];
    return acc;
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a.amps[i] - b.amps[i]));
    return m;
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    DensityMatrix rho(psi.num_qubits);
    const std::size_t d = rho.dim();
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) rho.at(r, c) = psi.amps[r] * std::conj(psi.amps[c]);
    return rho;
}

cplx DensityMatrix::trace() const {
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < dim(); ++i) t += at(i, i);
    return t;
}

double DensityMatrix::hermiticity_defect() const {
    double m = 0.0;
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t c = r; c < dim(); ++c)
            m = std::max(m, std::abs(at(r, c) - std::conj(at(c, r))));
    return m;
}

double max_abs_diff(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.a.size(); ++i) m = std::max(m, std::abs(a.a[i] - b.a[i]));
    return m;
}

} // namespace vqnoise
