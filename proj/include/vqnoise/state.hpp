#ifndef VQNOISE_STATE_HPP
#define VQNOISE_STATE_HPP

#include <cstdint>
#include <vector>

#include "vqnoise/types.hpp"

namespace vqnoise {

struct StateVector {
    int num_qubits = 0;
    std::vector<cplx> amps;

    StateVector() = default;
    explicit StateVector(int n) : num_qubits(n), amps(dim_of(n), cplx{0.0, 0.0}) {}

    static StateVector basis(int num_qubits, std::uint64_t index);

    std::size_t dim() const { return amps.size(); }
    double norm() const;
    void normalize();
};

cplx inner(const StateVector& bra, const StateVector& ket);
double max_abs_diff(const StateVector& a, const StateVector& b);

struct DensityMatrix {
    int num_qubits = 0;
    std::vector<cplx> a; // row-major dim x dim

    DensityMatrix() = default;
    explicit DensityMatrix(int n) : num_qubits(n), a(dim_of(n) * dim_of(n), cplx{0.0, 0.0}) {}

    static DensityMatrix pure(const StateVector& psi);

    std::size_t dim() const { return dim_of(num_qubits); }
    cplx& at(std::size_t r, std::size_t c) { return a[r * dim() + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return a[r * dim() + c]; }

    cplx trace() const;
    double hermiticity_defect() const; // max |rho - rho^dagger| entry
};

double max_abs_diff(const DensityMatrix& a, const DensityMatrix& b);

} // namespace vqnoise

#endif
