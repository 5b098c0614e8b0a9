#ifndef VQNOISE_TYPES_HPP
#define VQNOISE_TYPES_HPP

#include <complex>
#include <cstdint>

namespace vqnoise {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Dimension of an n-qubit Hilbert space.
inline std::size_t dim_of(int num_qubits) { return std::size_t{1} << num_qubits; }

} // namespace vqnoise

#endif
