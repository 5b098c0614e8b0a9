#ifndef VQNOISE_QUADRATURE_HPP
#define VQNOISE_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace vqnoise {

// Gauss-Hermite rule for weight exp(-t^2) on (-inf, inf). To average f under
// a zero-mean Gaussian with variance s2, evaluate
//   sum_i (weights[i] / sqrt(pi)) * f(sqrt(2 s2) * nodes[i]).
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussHermiteRule gauss_hermite(std::size_t num_nodes);

inline constexpr double kInvSqrtPi = 0.5641895835477562869;

} // namespace vqnoise

#endif
