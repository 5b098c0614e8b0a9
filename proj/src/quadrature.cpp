#include "vqnoise/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace vqnoise {

// Newton iteration on the physicists' Hermite recurrence, roots found from
// the outside in with the usual asymptotic starting guesses.
GaussHermiteRule gauss_hermite(std::size_t num_nodes) {
    if (num_nodes < 1) throw std::invalid_argument("gauss_hermite: need at least one node");
    const std::size_t n = num_nodes;
    GaussHermiteRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    const std::size_t half = (n + 1) / 2;
    double z = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * rule.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * rule.nodes[1];
        else
            z = 2.0 * z - rule.nodes[i - 2];

        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Orthonormal Hermite recurrence keeps values in range.
            double p1 = std::pow(M_PI, -0.25);
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const double dj = static_cast<double>(j + 1);
                p1 = z * std::sqrt(2.0 / dj) * p2 - std::sqrt((dj - 1.0) / dj) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

} // namespace vqnoise
