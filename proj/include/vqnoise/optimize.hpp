#ifndef VQNOISE_OPTIMIZE_HPP
#define VQNOISE_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vqnoise/cost.hpp"

namespace vqnoise {

struct OptimizerConfig {
    int restarts = 5;
    int max_iterations = 500;
    double grad_tol = 1e-6;
    std::uint64_t seed = 0;
    double init_low = 0.0;
    double init_high = 2.0 * kPi;
};

struct OptimizeResult {
    std::vector<double> theta;
    double value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;     // of the winning restart
    long cost_evals = 0;    // across all restarts, cost + gradient-component evals
    bool converged = false; // winning restart hit grad_tol
    int best_restart = -1;
};

using CostFn = std::function<double(std::span<const double>)>;
using GradFn = std::function<std::vector<double>(std::span<const double>)>;

// Dense BFGS with a strong-Wolfe line search; best result over `restarts`
// uniformly random starting points. Throws nonfinite_cost_error when the
// objective stops being finite.
OptimizeResult minimize(const CostFn& cost, const GradFn& grad, int dim,
                        const OptimizerConfig& config);

// Parameter-shift gradients on the noiseless / noisy cost.
OptimizeResult optimize(const CostFunction& cf, const OptimizerConfig& config);
OptimizeResult optimize(const NoisyEvaluator& evaluator, const OptimizerConfig& config);

} // namespace vqnoise

#endif
