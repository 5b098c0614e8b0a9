#include "vqnoise/optimize.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "vqnoise/errors.hpp"
#include "vqnoise/rng.hpp"

namespace vqnoise {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void check_finite(double v) {
    if (!std::isfinite(v)) throw nonfinite_cost_error("optimizer: non-finite cost value");
}

struct LineSearchResult {
    double step = 0.0;
    double value = 0.0;
    std::vector<double> grad;
    long evals = 0;
};

// Strong Wolfe line search (Nocedal & Wright alg. 3.5/3.6), c1=1e-4, c2=0.9.
LineSearchResult wolfe_line_search(const CostFn& cost, const GradFn& grad,
                                   std::span<const double> x, std::span<const double> dir,
                                   double f0, std::span<const double> g0) {
    constexpr double c1 = 1e-4;
    constexpr double c2 = 0.9;
    constexpr int max_steps = 30;

    const double slope0 = dot(g0, dir);
    LineSearchResult res;

    std::vector<double> xt(x.size());
    auto probe = [&](double a, double& f, std::vector<double>& g) {
        for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] + a * dir[i];
        f = cost(xt);
        check_finite(f);
        g = grad(xt);
        res.evals += 1 + static_cast<long>(2 * x.size());
    };

    auto zoom = [&](double lo, double flo, double slope_lo, double hi, double fhi) {
        double f = 0.0;
        std::vector<double> g;
        for (int it = 0; it < max_steps; ++it) {
            // Quadratic interpolation with bisection fallback.
            double a = lo + 0.5 * (hi - lo);
            const double denom = 2.0 * (fhi - flo - slope_lo * (hi - lo));
            if (denom != 0.0) {
                const double cand = lo - slope_lo * (hi - lo) * (hi - lo) / denom;
                const double lo_b = std::min(lo, hi), hi_b = std::max(lo, hi);
                if (cand > lo_b + 0.1 * (hi_b - lo_b) && cand < hi_b - 0.1 * (hi_b - lo_b))
                    a = cand;
            }
            probe(a, f, g);
            const double slope = dot(g, dir);
            if (f > f0 + c1 * a * slope0 || f >= flo) {
                hi = a;
                fhi = f;
            } else {
                if (std::abs(slope) <= -c2 * slope0) {
                    res.step = a;
                    res.value = f;
                    res.grad = std::move(g);
                    return true;
                }
                if (slope * (hi - lo) >= 0.0) {
                    hi = lo;
                    fhi = flo;
                }
                lo = a;
                flo = f;
                slope_lo = slope;
            }
            if (std::abs(hi - lo) < 1e-16) break;
        }
        // Accept the best sufficient-decrease point found.
        res.step = lo;
        res.value = flo;
        for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] + lo * dir[i];
        res.grad = grad(xt);
        res.evals += static_cast<long>(2 * x.size());
        return lo > 0.0;
    };

    double a_prev = 0.0, f_prev = f0, slope_prev = slope0;
    double a = 1.0;
    double f = 0.0;
    std::vector<double> g;
    for (int it = 0; it < max_steps; ++it) {
        probe(a, f, g);
        const double slope = dot(g, dir);
        if (f > f0 + c1 * a * slope0 || (it > 0 && f >= f_prev)) {
            zoom(a_prev, f_prev, slope_prev, a, f);
            return res;
        }
        if (std::abs(slope) <= -c2 * slope0) {
            res.step = a;
            res.value = f;
            res.grad = std::move(g);
            return res;
        }
        if (slope >= 0.0) {
            zoom(a, f, slope, a_prev, f_prev);
            return res;
        }
        a_prev = a;
        f_prev = f;
        slope_prev = slope;
        a *= 2.0;
    }
    res.step = a;
    res.value = f;
    res.grad = std::move(g);
    return res;
}

struct SingleRun {
    std::vector<double> theta;
    double value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    long evals = 0;
    bool converged = false;
};

SingleRun bfgs_run(const CostFn& cost, const GradFn& grad, std::vector<double> x,
                   const OptimizerConfig& config) {
    const std::size_t d = x.size();
    SingleRun run;

    // Inverse Hessian approximation, started at identity.
    std::vector<double> h(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) h[i * d + i] = 1.0;

    double f = cost(x);
    check_finite(f);
    std::vector<double> g = grad(x);
    run.evals += 1 + static_cast<long>(2 * d);

    std::vector<double> dir(d), s(d), y(d), hy(d);
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        run.iterations = iter;
        if (norm2(g) <= config.grad_tol) {
            run.converged = true;
            break;
        }

        for (std::size_t i = 0; i < d; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < d; ++j) acc += h[i * d + j] * g[j];
            dir[i] = -acc;
        }
        if (dot(dir, g) >= 0.0) {
            // Lost positive-definiteness; reset to steepest descent.
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) h[i * d + j] = (i == j) ? 1.0 : 0.0;
                dir[i] = -g[i];
            }
        }

        LineSearchResult ls = wolfe_line_search(cost, grad, x, dir, f, g);
        run.evals += ls.evals;
        if (ls.step <= 0.0 || ls.grad.empty()) break; // no acceptable step

        for (std::size_t i = 0; i < d; ++i) {
            s[i] = ls.step * dir[i];
            y[i] = ls.grad[i] - g[i];
            x[i] += s[i];
        }
        f = ls.value;
        g = std::move(ls.grad);

        const double sy = dot(s, y);
        if (sy > 1e-14) {
            // BFGS inverse update (Sherman-Morrison form).
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < d; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < d; ++j) acc += h[i * d + j] * y[j];
                hy[i] = acc;
            }
            const double yhy = dot(y, hy);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    h[i * d + j] += (1.0 + rho * yhy) * rho * s[i] * s[j] -
                                    rho * (s[i] * hy[j] + hy[i] * s[j]);
        }
    }

    run.theta = std::move(x);
    run.value = f;
    run.grad_norm = norm2(g);
    run.converged = run.converged || run.grad_norm <= config.grad_tol;
    return run;
}

} // namespace

OptimizeResult minimize(const CostFn& cost, const GradFn& grad, int dim,
                        const OptimizerConfig& config) {
    if (dim < 1) throw std::invalid_argument("minimize: dimension must be >= 1");
    if (config.restarts < 1) throw std::invalid_argument("minimize: restarts must be >= 1");

    OptimizeResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (int r = 0; r < config.restarts; ++r) {
        auto engine = make_engine(config.seed, static_cast<std::uint64_t>(r));
        std::uniform_real_distribution<double> u(config.init_low, config.init_high);
        std::vector<double> x0(static_cast<std::size_t>(dim));
        for (double& v : x0) v = u(engine);

        SingleRun run = bfgs_run(cost, grad, std::move(x0), config);
        best.cost_evals += run.evals;
        if (run.value < best.value) {
            best.value = run.value;
            best.theta = run.theta;
            best.grad_norm = run.grad_norm;
            best.iterations = run.iterations;
            best.converged = run.converged;
            best.best_restart = r;
        }
    }
    return best;
}

OptimizeResult optimize(const CostFunction& cf, const OptimizerConfig& config) {
    return minimize([&](std::span<const double> t) { return eval_cost(cf, t); },
                    [&](std::span<const double> t) { return gradient(cf, t); },
                    cf.circuit.num_params, config);
}

OptimizeResult optimize(const NoisyEvaluator& evaluator, const OptimizerConfig& config) {
    return minimize([&](std::span<const double> t) { return evaluator.evaluate(t).value; },
                    [&](std::span<const double> t) { return evaluator.gradient(t); },
                    evaluator.cost().circuit.num_params, config);
}

} // namespace vqnoise
