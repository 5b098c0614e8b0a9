#include "vqnoise/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "vqnoise/errors.hpp"

namespace vqnoise {

SpectrumInfo SpectrumInfo::single(double e0, double e1, double emax) {
    SpectrumInfo s;
    s.e0 = e0;
    s.e1 = e1;
    s.emax = emax;
    s.term_bounds = {{e0, emax}};
    s.validate();
    return s;
}

double SpectrumInfo::total_term_width() const {
    double w = 0.0;
    for (const auto& [lo, hi] : term_bounds) w += hi - lo;
    return w;
}

double SpectrumInfo::h_norm() const { return std::max(std::abs(e0), std::abs(emax)); }

void SpectrumInfo::validate() const {
    if (!(e0 < e1) || !(e1 <= emax))
        throw std::invalid_argument("spectrum: require E0 < E1 <= Emax");
    for (const auto& [lo, hi] : term_bounds)
        if (!(lo <= hi)) throw std::invalid_argument("spectrum: term bounds out of order");
}

void SpectrumInfo::require_nondegenerate() const {
    validate();
    if (e1 - e0 < kDegeneracyTolerance)
        throw degenerate_spectrum_error("spectrum: E1 - E0 below degeneracy tolerance 1e-9");
}

namespace {

double clamp_nonneg(double v) { return v < 0.0 ? 0.0 : v; }

// leading = 1/2 sum over slots of d2C * sigma2; S accumulates total variance.
double leading_sum(const CostFunction& cf, const VirtualParameterRegistry& registry,
                   std::span<const double> theta, const SlotVariances& variances, double& total) {
    double acc = 0.0;
    total = 0.0;
    const double base = eval_cost(cf, theta);
    std::vector<double> shifted(theta.begin(), theta.end());
    for (std::size_t i = 0; i < variances.real.size(); ++i) {
        const double s2 = variances.real[i];
        total += s2;
        if (s2 == 0.0) continue;
        shifted[i] = theta[i] + kPi;
        const double d2 = 0.5 * (eval_cost(cf, shifted) - base);
        shifted[i] = theta[i];
        acc += 0.5 * d2 * s2;
    }
    for (const auto& [idx, s2] : variances.virtuals) {
        total += s2;
        if (s2 == 0.0) continue;
        const double d2 = second_derivative(cf, registry, theta, Slot::virt(idx));
        acc += 0.5 * d2 * s2;
    }
    return acc;
}

} // namespace

LeadingError leading_error(const CostFunction& cf, const VirtualParameterRegistry& registry,
                           std::span<const double> theta, const SlotVariances& variances,
                           const SpectrumInfo& spectrum) {
    spectrum.validate();
    for (double s2 : variances.real)
        if (s2 < 0.0) throw std::invalid_argument("leading_error: negative variance");
    for (const auto& [idx, s2] : variances.virtuals)
        if (s2 < 0.0) throw std::invalid_argument("leading_error: negative variance");

    double total = 0.0;
    LeadingError le;
    le.leading = leading_sum(cf, registry, theta, variances, total);
    le.remainder_bound = spectrum.total_term_width() / 16.0 * total * total;
    return le;
}

LeadingError leading_error_stochastic(const CostFunction& cf,
                                      const VirtualParameterRegistry& registry,
                                      std::span<const double> theta,
                                      const SlotProbabilities& probs,
                                      const SpectrumInfo& spectrum, StochasticVariant variant) {
    SlotVariances vars;
    vars.real = probs.real_sigma2;
    for (const auto& [idx, p] : probs.virtual_probs) {
        if (p < 0.0 || p >= 0.5)
            throw std::invalid_argument("leading_error_stochastic: require 0 <= p < 1/2");
        const double s2 =
            variant == StochasticVariant::ExactVariance ? variance_of_stochastic(p) : 4.0 * p;
        vars.virtuals.emplace_back(idx, s2);
    }
    return leading_error(cf, registry, theta, vars, spectrum);
}

Thm2Bounds thm2_bounds(const CostFunction& cf, const VirtualParameterRegistry& registry,
                       std::span<const double> theta, const SpectrumInfo& spectrum,
                       const SlotVariances& variances) {
    spectrum.require_nondegenerate();
    if (!cf.common_input_state())
        throw std::invalid_argument("thm2_bounds: requires a common input state");

    double metric_sum = 0.0; // sum_i G_ii sigma_i^2
    double total = 0.0;
    for (std::size_t i = 0; i < variances.real.size(); ++i) {
        total += variances.real[i];
        if (variances.real[i] == 0.0) continue;
        metric_sum += fubini_diag(cf, theta, static_cast<int>(i)) * variances.real[i];
    }
    for (const auto& [idx, s2] : variances.virtuals) {
        total += s2;
        if (s2 == 0.0) continue;
        metric_sum += fubini_diag(cf, registry, theta, Slot::virt(idx)) * s2;
    }

    const double gap = spectrum.gap();
    const double width = spectrum.width();
    const double excess = clamp_nonneg(eval_cost(cf, theta) - spectrum.e0); // C(theta) - E0
    const double quad = width / 16.0 * total * total;

    Thm2Bounds b;
    b.simplified_lower = gap * metric_sum;
    b.simplified_upper = width * metric_sum;
    b.lower = gap * metric_sum - (std::sqrt(gap * excess) + 0.25 * excess) * total - quad;
    b.upper = width * metric_sum + (std::sqrt(width * excess) - 0.25 * excess) * total + quad;
    return b;
}

RoughBounds rough_bounds(const SpectrumInfo& spectrum, double total_sigma2) {
    spectrum.validate();
    if (total_sigma2 < 0.0) throw std::invalid_argument("rough_bounds: negative total variance");
    const double s = total_sigma2;
    RoughBounds r;
    r.upper = spectrum.width() * (0.25 * s + s * s / 16.0);
    r.lower = spectrum.gap() / 4.0 * s - spectrum.width() / 16.0 * s * s;
    r.upper_hnorm = spectrum.h_norm() * (0.5 * s + s * s / 8.0);
    return r;
}

Lemma2Bounds lemma2_bounds(const CostFunction& cf, const VirtualParameterRegistry& registry,
                           std::span<const double> theta, Slot slot,
                           const SpectrumInfo& spectrum) {
    spectrum.require_nondegenerate();
    if (!cf.common_input_state())
        throw std::invalid_argument("lemma2_bounds: requires a common input state");
    const double g = fubini_diag(cf, registry, theta, slot);
    const double excess = clamp_nonneg(eval_cost(cf, theta) - spectrum.e0);
    Lemma2Bounds b;
    b.lower = 2.0 * spectrum.gap() * g - 0.5 * excess - std::sqrt(spectrum.gap() * excess);
    b.upper = 2.0 * spectrum.width() * g - 0.5 * excess + std::sqrt(spectrum.width() * excess);
    return b;
}

FidelityBounds fidelity_bounds(double energy, const SpectrumInfo& spectrum) {
    spectrum.require_nondegenerate();
    if (energy < spectrum.e0 - 1e-9 || energy > spectrum.emax + 1e-9)
        throw std::invalid_argument("fidelity_bounds: energy outside [E0, Emax]");
    const double excess = clamp_nonneg(energy - spectrum.e0);
    return {excess / spectrum.width(), excess / spectrum.gap()};
}

RelativeErrors relative_errors(double noisy_value, const SpectrumInfo& spectrum) {
    spectrum.require_nondegenerate();
    const double excess = noisy_value - spectrum.e0;
    return {excess / spectrum.gap(), excess / spectrum.width()};
}

std::string order_of_magnitude_string(double v) {
    if (v <= 0.0) throw std::invalid_argument("order_of_magnitude_string: positive values only");
    int exponent = static_cast<int>(std::floor(std::log10(v)));
    int mantissa = static_cast<int>(std::lround(v / std::pow(10.0, exponent)));
    if (mantissa == 10) {
        mantissa = 1;
        ++exponent;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%de%+03d", mantissa, exponent);
    return buf;
}

ScalingEstimates scaling_helpers(double n, double m, double r, double eps) {
    if (n <= 0 || m <= 0 || eps <= 0)
        throw std::invalid_argument("scaling_helpers: positive inputs required");
    ScalingEstimates s;
    s.sufficient_q = eps / (std::pow(n, r) * m);
    s.mitigated_q = std::sqrt(eps) / (std::pow(n, 0.5 * r) * m);
    s.necessary_q = eps / m;
    s.sufficient_str = order_of_magnitude_string(s.sufficient_q);
    s.mitigated_str = order_of_magnitude_string(s.mitigated_q);
    s.necessary_str = order_of_magnitude_string(s.necessary_q);
    return s;
}

double hessian_trace_diag(const CostFunction& cf, std::span<const double> theta, double grad_tol,
                          std::span<const double> weights) {
    if (!weights.empty() && weights.size() != theta.size())
        throw std::invalid_argument("hessian_trace_diag: weight count mismatch");
    const auto g = gradient(cf, theta);
    double gn = 0.0;
    for (double v : g) gn += v * v;
    gn = std::sqrt(gn);
    if (gn > grad_tol)
        throw std::invalid_argument("hessian_trace_diag: gradient norm above tolerance, "
                                    "theta is not a local minimum");
    double acc = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        acc += w * second_derivative(cf, theta, static_cast<int>(i));
    }
    return acc;
}

nlohmann::json BoundReport::to_json() const {
    return nlohmann::json{{"leading", leading},
                          {"remainder_bound", remainder_bound},
                          {"thm2_lower", thm2_lower},
                          {"thm2_upper", thm2_upper},
                          {"thm2_simplified_lower", thm2_simplified_lower},
                          {"thm2_simplified_upper", thm2_simplified_upper},
                          {"rough_lower", rough_lower},
                          {"rough_upper", rough_upper},
                          {"rough_upper_hnorm", rough_upper_hnorm},
                          {"r1", r1},
                          {"rmax", rmax},
                          {"delta", delta},
                          {"epsilon", epsilon},
                          {"total_sigma2", total_sigma2}};
}

BoundReport build_bound_report(const NoisyEvaluator& evaluator, std::span<const double> theta,
                               const SpectrumInfo& spectrum) {
    const CostFunction& cf = evaluator.cost();
    const auto variances =
        collect_slot_variances(NoisyCircuit{cf.circuit, evaluator.registry()});

    BoundReport r;
    const double noiseless = eval_cost(cf, theta);
    const double noisy = evaluator.evaluate(theta).value;
    r.delta = noiseless - spectrum.e0;
    r.epsilon = noisy - noiseless;
    r.total_sigma2 = variances.total();

    const auto le = leading_error(cf, evaluator.registry(), theta, variances, spectrum);
    r.leading = le.leading;
    r.remainder_bound = le.remainder_bound;

    const auto t2 = thm2_bounds(cf, evaluator.registry(), theta, spectrum, variances);
    r.thm2_lower = t2.lower;
    r.thm2_upper = t2.upper;
    r.thm2_simplified_lower = t2.simplified_lower;
    r.thm2_simplified_upper = t2.simplified_upper;

    const auto rb = rough_bounds(spectrum, r.total_sigma2);
    r.rough_lower = rb.lower;
    r.rough_upper = rb.upper;
    r.rough_upper_hnorm = rb.upper_hnorm;

    const auto rel = relative_errors(noisy, spectrum);
    r.r1 = rel.r1;
    r.rmax = rel.rmax;
    return r;
}

} // namespace vqnoise
