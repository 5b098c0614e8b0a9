#include "vqnoise/mitigation.hpp"

#include <cmath>

namespace vqnoise {

std::string MitigationContribution::slot_label() const {
    return (slot.kind == Slot::Kind::Real ? "real:" : "virtual:") + std::to_string(slot.index);
}

nlohmann::json MitigationReport::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& c : contributions)
        terms.push_back({{"slot", c.slot_label()},
                         {"h", c.h},
                         {"sigma2", c.sigma2},
                         {"term", c.term}});
    nlohmann::json j{{"raw_noisy", raw_noisy},
                     {"mitigated", mitigated},
                     {"contributions", std::move(terms)},
                     {"evaluation_count", evaluation_count},
                     {"skipped_slots", skipped_slots}};
    if (remainder_bound) j["remainder_bound"] = *remainder_bound;
    if (!warning.empty()) j["warning"] = warning;
    return j;
}

std::string MitigationReport::contributions_csv() const {
    std::string out = "slot,h,sigma2,term\n";
    char buf[128];
    for (const auto& c : contributions) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g\n", c.slot_label().c_str(), c.h,
                      c.sigma2, c.term);
        out += buf;
    }
    return out;
}

namespace {

MitigationReport run_mitigation(const NoisyEvaluator& evaluator, std::span<const double> theta,
                                const SlotVariances& weights, const MitigationOptions& options) {
    MitigationReport report;
    const long calls_before = evaluator.eval_count();

    report.raw_noisy = evaluator.evaluate(theta).value;
    double correction = 0.0;
    double total_sigma2 = 0.0;

    auto handle_slot = [&](Slot slot, double sigma2) {
        total_sigma2 += sigma2;
        if (sigma2 <= options.skip_threshold) {
            if (sigma2 > 0.0) ++report.skipped_slots;
            return;
        }
        MitigationContribution c;
        c.slot = slot;
        c.sigma2 = sigma2;
        c.h = evaluator.noisy_second_derivative(theta, slot, &report.raw_noisy);
        c.term = 0.5 * c.h * sigma2;
        correction += c.term;
        report.contributions.push_back(c);
    };

    for (std::size_t i = 0; i < weights.real.size(); ++i)
        handle_slot(Slot::real(static_cast<int>(i)), weights.real[i]);
    for (const auto& [idx, s2] : weights.virtuals) handle_slot(Slot::virt(idx), s2);

    report.mitigated = report.raw_noisy - correction;
    report.evaluation_count = evaluator.eval_count() - calls_before;

    if (options.spectrum) {
        options.spectrum->validate();
        report.remainder_bound =
            options.spectrum->total_term_width() / 16.0 * total_sigma2 * total_sigma2;
        if (options.requested_precision && *report.remainder_bound > *options.requested_precision)
            report.warning = "theorem-1 remainder bound exceeds the requested precision; "
                             "the mitigated residual may be too large";
    }
    return report;
}

} // namespace

MitigationReport mitigate(const NoisyEvaluator& evaluator, std::span<const double> theta,
                          const MitigationOptions& options) {
    const auto weights = collect_slot_variances(
        NoisyCircuit{evaluator.cost().circuit, evaluator.registry()});
    return run_mitigation(evaluator, theta, weights, options);
}

StochasticSlotProbs slot_probabilities(const NoisyEvaluator& evaluator) {
    const auto vars = collect_slot_variances(
        NoisyCircuit{evaluator.cost().circuit, evaluator.registry()});
    StochasticSlotProbs probs;
    probs.real.reserve(vars.real.size());
    for (double s2 : vars.real) probs.real.push_back(stochastic_of_variance(s2));
    for (const auto& [idx, s2] : vars.virtuals)
        probs.virtual_probs.emplace_back(idx, stochastic_of_variance(s2));
    return probs;
}

MitigationReport mitigate_stochastic(const NoisyEvaluator& evaluator,
                                     std::span<const double> theta,
                                     const StochasticSlotProbs& probs, StochasticVariant variant,
                                     const MitigationOptions& options) {
    auto to_sigma2 = [&](double p) {
        if (p < 0.0 || p >= 0.5)
            throw std::invalid_argument("mitigate_stochastic: require 0 <= p < 1/2");
        return variant == StochasticVariant::ExactVariance ? variance_of_stochastic(p) : 4.0 * p;
    };
    SlotVariances weights;
    weights.real.reserve(probs.real.size());
    for (double p : probs.real) weights.real.push_back(to_sigma2(p));
    for (const auto& [idx, p] : probs.virtual_probs) weights.virtuals.emplace_back(idx, to_sigma2(p));
    return run_mitigation(evaluator, theta, weights, options);
}

} // namespace vqnoise
