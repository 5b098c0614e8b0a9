#ifndef VQNOISE_MITIGATION_HPP
#define VQNOISE_MITIGATION_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "vqnoise/bounds.hpp"
#include "vqnoise/cost.hpp"

namespace vqnoise {

// C_mitigated(theta) = C_noisy(theta) - (1/2) sum_i h_i(theta) sigma_i^2 with
// h_i the pi-shift second derivative estimated from noisy evaluations only.
// Cancels the Theorem-1 leading term; the residual is quadratic in the total
// variance where the raw error is linear.

struct MitigationContribution {
    Slot slot;
    double h = 0.0;      // noisy pi-shift second derivative
    double sigma2 = 0.0;
    double term = 0.0;   // h * sigma2 / 2

    std::string slot_label() const;
};

struct MitigationReport {
    double raw_noisy = 0.0;
    double mitigated = 0.0;
    std::vector<MitigationContribution> contributions;
    long evaluation_count = 0; // noisy cost-function calls consumed
    int skipped_slots = 0;     // slots with sigma2 <= skip threshold
    std::optional<double> remainder_bound; // Theorem-1 residual ceiling, if spectrum known
    std::string warning;

    nlohmann::json to_json() const;
    std::string contributions_csv() const; // columns: slot,h,sigma2,term
};

struct MitigationOptions {
    // Slots below this variance are skipped; the bias is under arithmetic noise.
    double skip_threshold = 1e-15;
    std::optional<SpectrumInfo> spectrum;       // enables remainder_bound
    std::optional<double> requested_precision;  // warn when ceiling exceeds it
};

// Variances come from the evaluator's registry (merged entries folded onto
// their real slots).
MitigationReport mitigate(const NoisyEvaluator& evaluator, std::span<const double> theta,
                          const MitigationOptions& options = {});

struct StochasticSlotProbs {
    std::vector<double> real;                          // p per real slot (0 = no noise)
    std::vector<std::pair<int, double>> virtual_probs; // (registry index, p)
};

// Probabilities from the evaluator's registered variances, p = (1-e^{-s2/2})/2.
StochasticSlotProbs slot_probabilities(const NoisyEvaluator& evaluator);

// Mitigation with per-slot subtraction weights derived from stochastic
// probabilities: sigma^2 = -2 log(1-2p) (ExactVariance) or 4p (SmallP).
MitigationReport mitigate_stochastic(const NoisyEvaluator& evaluator,
                                     std::span<const double> theta,
                                     const StochasticSlotProbs& probs, StochasticVariant variant,
                                     const MitigationOptions& options = {});

} // namespace vqnoise

#endif
