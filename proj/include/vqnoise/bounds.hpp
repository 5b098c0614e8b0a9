#ifndef VQNOISE_BOUNDS_HPP
#define VQNOISE_BOUNDS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vqnoise/cost.hpp"

namespace vqnoise {

struct SpectrumInfo {
    double e0 = 0.0;   // smallest eigenvalue of H = sum_l H_l
    double e1 = 0.0;   // second smallest
    double emax = 0.0; // largest
    std::vector<std::pair<double, double>> term_bounds; // (E_{0,l}, E_{max,l}) per term

    static SpectrumInfo single(double e0, double e1, double emax);

    double gap() const { return e1 - e0; }
    double width() const { return emax - e0; }
    double total_term_width() const; // sum_l (E_{max,l} - E_{0,l})
    double h_norm() const;           // max(|e0|, |emax|)

    void validate() const;                    // e0 < e1 <= emax
    void require_nondegenerate() const;       // e1 - e0 >= 1e-9
};

inline constexpr double kDegeneracyTolerance = 1e-9;

struct LeadingError {
    double leading = 0.0;         // (1/2) sum_i d2C/dtheta_i^2 sigma_i^2, all slots
    double remainder_bound = 0.0; // sum_l(E_max,l - E_0,l)/16 * (sum_i sigma_i^2)^2
};

// Theorem-1 estimate: |epsilon(theta) - leading| <= remainder_bound.
// Variances cover real slots (merged channels folded in) and non-merged
// virtual slots; second derivatives of the noiseless cost via the pi-shift rule.
LeadingError leading_error(const CostFunction& cf, const VirtualParameterRegistry& registry,
                           std::span<const double> theta, const SlotVariances& variances,
                           const SpectrumInfo& spectrum);

enum class StochasticVariant {
    ExactVariance,       // sigma^2 = -2 log(1 - 2p)
    SmallPApproximation, // sigma^2 = 4p
};

struct SlotProbabilities {
    std::vector<double> real_sigma2;                        // per real slot
    std::vector<std::pair<int, double>> virtual_probs;      // (registry index, p)
};

// Corollary-1 estimate for stochastic channels with probabilities p_j.
LeadingError leading_error_stochastic(const CostFunction& cf,
                                      const VirtualParameterRegistry& registry,
                                      std::span<const double> theta,
                                      const SlotProbabilities& probs,
                                      const SpectrumInfo& spectrum, StochasticVariant variant);

struct Thm2Bounds {
    double lower = 0.0;
    double upper = 0.0;
    // Leading metric terms with delta neglected, for reports only.
    double simplified_lower = 0.0;
    double simplified_upper = 0.0;
};

// Theorem-2 sandwich: lower <= epsilon(theta) <= upper. Requires a common
// input state and a nondegenerate ground space.
Thm2Bounds thm2_bounds(const CostFunction& cf, const VirtualParameterRegistry& registry,
                       std::span<const double> theta, const SpectrumInfo& spectrum,
                       const SlotVariances& variances);

struct RoughBounds {
    double lower = 0.0;       // (E1-E0)/4 S - (Emax-E0)/16 S^2
    double upper = 0.0;       // (Emax-E0)(S/4 + S^2/16)
    double upper_hnorm = 0.0; // ||H|| (S/2 + S^2/8)
};

// Spectrum-only estimates, no circuit evaluation. S = sum of all variances.
RoughBounds rough_bounds(const SpectrumInfo& spectrum, double total_sigma2);

struct Lemma2Bounds {
    double lower = 0.0;
    double upper = 0.0;
};

// Bracket on d2C/dtheta_slot^2 from the metric and spectrum.
Lemma2Bounds lemma2_bounds(const CostFunction& cf, const VirtualParameterRegistry& registry,
                           std::span<const double> theta, Slot slot,
                           const SpectrumInfo& spectrum);

struct FidelityBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// Lemma-3 bracket on the infidelity 1 - <psi0|rho|psi0> of any state with
// energy tr(rho H).
FidelityBounds fidelity_bounds(double energy, const SpectrumInfo& spectrum);

struct RelativeErrors {
    double r1 = 0.0;   // (value - E0) / (E1 - E0)
    double rmax = 0.0; // (value - E0) / (Emax - E0)
};

RelativeErrors relative_errors(double noisy_value, const SpectrumInfo& spectrum);

struct ScalingEstimates {
    double sufficient_q = 0.0;     // eps / (n^r M)
    double mitigated_q = 0.0;      // sqrt(eps) / (n^{r/2} M)
    double necessary_q = 0.0;      // eps / M
    std::string sufficient_str;    // one-significant-digit renderings
    std::string mitigated_str;
    std::string necessary_str;
};

// Order-of-magnitude noise levels for target precision eps; constants fixed
// to 1, so treat the outputs as orders only.
ScalingEstimates scaling_helpers(double n, double m, double r, double eps);

std::string order_of_magnitude_string(double v);

// Sum of pi-shift diagonal second derivatives over the real slots, optionally
// weighted; equals the Hessian trace norm at a minimum. Requires the gradient
// norm at theta to be below grad_tol.
double hessian_trace_diag(const CostFunction& cf, std::span<const double> theta,
                          double grad_tol = 1e-4,
                          std::span<const double> weights = {});

struct BoundReport {
    double leading = 0.0;
    double remainder_bound = 0.0;
    double thm2_lower = 0.0;
    double thm2_upper = 0.0;
    double thm2_simplified_lower = 0.0;
    double thm2_simplified_upper = 0.0;
    double rough_lower = 0.0;
    double rough_upper = 0.0;
    double rough_upper_hnorm = 0.0;
    double r1 = 0.0;
    double rmax = 0.0;
    double delta = 0.0;       // C(theta) - E0
    double epsilon = 0.0;     // C_noisy(theta) - C(theta)
    double total_sigma2 = 0.0;

    nlohmann::json to_json() const;
};

// Everything at once for one parameter point; exact-channel epsilon included.
BoundReport build_bound_report(const NoisyEvaluator& evaluator, std::span<const double> theta,
                               const SpectrumInfo& spectrum);

} // namespace vqnoise

#endif
