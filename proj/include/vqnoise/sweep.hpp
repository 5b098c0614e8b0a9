#ifndef VQNOISE_SWEEP_HPP
#define VQNOISE_SWEEP_HPP

#include <string>

#include <json.hpp>

#include "vqnoise/optimize.hpp"
#include "vqnoise/toymodel.hpp"

namespace vqnoise {

// One experiment family: re-optimize the noisy toy model over a list of error
// rates (gap fixed) or spectral gaps (noise fixed), several instance seeds per
// point, and compare the measured error against the rough bounds.
struct SweepConfig {
    enum class Variable { ErrorRate, Gap };
    Variable variable = Variable::ErrorRate;
    std::vector<double> values; // positive, ascending

    // Rate sweep: q1 = v * q1_factor, q2 = v * q2_factor, q_ro = v * q_readout_factor.
    double q1_factor = 1.0;
    double q2_factor = 10.0;
    double q_readout_factor = 10.0;
    // Gap sweep: fixed probabilities.
    NoiseSpec fixed_noise = NoiseSpec::direct(1e-4, 1e-3, 1e-3);

    EvalMode mode = EvalMode::Exact;
    std::int64_t samples = 100000;
    OptimizerConfig optimizer;
    std::vector<std::uint64_t> seeds = {0, 1, 2};

    void validate() const;
};

struct SweepPoint {
    double sweep_value = 0.0;
    std::uint64_t seed = 0;
    double epsilon = 0.0; // C_noisy(theta*) - C(theta*), C noiseless at theta*
    double r1 = 0.0;
    double rmax = 0.0;
    double rough_lower = 0.0;
    double rough_upper = 0.0;
    double thm1_leading = 0.0;
    double thm1_remainder = 0.0;
    double c_noisy_opt = 0.0;
    double c_noiseless_opt = 0.0;
    long evals = 0;
    double wall_ms = 0.0;
    double total_sigma2 = 0.0;
    bool failed = false;
    std::string error;
};

struct RunRecord {
    ToyModelSpec base_spec;
    SweepConfig config;
    std::vector<SweepPoint> points; // ordered by (value index, seed index)

    nlohmann::json to_json() const;
};

RunRecord run_sweep(const ToyModelSpec& base_spec, const SweepConfig& config);

// Pinned column order:
// sweep_value,seed,epsilon,R1,Rmax,rough_lower,rough_upper,thm1_leading,
// thm1_remainder,C_noisy_opt,C_noiseless_opt,evals,wall_ms
// Wall time is the one non-reproducible column; drop it to compare runs.
std::string run_record_csv(const RunRecord& record, bool include_wall = true);

// CSV + JSON record + SVG chart under out_dir with the given stem.
void write_run_record(const RunRecord& record, const std::string& out_dir,
                      const std::string& stem);

// Spearman correlation between the sweep variable and mean epsilon per value.
double sweep_epsilon_correlation(const RunRecord& record);

} // namespace vqnoise

#endif
