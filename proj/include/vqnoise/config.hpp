#ifndef VQNOISE_CONFIG_HPP
#define VQNOISE_CONFIG_HPP

#include <string>

#include <json.hpp>

#include "vqnoise/sweep.hpp"

namespace vqnoise {

// JSON run configs for the CLI. Every parser rejects unknown keys so a typo
// fails loudly instead of silently running defaults.

ToyModelSpec toy_model_spec_from_json(const nlohmann::json& doc);
nlohmann::json toy_model_spec_to_json(const ToyModelSpec& spec);

OptimizerConfig optimizer_config_from_json(const nlohmann::json& doc);

// {"model": {...}, "sweep": {"variable": "error_rate"|"gap", "values": [...],
//  "ratios": {...} | "noise": {...}, "seeds": [...], "mode": ...,
//  "samples": ..., "optimizer": {...}}}
SweepConfig sweep_config_from_json(const nlohmann::json& doc);
ToyModelSpec sweep_model_from_json(const nlohmann::json& doc);

// Evaluation point for predict / mitigate-demo:
// {"model": {...}, "noise": {...}, "theta": "optimum" | [angles...],
//  "mode": "exact"|"trajectory", "samples": N, "evaluator_seed": S,
//  "requested_precision": eps (optional, mitigate-demo)}
struct PointRunConfig {
    ToyModelSpec model;
    NoiseSpec noise;
    bool theta_is_optimum = true;
    std::vector<double> theta;
    EvalMode mode = EvalMode::Exact;
    std::int64_t samples = 100000;
    std::uint64_t evaluator_seed = 0;
    std::optional<double> requested_precision;
};

PointRunConfig point_run_config_from_json(const nlohmann::json& doc);

nlohmann::json load_json_file(const std::string& path);

} // namespace vqnoise

#endif
