#include "vqnoise/config.hpp"

#include <fstream>

#include "vqnoise/circuit_io.hpp"
#include "vqnoise/errors.hpp"

namespace vqnoise {

using nlohmann::json;

json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file: " + path);
    json doc;
    try {
        f >> doc;
    } catch (const json::parse_error& e) {
        throw config_error(std::string{"config parse error: "} + e.what());
    }
    return doc;
}

ToyModelSpec toy_model_spec_from_json(const json& doc) {
    reject_unknown_keys(doc,
                        {"n", "depth", "e0", "e1", "emax", "circuit_seed", "spectrum_seed",
                         "theta_opt_seed"},
                        "model");
    ToyModelSpec spec;
    spec.n = doc.value("n", spec.n);
    spec.depth = doc.value("depth", spec.depth);
    spec.e0 = doc.value("e0", spec.e0);
    spec.e1 = doc.value("e1", spec.e1);
    spec.emax = doc.value("emax", spec.emax);
    spec.circuit_seed = doc.value("circuit_seed", spec.circuit_seed);
    spec.spectrum_seed = doc.value("spectrum_seed", spec.spectrum_seed);
    spec.theta_opt_seed = doc.value("theta_opt_seed", spec.theta_opt_seed);
    spec.validate();
    return spec;
}

json toy_model_spec_to_json(const ToyModelSpec& spec) {
    return json{{"n", spec.n},
                {"depth", spec.depth},
                {"e0", spec.e0},
                {"e1", spec.e1},
                {"emax", spec.emax},
                {"circuit_seed", spec.circuit_seed},
                {"spectrum_seed", spec.spectrum_seed},
                {"theta_opt_seed", spec.theta_opt_seed}};
}

OptimizerConfig optimizer_config_from_json(const json& doc) {
    reject_unknown_keys(doc, {"restarts", "max_iterations", "grad_tol", "seed", "init_low",
                              "init_high"},
                        "optimizer");
    OptimizerConfig cfg;
    cfg.restarts = doc.value("restarts", cfg.restarts);
    cfg.max_iterations = doc.value("max_iterations", cfg.max_iterations);
    cfg.grad_tol = doc.value("grad_tol", cfg.grad_tol);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.init_low = doc.value("init_low", cfg.init_low);
    cfg.init_high = doc.value("init_high", cfg.init_high);
    if (cfg.restarts < 1 || cfg.max_iterations < 1 || cfg.grad_tol <= 0.0)
        throw config_error("optimizer: invalid settings");
    return cfg;
}

namespace {

EvalMode mode_from_string(const std::string& s) {
    if (s == "exact") return EvalMode::Exact;
    if (s == "trajectory") return EvalMode::Trajectory;
    throw config_error("mode must be 'exact' or 'trajectory', got '" + s + "'");
}

} // namespace

ToyModelSpec sweep_model_from_json(const json& doc) {
    reject_unknown_keys(doc, {"model", "sweep"}, "run config");
    return toy_model_spec_from_json(doc.at("model"));
}

SweepConfig sweep_config_from_json(const json& doc) {
    reject_unknown_keys(doc, {"model", "sweep"}, "run config");
    const json& sj = doc.at("sweep");
    reject_unknown_keys(
        sj, {"variable", "values", "ratios", "noise", "seeds", "mode", "samples", "optimizer"},
        "sweep");

    SweepConfig cfg;
    const std::string variable = sj.at("variable").get<std::string>();
    if (variable == "error_rate")
        cfg.variable = SweepConfig::Variable::ErrorRate;
    else if (variable == "gap")
        cfg.variable = SweepConfig::Variable::Gap;
    else
        throw config_error("sweep: variable must be 'error_rate' or 'gap'");

    cfg.values = sj.at("values").get<std::vector<double>>();
    if (cfg.variable == SweepConfig::Variable::ErrorRate) {
        if (sj.contains("noise")) throw config_error("sweep: rate sweep takes 'ratios'");
        if (sj.contains("ratios")) {
            const json& r = sj.at("ratios");
            reject_unknown_keys(r, {"q1", "q2", "q_readout"}, "sweep ratios");
            cfg.q1_factor = r.value("q1", cfg.q1_factor);
            cfg.q2_factor = r.value("q2", cfg.q2_factor);
            cfg.q_readout_factor = r.value("q_readout", cfg.q_readout_factor);
        }
    } else {
        if (sj.contains("ratios")) throw config_error("sweep: gap sweep takes 'noise'");
        if (sj.contains("noise")) cfg.fixed_noise = noise_spec_from_json(sj.at("noise"));
    }
    if (sj.contains("seeds")) cfg.seeds = sj.at("seeds").get<std::vector<std::uint64_t>>();
    if (sj.contains("mode")) cfg.mode = mode_from_string(sj.at("mode").get<std::string>());
    cfg.samples = sj.value("samples", cfg.samples);
    if (sj.contains("optimizer")) cfg.optimizer = optimizer_config_from_json(sj.at("optimizer"));
    cfg.validate();
    return cfg;
}

PointRunConfig point_run_config_from_json(const json& doc) {
    reject_unknown_keys(doc,
                        {"model", "noise", "theta", "mode", "samples", "evaluator_seed",
                         "requested_precision"},
                        "run config");
    PointRunConfig cfg;
    cfg.model = toy_model_spec_from_json(doc.at("model"));
    cfg.noise = noise_spec_from_json(doc.at("noise"));
    if (doc.contains("theta")) {
        const json& tj = doc.at("theta");
        if (tj.is_string()) {
            if (tj.get<std::string>() != "optimum")
                throw config_error("theta: expected 'optimum' or an angle list");
            cfg.theta_is_optimum = true;
        } else {
            cfg.theta = tj.get<std::vector<double>>();
            cfg.theta_is_optimum = false;
        }
    }
    if (doc.contains("mode")) cfg.mode = mode_from_string(doc.at("mode").get<std::string>());
    cfg.samples = doc.value("samples", cfg.samples);
    cfg.evaluator_seed = doc.value("evaluator_seed", cfg.evaluator_seed);
    if (doc.contains("requested_precision"))
        cfg.requested_precision = doc.at("requested_precision").get<double>();
    return cfg;
}

} // namespace vqnoise
