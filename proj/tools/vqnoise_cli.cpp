// Command-line driver: channel verification suites, toy-model sweeps,
// bound prediction, and the mitigation demo.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "vqnoise/bounds.hpp"
#include "vqnoise/circuit_io.hpp"
#include "vqnoise/config.hpp"
#include "vqnoise/errors.hpp"
#include "vqnoise/mitigation.hpp"
#include "vqnoise/optimize.hpp"
#include "vqnoise/rng.hpp"
#include "vqnoise/sweep.hpp"
#include "vqnoise/toymodel.hpp"

namespace {

using namespace vqnoise;

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitUsage = 2;

struct ChannelSuiteResult {
    std::string name;
    double max_deviation = 0.0;
    bool passed = false;
};

ChannelSuiteResult equivalence_suite(int cases, double tolerance) {
    ChannelSuiteResult res{"stochastic-gaussian equivalence", 0.0, false};
    auto engine = make_engine(20240201);
    std::uniform_real_distribution<double> prob(0.0, 0.45);
    std::uniform_int_distribution<int> karg(1, 2);
    std::uniform_int_distribution<int> letter(0, 2);
    static const char kAxes[3] = {'X', 'Y', 'Z'};
    for (int c = 0; c < cases; ++c) {
        const int k = karg(engine);
        std::string letters;
        for (int q = 0; q < k; ++q) letters.push_back(kAxes[letter(engine)]);
        const PauliString g = PauliString::from_letters(letters);
        const double p = prob(engine);
        const auto dev = ptm(GaussianRotationChannel(g, variance_of_stochastic(p)))
                             .max_abs_diff(ptm(StochasticPauliChannel(g, p)));
        res.max_deviation = std::max(res.max_deviation, dev);
    }
    res.passed = res.max_deviation < tolerance;
    return res;
}

ChannelSuiteResult lemma1_suite(int k, double tolerance, double variance_error) {
    ChannelSuiteResult res{"lemma-1 decomposition k=" + std::to_string(k), 0.0, false};
    std::vector<int> targets(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) targets[static_cast<std::size_t>(t)] = t;
    for (double q : {1e-4, 1e-2, 0.1}) {
        const DepolarizingChannel dep(targets, q);
        std::vector<PauliTransferMatrix> factors;
        for (auto ch : decompose_depolarizing(dep)) {
            ch.sigma2 *= 1.0 + variance_error;
            factors.push_back(ptm(ch));
        }
        res.max_deviation =
            std::max(res.max_deviation, ptm_compose(factors).max_abs_diff(ptm(dep)));
    }
    res.passed = res.max_deviation < tolerance;
    return res;
}

int cmd_verify_channels(int cases, bool inject_error) {
    constexpr double tolerance = 1e-10;
    const double injected = inject_error ? 1e-2 : 0.0;
    const std::vector<ChannelSuiteResult> suites = {
        equivalence_suite(cases, tolerance),
        lemma1_suite(1, tolerance, injected),
        lemma1_suite(2, tolerance, injected),
    };
    bool all_passed = true;
    for (const auto& s : suites) {
        std::printf("[%s] %-38s max deviation %.3e (tolerance %.0e)\n",
                    s.passed ? "PASS" : "FAIL", s.name.c_str(), s.max_deviation, tolerance);
        all_passed = all_passed && s.passed;
    }
    return all_passed ? kExitOk : kExitSuiteFailure;
}

struct CommonOverrides {
    std::optional<std::string> mode;
    std::optional<std::int64_t> samples;
    std::optional<std::uint64_t> seed;
};

void apply_overrides(PointRunConfig& cfg, const CommonOverrides& o) {
    if (o.mode) cfg.mode = (*o.mode == "trajectory") ? EvalMode::Trajectory : EvalMode::Exact;
    if (o.samples) cfg.samples = *o.samples;
    if (o.seed) cfg.evaluator_seed = *o.seed;
}

// Shared setup for predict / mitigate-demo: model, noise, evaluator, theta.
struct PointRun {
    ToyModel model;
    NoisyCircuit nc;
    std::unique_ptr<NoisyEvaluator> evaluator;
    std::vector<double> theta;
};

PointRun make_point_run(const PointRunConfig& cfg) {
    PointRun run;
    run.model = build_toy_model(cfg.model);
    run.nc = insert_noise(run.model.ansatz, cfg.noise);
    run.evaluator = std::make_unique<NoisyEvaluator>(run.model.cost, run.nc.registry);
    run.evaluator->mode = cfg.mode;
    run.evaluator->samples = cfg.samples;
    run.evaluator->seed = cfg.evaluator_seed;
    if (cfg.theta_is_optimum) {
        run.theta = run.model.theta_opt;
    } else {
        if (static_cast<int>(cfg.theta.size()) != run.model.ansatz.num_params)
            throw config_error("theta: expected " +
                               std::to_string(run.model.ansatz.num_params) + " angles");
        run.theta = cfg.theta;
    }
    return run;
}

void emit(const nlohmann::json& doc, const std::optional<std::string>& out_dir,
          const std::string& stem) {
    std::cout << doc.dump(2) << "\n";
    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        std::ofstream f(std::filesystem::path(*out_dir) / (stem + ".json"));
        f << doc.dump(2) << "\n";
    }
}

int cmd_predict(const std::optional<std::string>& config_path, bool scaling, double r, double n,
                double gates, double eps, const CommonOverrides& overrides,
                const std::optional<std::string>& out_dir) {
    if (scaling) {
        const auto s = scaling_helpers(n, gates, r, eps);
        nlohmann::json doc{
            {"note", "order-of-magnitude estimates, constant factors fixed to 1"},
            {"inputs", {{"r", r}, {"n", n}, {"M", gates}, {"eps", eps}}},
            {"sufficient_q", {{"value", s.sufficient_q}, {"order", s.sufficient_str}}},
            {"sufficient_q_with_mitigation",
             {{"value", s.mitigated_q}, {"order", s.mitigated_str}}},
            {"necessary_q", {{"value", s.necessary_q}, {"order", s.necessary_str}}}};
        emit(doc, out_dir, "scaling");
        return kExitOk;
    }
    if (!config_path) throw config_error("predict: need --config or --scaling");
    PointRunConfig cfg = point_run_config_from_json(load_json_file(*config_path));
    apply_overrides(cfg, overrides);
    PointRun run = make_point_run(cfg);
    const BoundReport report =
        build_bound_report(*run.evaluator, run.theta, run.model.spectrum);
    nlohmann::json doc = report.to_json();
    doc["model"] = toy_model_spec_to_json(cfg.model);
    doc["noise"] = noise_spec_to_json(cfg.noise);
    emit(doc, out_dir, "predict");
    return kExitOk;
}

int cmd_mitigate_demo(const std::string& config_path, const CommonOverrides& overrides,
                      const std::optional<std::string>& out_dir) {
    PointRunConfig cfg = point_run_config_from_json(load_json_file(config_path));
    apply_overrides(cfg, overrides);
    PointRun run = make_point_run(cfg);

    MitigationOptions options;
    options.spectrum = run.model.spectrum;
    options.requested_precision = cfg.requested_precision;
    const MitigationReport report = mitigate(*run.evaluator, run.theta, options);

    nlohmann::json doc = report.to_json();
    doc["model"] = toy_model_spec_to_json(cfg.model);
    doc["noise"] = noise_spec_to_json(cfg.noise);
    doc["noiseless_cost"] = eval_cost(run.model.cost, run.theta);
    emit(doc, out_dir, "mitigate");
    if (out_dir) {
        std::ofstream csv(std::filesystem::path(*out_dir) / "mitigate_terms.csv");
        csv << report.contributions_csv();
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              const CommonOverrides& overrides) {
    const nlohmann::json doc = load_json_file(config_path);
    const ToyModelSpec spec = sweep_model_from_json(doc);
    SweepConfig cfg = sweep_config_from_json(doc);
    if (overrides.mode)
        cfg.mode = (*overrides.mode == "trajectory") ? EvalMode::Trajectory : EvalMode::Exact;
    if (overrides.samples) cfg.samples = *overrides.samples;
    if (overrides.seed) cfg.optimizer.seed = *overrides.seed;

    const RunRecord record = run_sweep(spec, cfg);
    const bool rate = cfg.variable == SweepConfig::Variable::ErrorRate;
    write_run_record(record, out_dir, rate ? "rate_sweep" : "gap_sweep");

    int failures = 0;
    for (const SweepPoint& p : record.points) {
        if (p.failed) {
            std::printf("point value=%.3g seed=%llu FAILED: %s\n", p.sweep_value,
                        static_cast<unsigned long long>(p.seed), p.error.c_str());
            ++failures;
            continue;
        }
        std::printf("value=%.3g seed=%llu eps=%.6g in [%.6g, %.6g] R1=%.4g evals=%ld\n",
                    p.sweep_value, static_cast<unsigned long long>(p.seed), p.epsilon,
                    p.rough_lower, p.rough_upper, p.r1, p.evals);
    }
    if (!rate) {
        std::printf("gap-vs-error Spearman correlation: %.3f\n",
                    sweep_epsilon_correlation(record));
    }
    std::printf("artifacts written to %s\n", out_dir.c_str());
    return failures == 0 ? kExitOk : kExitSuiteFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"noise-precision analysis toolkit for variational quantum circuits"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap OpenMP worker count");

    CommonOverrides overrides;
    std::optional<std::string> mode;
    std::optional<std::int64_t> samples;
    std::optional<std::uint64_t> seed;

    auto* verify = app.add_subcommand("verify-channels", "run the channel-algebra suites");
    int cases = 200;
    bool inject = false;
    verify->add_option("--cases", cases, "random equivalence cases");
    verify->add_flag("--inject-variance-error", inject,
                     "perturb the decomposition variance (forces failure)");

    auto* sweep = app.add_subcommand("sweep", "run a rate or gap sweep from a config");
    std::string sweep_config, sweep_out = "out";
    sweep->add_option("--config", sweep_config, "sweep config JSON")->required();
    sweep->add_option("--out", sweep_out, "output directory");

    auto* predict = app.add_subcommand("predict", "bound report or scaling estimates");
    std::optional<std::string> predict_config;
    std::optional<std::string> predict_out;
    bool scaling = false;
    double opt_r = 1.0, opt_n = 100.0, opt_gates = 100.0, opt_eps = 1e-3;
    predict->add_option("--config", predict_config, "point config JSON");
    predict->add_flag("--scaling", scaling, "emit the order-of-magnitude noise levels");
    predict->add_option("--r", opt_r, "spectral-width exponent (width ~ n^r)");
    predict->add_option("--n", opt_n, "qubit count");
    predict->add_option("--gates", opt_gates, "parameterized gate count M");
    predict->add_option("--eps", opt_eps, "target precision");
    predict->add_option("--out", predict_out, "output directory");

    auto* mit = app.add_subcommand("mitigate-demo", "run the pi-shift mitigation once");
    std::string mit_config;
    std::optional<std::string> mit_out;
    mit->add_option("--config", mit_config, "point config JSON")->required();
    mit->add_option("--out", mit_out, "output directory");

    for (auto* sub : {sweep, predict, mit}) {
        sub->add_option("--mode", mode, "exact or trajectory")
            ->check(CLI::IsMember({"exact", "trajectory"}));
        sub->add_option("--samples", samples, "trajectory sample count");
        sub->add_option("--seed", seed, "evaluator / optimizer seed");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints usage / error text
        return kExitUsage;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
    overrides.mode = mode;
    overrides.samples = samples;
    overrides.seed = seed;

    try {
        if (verify->parsed()) return cmd_verify_channels(cases, inject);
        if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out, overrides);
        if (predict->parsed())
            return cmd_predict(predict_config, scaling, opt_r, opt_n, opt_gates, opt_eps,
                               overrides, predict_out);
        if (mit->parsed()) return cmd_mitigate_demo(mit_config, overrides, mit_out);
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSuiteFailure;
    }
    return kExitUsage;
}
