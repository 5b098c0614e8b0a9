#include "vqnoise/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "vqnoise/rng.hpp"
#include "vqnoise/stats.hpp"
#include "vqnoise/svg.hpp"

namespace vqnoise {

void SweepConfig::validate() const {
    if (values.empty()) throw std::invalid_argument("sweep: empty value list");
    for (double v : values)
        if (v <= 0.0) throw std::invalid_argument("sweep: values must be positive");
    if (!std::is_sorted(values.begin(), values.end()))
        throw std::invalid_argument("sweep: values must be ascending");
    if (seeds.empty()) throw std::invalid_argument("sweep: no repetition seeds");
}

namespace {

const char* variable_name(SweepConfig::Variable v) {
    return v == SweepConfig::Variable::ErrorRate ? "error_rate" : "gap";
}

SweepPoint run_point(const ToyModelSpec& base_spec, const SweepConfig& config,
                     std::size_t value_index, std::uint64_t seed) {
    const double value = config.values[value_index];
    SweepPoint point;
    point.sweep_value = value;
    point.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();

    // Every random input of the point keyed by (seed, value index).
    const std::uint64_t key = substream_seed(seed, value_index);
    ToyModelSpec spec = base_spec;
    spec.circuit_seed = substream_seed(base_spec.circuit_seed, key);
    spec.spectrum_seed = substream_seed(base_spec.spectrum_seed, key);
    spec.theta_opt_seed = substream_seed(base_spec.theta_opt_seed, key);

    NoiseSpec noise = config.fixed_noise;
    if (config.variable == SweepConfig::Variable::ErrorRate)
        noise = NoiseSpec::direct(value * config.q1_factor, value * config.q2_factor,
                                  value * config.q_readout_factor);
    else
        spec.e1 = spec.e0 + value;

    ToyModel model = build_toy_model(spec);
    NoisyCircuit nc = insert_noise(model.ansatz, noise);
    NoisyEvaluator evaluator(model.cost, nc.registry);
    evaluator.mode = config.mode;
    evaluator.samples = config.samples;
    evaluator.seed = substream_seed(key, 0x72616a65);

    OptimizerConfig opt = config.optimizer;
    opt.seed = substream_seed(opt.seed ^ key, 0x6f707469);
    const OptimizeResult result = optimize(evaluator, opt);

    point.c_noisy_opt = evaluator.evaluate(result.theta).value;
    point.c_noiseless_opt = eval_cost(model.cost, result.theta);
    point.epsilon = point.c_noisy_opt - point.c_noiseless_opt;
    point.evals = evaluator.eval_count();

    const auto variances = collect_slot_variances(nc);
    point.total_sigma2 = variances.total();
    const auto rough = rough_bounds(model.spectrum, point.total_sigma2);
    point.rough_lower = rough.lower;
    point.rough_upper = rough.upper;
    const auto rel = relative_errors(point.c_noisy_opt, model.spectrum);
    point.r1 = rel.r1;
    point.rmax = rel.rmax;
    const auto le =
        leading_error(model.cost, nc.registry, result.theta, variances, model.spectrum);
    point.thm1_leading = le.leading;
    point.thm1_remainder = le.remainder_bound;

    point.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    return point;
}

} // namespace

RunRecord run_sweep(const ToyModelSpec& base_spec, const SweepConfig& config) {
    base_spec.validate();
    config.validate();

    RunRecord record;
    record.base_spec = base_spec;
    record.config = config;
    for (std::size_t vi = 0; vi < config.values.size(); ++vi) {
        for (std::uint64_t seed : config.seeds) {
            try {
                record.points.push_back(run_point(base_spec, config, vi, seed));
            } catch (const std::exception& e) {
                SweepPoint failed;
                failed.sweep_value = config.values[vi];
                failed.seed = seed;
                failed.failed = true;
                failed.error = e.what();
                record.points.push_back(std::move(failed));
            }
        }
    }
    return record;
}

nlohmann::json RunRecord::to_json() const {
    nlohmann::json spec_json{{"n", base_spec.n},
                             {"depth", base_spec.depth},
                             {"e0", base_spec.e0},
                             {"e1", base_spec.e1},
                             {"emax", base_spec.emax},
                             {"circuit_seed", base_spec.circuit_seed},
                             {"spectrum_seed", base_spec.spectrum_seed},
                             {"theta_opt_seed", base_spec.theta_opt_seed}};
    nlohmann::json config_json{
        {"variable", variable_name(config.variable)},
        {"values", config.values},
        {"ratios",
         {{"q1", config.q1_factor}, {"q2", config.q2_factor}, {"q_readout", config.q_readout_factor}}},
        {"fixed_noise",
         {{"q1", config.fixed_noise.q1},
          {"q2", config.fixed_noise.q2},
          {"q_readout", config.fixed_noise.q_readout}}},
        {"mode", config.mode == EvalMode::Exact ? "exact" : "trajectory"},
        {"samples", config.samples},
        {"optimizer",
         {{"restarts", config.optimizer.restarts},
          {"max_iterations", config.optimizer.max_iterations},
          {"grad_tol", config.optimizer.grad_tol},
          {"seed", config.optimizer.seed},
          {"init_low", config.optimizer.init_low},
          {"init_high", config.optimizer.init_high}}},
        {"seeds", config.seeds}};

    nlohmann::json points_json = nlohmann::json::array();
    for (const SweepPoint& p : points) {
        nlohmann::json pj{{"sweep_value", p.sweep_value}, {"seed", p.seed}, {"failed", p.failed}};
        if (p.failed) {
            pj["error"] = p.error;
        } else {
            pj["epsilon"] = p.epsilon;
            pj["r1"] = p.r1;
            pj["rmax"] = p.rmax;
            pj["rough_lower"] = p.rough_lower;
            pj["rough_upper"] = p.rough_upper;
            pj["thm1_leading"] = p.thm1_leading;
            pj["thm1_remainder"] = p.thm1_remainder;
            pj["c_noisy_opt"] = p.c_noisy_opt;
            pj["c_noiseless_opt"] = p.c_noiseless_opt;
            pj["evals"] = p.evals;
            pj["wall_ms"] = p.wall_ms;
            pj["total_sigma2"] = p.total_sigma2;
        }
        points_json.push_back(std::move(pj));
    }
    return nlohmann::json{
        {"model", std::move(spec_json)},
        {"sweep", std::move(config_json)},
        {"points", std::move(points_json)},
    };
}

std::string run_record_csv(const RunRecord& record, bool include_wall) {
    std::string out = "sweep_value,seed,epsilon,R1,Rmax,rough_lower,rough_upper,thm1_leading,"
                      "thm1_remainder,C_noisy_opt,C_noiseless_opt,evals";
    if (include_wall) out += ",wall_ms";
    out += "\n";
    char buf[512];
    for (const SweepPoint& p : record.points) {
        if (p.failed) {
            std::snprintf(buf, sizeof(buf), "%.17g,%llu,nan,nan,nan,nan,nan,nan,nan,nan,nan,0",
                          p.sweep_value, static_cast<unsigned long long>(p.seed));
            out += buf;
            if (include_wall) out += ",nan";
            out += "\n";
            continue;
        }
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%ld",
                      p.sweep_value, static_cast<unsigned long long>(p.seed), p.epsilon, p.r1,
                      p.rmax, p.rough_lower, p.rough_upper, p.thm1_leading, p.thm1_remainder,
                      p.c_noisy_opt, p.c_noiseless_opt, p.evals);
        out += buf;
        if (include_wall) {
            std::snprintf(buf, sizeof(buf), ",%.6g", p.wall_ms);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

double sweep_epsilon_correlation(const RunRecord& record) {
    std::map<double, std::vector<double>> grouped;
    for (const SweepPoint& p : record.points)
        if (!p.failed) grouped[p.sweep_value].push_back(p.epsilon);
    std::vector<double> xs, ys;
    for (const auto& [value, eps] : grouped) {
        xs.push_back(value);
        ys.push_back(mean(eps));
    }
    return spearman(xs, ys);
}

void write_run_record(const RunRecord& record, const std::string& out_dir,
                      const std::string& stem) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path base = fs::path(out_dir) / stem;

    std::ofstream csv(base.string() + ".csv");
    if (!csv) throw std::runtime_error("sweep: cannot write " + base.string() + ".csv");
    csv << run_record_csv(record);

    std::ofstream js(base.string() + ".json");
    if (!js) throw std::runtime_error("sweep: cannot write " + base.string() + ".json");
    js << record.to_json().dump(2) << "\n";

    // Mean epsilon per value against the rough bounds.
    std::map<double, std::vector<double>> grouped;
    std::map<double, std::pair<double, double>> bounds;
    for (const SweepPoint& p : record.points) {
        if (p.failed) continue;
        grouped[p.sweep_value].push_back(p.epsilon);
        bounds[p.sweep_value] = {p.rough_lower, p.rough_upper};
    }
    SvgChart chart;
    const bool rate = record.config.variable == SweepConfig::Variable::ErrorRate;
    chart.title = rate ? "Optimized error vs error rate" : "Optimized error vs spectral gap";
    chart.x_label = rate ? "error rate q" : "gap E1 - E0";
    chart.y_label = "epsilon(theta*)";
    chart.log_x = rate;
    chart.log_y = rate;
    SvgSeries eps{"measured error", "#d62728", false, true, {}};
    SvgSeries lo{"rough lower", "#1f77b4", true, false, {}};
    SvgSeries hi{"rough upper", "#2ca02c", true, false, {}};
    for (const auto& [v, es] : grouped) {
        eps.points.emplace_back(v, mean(es));
        lo.points.emplace_back(v, bounds[v].first);
        hi.points.emplace_back(v, bounds[v].second);
    }
    chart.series = {eps, lo, hi};
    write_svg(chart, base.string() + ".svg");
}

} // namespace vqnoise
