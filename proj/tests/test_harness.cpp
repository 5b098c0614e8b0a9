#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "support/oracles.hpp"

#include "vqnoise/errors.hpp"
#include "vqnoise/optimize.hpp"
#include "vqnoise/rng.hpp"
#include "vqnoise/sweep.hpp"
#include "vqnoise/toymodel.hpp"

using namespace vqnoise;

TEST_CASE("build_ansatz layout") {
    SUBCASE("n=4 d=2: 8 parameters, 8 rotations, 6 CZ") {
        const Circuit c = build_ansatz(4, 2, 3);
        CHECK(c.num_params == 8);
        int rotations = 0, czs = 0;
        for (const Gate& g : c.gates) {
            if (const auto* rot = std::get_if<RotationGate>(&g)) {
                CHECK(rot->generator.weight() == 1);
                const char l = rot->generator.letter(
                    Circuit::gate_support(g, 4).front());
                CHECK((l == 'X' || l == 'Y' || l == 'Z'));
                ++rotations;
            } else {
                CHECK(std::get<FixedGate>(g).kind == FixedGate::Kind::CZ);
                ++czs;
            }
        }
        CHECK(rotations == 8);
        CHECK(czs == 6);
    }
    SUBCASE("smallest case: n=2 d=1") {
        const Circuit c = build_ansatz(2, 1, 3);
        CHECK(c.num_params == 2);
        CHECK(c.gates.size() == 3);
    }
    SUBCASE("seed-deterministic axis choices") {
        const Circuit a = build_ansatz(4, 3, 42);
        const Circuit b = build_ansatz(4, 3, 42);
        const Circuit other = build_ansatz(4, 3, 43);
        REQUIRE(a.gates.size() == b.gates.size());
        bool any_difference = false;
        for (std::size_t i = 0; i < a.gates.size(); ++i) {
            const auto* ra = std::get_if<RotationGate>(&a.gates[i]);
            const auto* rb = std::get_if<RotationGate>(&b.gates[i]);
            const auto* rc = std::get_if<RotationGate>(&other.gates[i]);
            if (!ra) continue;
            CHECK(ra->generator == rb->generator);
            if (!(ra->generator == rc->generator)) any_difference = true;
        }
        CHECK(any_difference);
    }
    SUBCASE("CZ chain is linear without wrap") {
        const Circuit c = build_ansatz(5, 1, 9);
        std::vector<std::pair<int, int>> pairs;
        for (const Gate& g : c.gates)
            if (const auto* fg = std::get_if<FixedGate>(&g))
                pairs.emplace_back(fg->qubits[0], fg->qubits[1]);
        REQUIRE(pairs.size() == 4);
        for (int i = 0; i < 4; ++i) {
            CHECK(pairs[static_cast<std::size_t>(i)].first == i);
            CHECK(pairs[static_cast<std::size_t>(i)].second == i + 1);
        }
    }
}

TEST_CASE("build_toy_hamiltonian") {
    ToyModelSpec spec;
    spec.n = 3;
    const ToyModel model = build_toy_model(spec);

    SUBCASE("cost at theta_opt is exactly E0") {
        CHECK(std::abs(eval_cost(model.cost, model.theta_opt) - spec.e0) < 1e-12);
        const auto f = fidelity_bounds(spec.e0, model.spectrum);
        CHECK(f.lower == 0.0);
        CHECK(f.upper == 0.0);
    }
    SUBCASE("artificial eigenstates are orthonormal") {
        std::vector<StateVector> eigenstates;
        for (std::uint64_t i = 0; i < dim_of(3); ++i)
            eigenstates.push_back(
                run_circuit(model.ansatz, model.theta_opt, StateVector::basis(3, i)));
        for (std::size_t i = 0; i < eigenstates.size(); ++i)
            for (std::size_t j = 0; j < eigenstates.size(); ++j) {
                const double expected = i == j ? 1.0 : 0.0;
                CHECK(std::abs(inner(eigenstates[i], eigenstates[j]) - expected) < 1e-12);
            }
    }
    SUBCASE("dense reconstruction has the drawn spectrum") {
        const auto& so = std::get<SpectralObservable>(model.hamiltonian);
        CHECK(so.eigenvalues.front() == spec.e0);
        CHECK(so.eigenvalues[1] == spec.e1);
        CHECK(so.eigenvalues.back() == spec.emax);
        CHECK(std::is_sorted(so.eigenvalues.begin(), so.eigenvalues.end()));
        for (std::size_t i = 2; i + 1 < so.eigenvalues.size(); ++i) {
            CHECK(so.eigenvalues[i] > spec.e1);
            CHECK(so.eigenvalues[i] < spec.emax);
        }

        const Matrix v = ref::circuit_matrix(so.diagonalizer, so.diagonalizer_params);
        Matrix h(v.dim());
        for (std::size_t i = 0; i < v.dim(); ++i) h(i, i) = so.eigenvalues[i];
        h = v * h * v.adjoint();
        const auto es = test::jacobi_eigensystem(h);
        for (std::size_t i = 0; i < es.values.size(); ++i)
            CHECK(std::abs(es.values[i] - so.eigenvalues[i]) < 1e-10);
    }
    SUBCASE("invalid specs are rejected") {
        ToyModelSpec bad = spec;
        bad.e1 = bad.e0;
        CHECK_THROWS_AS(build_toy_model(bad), std::invalid_argument);
        bad = spec;
        bad.n = 1;
        CHECK_THROWS_AS(build_toy_model(bad), std::invalid_argument);
    }
}

TEST_CASE("optimizer") {
    SUBCASE("one-parameter cosine reaches the minimum at pi") {
        CostFunction cf;
        cf.circuit.num_qubits = 1;
        cf.circuit.add_rotation(PauliString::single(1, 0, 'X'));
        cf.terms.push_back(
            {make_dense_observable(Matrix(2, {1.0, 0.0, 0.0, -1.0})), StateVector::basis(1, 0)});
        OptimizerConfig cfg;
        cfg.restarts = 1;
        cfg.init_low = 1.0;
        cfg.init_high = 1.0; // start exactly at theta = 1
        const OptimizeResult res = optimize(cf, cfg);
        CHECK(res.converged);
        CHECK(std::abs(std::remainder(res.theta[0], 2.0 * kPi)) ==
              doctest::Approx(kPi).epsilon(1e-6));
        CHECK(res.value == doctest::Approx(-1.0).epsilon(1e-9));
    }
    SUBCASE("noiseless toy model reaches E0 on at least 90% of seeds") {
        int hits = 0;
        const int seeds = 20;
        for (int s = 0; s < seeds; ++s) {
            ToyModelSpec spec;
            spec.circuit_seed = 500 + static_cast<std::uint64_t>(s);
            spec.spectrum_seed = 600 + static_cast<std::uint64_t>(s);
            spec.theta_opt_seed = 700 + static_cast<std::uint64_t>(s);
            const ToyModel model = build_toy_model(spec);
            OptimizerConfig cfg;
            cfg.restarts = 5;
            cfg.seed = static_cast<std::uint64_t>(s);
            const OptimizeResult res = optimize(model.cost, cfg);
            if (res.value - spec.e0 <= 1e-6) ++hits;
        }
        CHECK(hits >= 18);
    }
    SUBCASE("noisy exact-channel optimization converges within the cap") {
        const ToyModel model = build_toy_model(ToyModelSpec{});
        const NoisyCircuit nc = insert_noise(model.ansatz, NoiseSpec::direct(1e-4, 1e-3, 1e-3));
        NoisyEvaluator ev(model.cost, nc.registry);
        OptimizerConfig cfg;
        cfg.restarts = 2;
        cfg.grad_tol = 1e-5;
        const OptimizeResult res = optimize(ev, cfg);
        CHECK(res.converged);
        CHECK(res.iterations < 500);
        CHECK(res.grad_norm < 1e-5);
    }
    SUBCASE("non-finite cost raises") {
        auto bad_cost = [](std::span<const double>) {
            return std::numeric_limits<double>::quiet_NaN();
        };
        auto bad_grad = [](std::span<const double> t) {
            return std::vector<double>(t.size(), 0.0);
        };
        OptimizerConfig cfg;
        cfg.restarts = 1;
        CHECK_THROWS_AS(minimize(bad_cost, bad_grad, 2, cfg), nonfinite_cost_error);
    }
}

TEST_CASE("run_sweep") {
    ToyModelSpec spec;
    SweepConfig cfg;
    cfg.variable = SweepConfig::Variable::ErrorRate;
    cfg.values = {3e-4, 1e-3};
    cfg.seeds = {0};
    cfg.optimizer.restarts = 2;
    cfg.optimizer.max_iterations = 300;

    SUBCASE("config validation") {
        SweepConfig bad = cfg;
        bad.values = {1e-3, 3e-4};
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = cfg;
        bad.values = {0.0, 1e-3};
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = cfg;
        bad.seeds.clear();
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }
    SUBCASE("rate sweep points carry bounds and reproduce bit-exactly") {
        const RunRecord first = run_sweep(spec, cfg);
        REQUIRE(first.points.size() == 2);
        for (const SweepPoint& p : first.points) {
            REQUIRE(!p.failed);
            CHECK(p.epsilon > 0.0);
            CHECK(p.rough_lower < p.rough_upper);
            CHECK(p.evals > 0);
            CHECK(p.total_sigma2 > 0.0);
            CHECK(p.r1 >= p.rmax);
        }
        // epsilon grows with the rate on this instance
        CHECK(first.points[0].epsilon < first.points[1].epsilon);

        const RunRecord second = run_sweep(spec, cfg);
        CHECK(run_record_csv(first, false) == run_record_csv(second, false));
    }
    SUBCASE("zero fixed noise in a gap sweep gives epsilon ~ 0") {
        SweepConfig gap;
        gap.variable = SweepConfig::Variable::Gap;
        gap.values = {50.0};
        gap.seeds = {0};
        gap.fixed_noise = NoiseSpec{};
        gap.optimizer.restarts = 3;
        const RunRecord record = run_sweep(spec, gap);
        REQUIRE(record.points.size() == 1);
        REQUIRE(!record.points[0].failed);
        CHECK(std::abs(record.points[0].epsilon) < 1e-6);
    }
    SUBCASE("per-point failures are recorded and the sweep continues") {
        SweepConfig failing = cfg;
        failing.optimizer.restarts = 0; // invalid, throws inside the point
        const RunRecord record = run_sweep(spec, failing);
        REQUIRE(record.points.size() == 2);
        for (const SweepPoint& p : record.points) {
            CHECK(p.failed);
            CHECK(!p.error.empty());
        }
    }
    SUBCASE("csv header is pinned") {
        const RunRecord record = run_sweep(spec, cfg);
        const std::string csv = run_record_csv(record);
        CHECK(csv.rfind("sweep_value,seed,epsilon,R1,Rmax,rough_lower,rough_upper,thm1_leading,"
                        "thm1_remainder,C_noisy_opt,C_noiseless_opt,evals,wall_ms\n",
                        0) == 0);
        // one row per (value, seed)
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    }
    SUBCASE("artifacts land on disk") {
        namespace fs = std::filesystem;
        const RunRecord record = run_sweep(spec, cfg);
        const std::string dir = (fs::temp_directory_path() / "vqnoise_sweep_test").string();
        fs::remove_all(dir);
        write_run_record(record, dir, "rate");
        CHECK(fs::exists(fs::path(dir) / "rate.csv"));
        CHECK(fs::exists(fs::path(dir) / "rate.json"));
        CHECK(fs::exists(fs::path(dir) / "rate.svg"));
        std::ifstream svg(fs::path(dir) / "rate.svg");
        std::string body((std::istreambuf_iterator<char>(svg)), {});
        CHECK(body.find("<svg") != std::string::npos);
        CHECK(body.find("rough upper") != std::string::npos);
        fs::remove_all(dir);
    }
}

TEST_CASE("gap sweep correlation helper") {
    ToyModelSpec spec;
    SweepConfig gap;
    gap.variable = SweepConfig::Variable::Gap;
    gap.values = {5.0, 80.0};
    gap.seeds = {1};
    gap.fixed_noise = NoiseSpec::direct(1e-4, 1e-3, 1e-3);
    gap.optimizer.restarts = 2;
    const RunRecord record = run_sweep(spec, gap);
    REQUIRE(record.points.size() == 2);
    const double corr = sweep_epsilon_correlation(record);
    CHECK(corr >= -1.0);
    CHECK(corr <= 1.0);
}
