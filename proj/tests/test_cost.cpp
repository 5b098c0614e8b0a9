#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "support/oracles.hpp"

#include "vqnoise/cost.hpp"
#include "vqnoise/errors.hpp"
#include "vqnoise/rng.hpp"
#include "vqnoise/toymodel.hpp"

using namespace vqnoise;

namespace {

Observable pauli_z() { return make_dense_observable(Matrix(2, {1.0, 0.0, 0.0, -1.0})); }
Observable pauli_x() { return make_dense_observable(Matrix(2, {0.0, 1.0, 1.0, 0.0})); }

// C(theta) = cos(theta): RX(theta) on |0>, measured in Z.
CostFunction cosine_cost() {
    CostFunction cf;
    cf.circuit.num_qubits = 1;
    cf.circuit.add_rotation(PauliString::single(1, 0, 'X'));
    cf.terms.push_back({pauli_z(), StateVector::basis(1, 0)});
    return cf;
}

} // namespace

TEST_CASE("eval_cost basics") {
    SUBCASE("toy model at theta_opt hits E0 exactly") {
        const ToyModel model = build_toy_model(ToyModelSpec{});
        CHECK(std::abs(eval_cost(model.cost, model.theta_opt) - model.spec.e0) < 1e-12);
    }
    SUBCASE("RZ on |+> measured in X gives cos(theta)") {
        CostFunction cf;
        cf.circuit.num_qubits = 1;
        cf.circuit.add_rotation(PauliString::single(1, 0, 'Z'));
        StateVector plus(1);
        plus.amps = {cplx{1 / std::sqrt(2.0), 0}, cplx{1 / std::sqrt(2.0), 0}};
        cf.terms.push_back({pauli_x(), plus});
        for (double t : {0.0, 0.7, 2.2}) {
            const std::vector<double> theta{t};
            CHECK(eval_cost(cf, theta) == doctest::Approx(std::cos(t)).epsilon(1e-12));
        }
    }
    SUBCASE("duplicate terms double the value") {
        CostFunction cf = cosine_cost();
        cf.terms.push_back(cf.terms[0]);
        const std::vector<double> theta{0.9};
        CHECK(eval_cost(cf, theta) == doctest::Approx(2.0 * std::cos(0.9)).epsilon(1e-12));
    }
    SUBCASE("wrong parameter count is rejected") {
        CHECK_THROWS_AS(eval_cost(cosine_cost(), {}), std::invalid_argument);
    }
    SUBCASE("cost stays within the spectrum over random parameters") {
        auto engine = make_engine(41);
        const auto inst = test::random_instance(engine, 3, 6, -1.0, 0.5, 4.0);
        for (int t = 0; t < 100; ++t) {
            const auto theta = test::random_angles(engine, inst.cost.circuit.num_params);
            const double c = eval_cost(inst.cost, theta);
            CHECK(c >= inst.spectrum.e0 - 1e-12);
            CHECK(c <= inst.spectrum.emax + 1e-12);
        }
    }
}

TEST_CASE("noisy evaluation") {
    SUBCASE("zero noise equals the noiseless cost") {
        const ToyModel model = build_toy_model(ToyModelSpec{});
        NoisyEvaluator ev(model.cost, VirtualParameterRegistry{});
        auto engine = make_engine(42);
        const auto theta = test::random_angles(engine, model.ansatz.num_params);
        CHECK(std::abs(ev.evaluate(theta).value - eval_cost(model.cost, theta)) < 1e-12);
        CHECK(ev.evaluate(theta).std_error == 0.0);
    }
    SUBCASE("gaussian jitter on RX: C_noisy = exp(-s2/2) cos(theta), exact") {
        CostFunction cf = cosine_cost();
        NoisyCircuit nc;
        nc.circuit = cf.circuit;
        add_parameter_noise(nc, 0, 0.3);
        NoisyEvaluator ev(cf, nc.registry);
        for (double t : {0.0, 0.6, 1.9}) {
            const std::vector<double> theta{t};
            CHECK(ev.evaluate(theta).value ==
                  doctest::Approx(std::exp(-0.15) * std::cos(t)).epsilon(1e-12));
        }
    }
    SUBCASE("trajectory mode agrees with exact mode within 4 standard errors") {
        const ToyModel model = build_toy_model(ToyModelSpec{});
        const NoisyCircuit nc =
            insert_noise(model.ansatz, NoiseSpec::direct(1e-3, 1e-2, 1e-2));
        auto engine = make_engine(43);
        const auto theta = test::random_angles(engine, model.ansatz.num_params);

        NoisyEvaluator exact(model.cost, nc.registry);
        const double truth = exact.evaluate(theta).value;

        NoisyEvaluator traj(model.cost, nc.registry);
        traj.mode = EvalMode::Trajectory;
        traj.samples = 100000;
        traj.seed = 7;
        const NoisyValue est = traj.evaluate(theta);
        CHECK(est.std_error > 0.0);
        CHECK(std::abs(est.value - truth) < 4.0 * est.std_error);
    }
    SUBCASE("trajectory estimates are reproducible and thread-count independent") {
        const ToyModel model = build_toy_model(ToyModelSpec{});
        const NoisyCircuit nc = insert_noise(model.ansatz, NoiseSpec::direct(1e-3, 1e-2, 1e-2));
        auto engine = make_engine(44);
        const auto theta = test::random_angles(engine, model.ansatz.num_params);
        NoisyEvaluator traj(model.cost, nc.registry);
        traj.mode = EvalMode::Trajectory;
        traj.samples = 20000;
        traj.seed = 11;
        const double first = traj.evaluate(theta).value;
        CHECK(traj.evaluate(theta).value == first);
#ifdef _OPENMP
        const int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        CHECK(traj.evaluate(theta).value == first);
        omp_set_num_threads(saved);
#endif
    }
    SUBCASE("exact mode respects the qubit cap") {
        const ToyModel model = build_toy_model(ToyModelSpec{});
        NoisyEvaluator ev(model.cost, VirtualParameterRegistry{});
        ev.qubit_cap = 2;
        auto engine = make_engine(45);
        const auto theta = test::random_angles(engine, model.ansatz.num_params);
        CHECK_THROWS_AS(ev.evaluate(theta), qubit_cap_exceeded);
    }
}

TEST_CASE("second derivatives via the pi-shift rule") {
    SUBCASE("cos(theta) at 0 gives -1") {
        const CostFunction cf = cosine_cost();
        const std::vector<double> theta{0.0};
        CHECK(second_derivative(cf, theta, 0) == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("matches the finite-difference oracle on 50 random circuits") {
        auto engine = make_engine(46);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 2 + trial % 3;
            const auto inst = test::random_instance(engine, n, 4 + trial % 5, 0.0, 1.0, 3.0);
            const auto theta = test::random_angles(engine, inst.cost.circuit.num_params);
            std::uniform_int_distribution<int> slot_dist(0, inst.cost.circuit.num_params - 1);
            const int slot = slot_dist(engine);

            const double exact = second_derivative(inst.cost, theta, slot);
            auto section = [&](double t) {
                std::vector<double> th(theta);
                th[static_cast<std::size_t>(slot)] = t;
                return eval_cost(inst.cost, th);
            };
            const double fd =
                test::fd_second_derivative(section, theta[static_cast<std::size_t>(slot)], 1e-3);
            CHECK(exact == doctest::Approx(fd).epsilon(1e-5));
        }
    }
    SUBCASE("virtual slot shift equals a manually inserted rotation") {
        auto engine = make_engine(47);
        const Circuit ansatz = build_ansatz(3, 2, 21);
        const NoisyCircuit nc = insert_noise(ansatz, NoiseSpec::direct(1e-3, 1e-2, 1e-3));
        CostFunction cf;
        cf.circuit = ansatz;
        const auto inst = test::random_instance(engine, 3, 1, 0.0, 1.0, 3.0);
        cf.terms = inst.cost.terms;
        const auto theta = test::random_angles(engine, ansatz.num_params);

        const int idx = 11;
        const double d2 = second_derivative(cf, nc.registry, theta, Slot::virt(idx));

        CostFunction manual = cf;
        manual.circuit.gates.clear();
        manual.circuit.num_params = ansatz.num_params;
        const auto& entry = nc.registry.entries[idx];
        for (std::size_t g = 0; g <= ansatz.gates.size(); ++g) {
            if (static_cast<int>(g) == entry.position) {
                // bake the pi rotation in as a fixed custom gate
                const Matrix u = ref::gate_matrix(RotationGate{entry.generator, 0}, 3,
                                                  std::vector<double>{kPi});
                manual.circuit.gates.push_back(make_custom({0, 1, 2}, u, "shift"));
            }
            if (g < ansatz.gates.size()) manual.circuit.gates.push_back(ansatz.gates[g]);
        }
        const double shifted = eval_cost(manual, theta);
        const double base = eval_cost(cf, theta);
        CHECK(d2 == doctest::Approx(0.5 * (shifted - base)).epsilon(1e-10));
    }
    SUBCASE("noisy variant h_i equals the pi-shift of the noisy cost") {
        const ToyModel model = build_toy_model(ToyModelSpec{});
        const NoisyCircuit nc = insert_noise(model.ansatz, NoiseSpec::direct(1e-3, 1e-2, 1e-2));
        NoisyEvaluator ev(model.cost, nc.registry);
        auto engine = make_engine(48);
        const auto theta = test::random_angles(engine, model.ansatz.num_params);
        const double base = ev.evaluate(theta).value;

        std::vector<double> shifted(theta);
        shifted[2] += kPi;
        CHECK(ev.noisy_second_derivative(theta, Slot::real(2), &base) ==
              doctest::Approx(0.5 * (ev.evaluate(shifted).value - base)).epsilon(1e-12));
    }
    SUBCASE("invalid index is rejected") {
        const CostFunction cf = cosine_cost();
        const std::vector<double> theta{0.0};
        CHECK_THROWS_AS(second_derivative(cf, theta, 1), std::invalid_argument);
    }
    SUBCASE("bounded by the spectral width") {
        auto engine = make_engine(49);
        const auto inst = test::random_instance(engine, 3, 6, -1.0, 0.0, 2.5);
        const double cap = inst.spectrum.total_term_width() / 2.0;
        for (int t = 0; t < 50; ++t) {
            const auto theta = test::random_angles(engine, inst.cost.circuit.num_params);
            std::uniform_int_distribution<int> slot_dist(0, inst.cost.circuit.num_params - 1);
            CHECK(std::abs(second_derivative(inst.cost, theta, slot_dist(engine))) <=
                  cap + 1e-10);
        }
    }
}

TEST_CASE("parameter-shift gradient") {
    const CostFunction cf = cosine_cost();
    SUBCASE("pinned sinusoid values") {
        std::vector<double> theta{0.0};
        CHECK(std::abs(gradient(cf, theta)[0]) < 1e-12);
        theta[0] = 0.5 * kPi;
        CHECK(gradient(cf, theta)[0] == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("matches finite differences on random circuits") {
        auto engine = make_engine(50);
        for (int trial = 0; trial < 20; ++trial) {
            const auto inst = test::random_instance(engine, 3, 5, 0.0, 1.0, 3.0);
            const auto theta = test::random_angles(engine, inst.cost.circuit.num_params);
            const auto g = gradient(inst.cost, theta);
            for (std::size_t i = 0; i < g.size(); ++i) {
                auto section = [&](double t) {
                    std::vector<double> th(theta);
                    th[i] = t;
                    return eval_cost(inst.cost, th);
                };
                const double h = 1e-5;
                const double fd = (section(theta[i] + h) - section(theta[i] - h)) / (2 * h);
                CHECK(std::abs(g[i] - fd) < 1e-6);
            }
        }
    }
}

TEST_CASE("fubini-study metric diagonal") {
    SUBCASE("single RX on |0> gives exactly 1/4") {
        const CostFunction cf = cosine_cost();
        for (double t : {0.0, 0.8, 2.4}) {
            const std::vector<double> theta{t};
            CHECK(fubini_diag(cf, theta, 0) == doctest::Approx(0.25).epsilon(1e-12));
        }
    }
    SUBCASE("bounded by 1/4 over 1000 random cases") {
        auto engine = make_engine(51);
        for (int trial = 0; trial < 1000; ++trial) {
            const int n = 2 + trial % 3;
            const auto inst = test::random_instance(engine, n, 4, 0.0, 1.0, 3.0);
            const auto theta = test::random_angles(engine, inst.cost.circuit.num_params);
            std::uniform_int_distribution<int> slot_dist(0, inst.cost.circuit.num_params - 1);
            const double g = fubini_diag(inst.cost, theta, slot_dist(engine));
            CHECK(g >= -1e-15);
            CHECK(g <= 0.25 + 1e-12);
        }
    }
    SUBCASE("matches the finite-difference overlap curvature") {
        auto engine = make_engine(52);
        for (int trial = 0; trial < 25; ++trial) {
            const auto inst = test::random_instance(engine, 3, 5, 0.0, 1.0, 3.0);
            const auto theta = test::random_angles(engine, inst.cost.circuit.num_params);
            std::uniform_int_distribution<int> slot_dist(0, inst.cost.circuit.num_params - 1);
            const int slot = slot_dist(engine);
            const double g = fubini_diag(inst.cost, theta, slot);

            const StateVector base =
                run_circuit(inst.cost.circuit, theta, inst.cost.terms[0].input);
            const double eps = 1e-3;
            std::vector<double> th(theta);
            th[static_cast<std::size_t>(slot)] += eps;
            const StateVector moved =
                run_circuit(inst.cost.circuit, th, inst.cost.terms[0].input);
            const double infid = 1.0 - std::norm(inner(moved, base));
            const double fd = infid / (4.0 * std::pow(std::sin(0.5 * eps), 2));
            CHECK(g == doctest::Approx(fd).epsilon(1e-5));
        }
    }
    SUBCASE("distinct input states are rejected") {
        CostFunction cf = cosine_cost();
        cf.terms.push_back({pauli_z(), StateVector::basis(1, 1)});
        const std::vector<double> theta{0.3};
        CHECK_THROWS_AS(fubini_diag(cf, theta, 0), std::invalid_argument);
    }
}

TEST_CASE("single-virtual-parameter cross sections are sinusoidal") {
    auto engine = make_engine(53);
    const Circuit ansatz = build_ansatz(3, 2, 31);
    const NoisyCircuit nc = insert_noise(ansatz, NoiseSpec::direct(1e-3, 1e-2, 1e-3));
    const auto inst = test::random_instance(engine, 3, 1, 0.0, 1.0, 3.0);
    CostFunction cf;
    cf.circuit = ansatz;
    cf.terms = inst.cost.terms;
    const auto theta = test::random_angles(engine, ansatz.num_params);

    std::uniform_int_distribution<int> entry_dist(0, static_cast<int>(nc.registry.size()) - 1);
    for (int rep = 0; rep < 5; ++rep) {
        const int idx = entry_dist(engine);
        std::vector<double> ts, vs;
        std::vector<double> virt(nc.registry.size(), 0.0);
        for (int s = 0; s < 9; ++s) {
            const double t = 2.0 * kPi * s / 9.0;
            virt[static_cast<std::size_t>(idx)] = t;
            ts.push_back(t);
            StateVector out = run_circuit(nc, theta, virt, cf.terms[0].input);
            vs.push_back(expectation(out, cf.terms[0].obs));
        }
        CHECK(test::fit_sinusoid(ts, vs).max_residual < 1e-10);
    }
}

TEST_CASE("noise on inserted virtual-shift gates is off by default") {
    // RX with 1-qubit depolarizing after it: X component merges, Y and Z stay
    // virtual. Shifting a virtual slot by pi inserts a rotation; with the flag
    // on, that gate carries its own copy of the channel.
    CostFunction cf = cosine_cost();
    const NoisyCircuit nc = insert_noise(cf.circuit, NoiseSpec::direct(0.01, 0.0, 0.0));
    REQUIRE(nc.registry.size() == 3);
    // the Y slot: its channel neither merges with the RX gate nor commutes
    // with the Z measurement
    int virt_idx = -1;
    for (std::size_t i = 0; i < nc.registry.size(); ++i)
        if (!nc.registry.entries[i].merged &&
            nc.registry.entries[i].generator.letter(0) == 'Y')
            virt_idx = static_cast<int>(i);
    REQUIRE(virt_idx >= 0);

    NoisyEvaluator plain(cf, nc.registry);
    NoisyEvaluator extra(cf, nc.registry);
    extra.noise_on_inserted_shift_gates = true;

    const std::vector<double> theta{0.7};
    const VirtualShift shift{virt_idx, kPi};
    // identical without a shift, different once the shifted gate is noisy
    CHECK(plain.evaluate(theta).value == doctest::Approx(extra.evaluate(theta).value));
    const double v_plain = plain.evaluate(theta, {&shift, 1}).value;
    const double v_extra = extra.evaluate(theta, {&shift, 1}).value;
    CHECK(v_plain != v_extra);
    // extra channel damps the shifted expectation further
    CHECK(std::abs(v_extra) < std::abs(v_plain));
}

TEST_CASE("evaluation counter tracks noisy calls") {
    const ToyModel model = build_toy_model(ToyModelSpec{});
    const NoisyCircuit nc = insert_noise(model.ansatz, NoiseSpec::direct(1e-4, 1e-3, 1e-3));
    NoisyEvaluator ev(model.cost, nc.registry);
    auto engine = make_engine(54);
    const auto theta = test::random_angles(engine, model.ansatz.num_params);
    ev.evaluate(theta);
    ev.gradient(theta);
    CHECK(ev.eval_count() == 1 + 2 * model.ansatz.num_params);
}
