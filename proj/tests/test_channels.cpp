#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/oracles.hpp"

#include "vqnoise/channels.hpp"
#include "vqnoise/quadrature.hpp"
#include "vqnoise/rng.hpp"
#include "vqnoise/toymodel.hpp"

using namespace vqnoise;

TEST_CASE("variance_of_stochastic") {
    CHECK(variance_of_stochastic(0.0) == 0.0);
    CHECK(variance_of_stochastic(0.1) == doctest::Approx(0.4462871026284194).epsilon(1e-14));
    // small-p regime: sigma^2 = 4p + O(p^2)
    const double ratio = variance_of_stochastic(1e-4) / 4e-4;
    CHECK(ratio >= 0.999);
    CHECK(ratio <= 1.001);
    CHECK_THROWS_AS(variance_of_stochastic(0.5), std::invalid_argument);
    CHECK_THROWS_AS(variance_of_stochastic(-0.01), std::invalid_argument);
}

TEST_CASE("stochastic_of_variance") {
    CHECK(stochastic_of_variance(0.0) == 0.0);
    CHECK(stochastic_of_variance(0.4462871026284194) == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(stochastic_of_variance(50.0) > 0.499999);
    CHECK_THROWS_AS(stochastic_of_variance(-1e-9), std::invalid_argument);

    auto engine = make_engine(31);
    std::uniform_real_distribution<double> u(0.0, 0.499);
    for (int i = 0; i < 200; ++i) {
        const double p = u(engine);
        CHECK(std::abs(stochastic_of_variance(variance_of_stochastic(p)) - p) < 1e-12);
        CHECK(stochastic_of_variance(variance_of_stochastic(p)) < 0.5);
    }
}

TEST_CASE("depolarizing_gaussian_variance") {
    CHECK(depolarizing_gaussian_variance(1, 0.0) == 0.0);
    CHECK(depolarizing_gaussian_variance(1, 0.01) ==
          doctest::Approx(0.013423020332140661).epsilon(1e-14));
    // small-q regime: sigma^2 ~ 4q/(4^k-1)
    CHECK(depolarizing_gaussian_variance(2, 1e-4) ==
          doctest::Approx(2.6666666666666667e-05).epsilon(1e-2));
    CHECK_THROWS_AS(depolarizing_gaussian_variance(1, 0.75), std::invalid_argument);
}

TEST_CASE("decompose_depolarizing enumerates the non-identity paulis") {
    const auto one = decompose_depolarizing(DepolarizingChannel({0}, 0.05));
    REQUIRE(one.size() == 3);
    CHECK(one[0].generator.letters() == "X");
    CHECK(one[1].generator.letters() == "Y");
    CHECK(one[2].generator.letters() == "Z");
    const double s2 = depolarizing_gaussian_variance(1, 0.05);
    for (const auto& ch : one) CHECK(ch.sigma2 == doctest::Approx(s2).epsilon(1e-15));

    const auto two = decompose_depolarizing(DepolarizingChannel({0, 1}, 0.05));
    CHECK(two.size() == 15);
}

TEST_CASE("ptm pinned forms") {
    SUBCASE("depolarizing: diag(1, 1-4q/3, ...)") {
        const auto r = ptm(DepolarizingChannel({0}, 0.03));
        REQUIRE(r.dim() == 4);
        CHECK(r.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 1; i < 4; ++i)
            CHECK(r.at(i, i) == doctest::Approx(0.96).epsilon(1e-12));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (i != j) CHECK(std::abs(r.at(i, j)) < 1e-12);
    }
    SUBCASE("stochastic Z: diag(1, 1-2p, 1-2p, 1) over (I,X,Y,Z)") {
        const double p = 0.14;
        const auto r = ptm(StochasticPauliChannel(PauliString::from_letters("Z"), p));
        CHECK(r.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.at(1, 1) == doctest::Approx(1.0 - 2 * p).epsilon(1e-12));
        CHECK(r.at(2, 2) == doctest::Approx(1.0 - 2 * p).epsilon(1e-12));
        CHECK(r.at(3, 3) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("gaussian: anticommuting entries are exp(-sigma2/2)") {
        const double s2 = 0.37;
        const auto r = ptm(GaussianRotationChannel(PauliString::from_letters("Z"), s2));
        const double damp = std::exp(-0.5 * s2);
        CHECK(r.at(1, 1) == doctest::Approx(damp).epsilon(1e-12)); // X anticommutes
        CHECK(r.at(2, 2) == doctest::Approx(damp).epsilon(1e-12)); // Y anticommutes
        CHECK(r.at(3, 3) == doctest::Approx(1.0).epsilon(1e-12));  // Z commutes
    }
    SUBCASE("zero-noise channels give the identity matrix") {
        const auto g = ptm(GaussianRotationChannel(PauliString::from_letters("Y"), 0.0));
        CHECK(g.max_abs_diff(ptm_identity(1)) < 1e-12);
        const auto s = ptm(StochasticPauliChannel(PauliString::from_letters("XY"), 0.0));
        CHECK(s.max_abs_diff(ptm_identity(2)) < 1e-12);
    }
    SUBCASE("trace preservation row and entry range") {
        const auto r = ptm(GaussianRotationChannel(PauliString::from_letters("XZ"), 0.8));
        CHECK(r.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t j = 1; j < r.dim(); ++j) CHECK(std::abs(r.at(0, j)) < 1e-12);
        for (double v : r.m) {
            CHECK(v <= 1.0 + 1e-12);
            CHECK(v >= -1.0 - 1e-12);
        }
    }
    SUBCASE("size guard") {
        CHECK_THROWS_AS(ptm(DepolarizingChannel({0, 1, 2, 3}, 0.01)), std::invalid_argument);
    }
}

TEST_CASE("gaussian-stochastic channel equivalence over 200 random cases") {
    auto engine = make_engine(32);
    std::uniform_real_distribution<double> u(0.0, 0.45);
    std::uniform_int_distribution<int> karg(1, 2);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = karg(engine);
        const PauliString g = [&] {
            PauliString p = test::random_pauli(engine, k, k);
            while (p.is_identity()) p = test::random_pauli(engine, k, k);
            return p;
        }();
        const double p = u(engine);
        const auto lhs = ptm(GaussianRotationChannel(g, variance_of_stochastic(p)));
        const auto rhs = ptm(StochasticPauliChannel(g, p));
        CHECK(lhs.max_abs_diff(rhs) < 1e-10);
    }
}

TEST_CASE("lemma-1 decomposition reproduces the depolarizing ptm") {
    for (int k : {1, 2}) {
        std::vector<int> targets(static_cast<std::size_t>(k));
        for (int t = 0; t < k; ++t) targets[static_cast<std::size_t>(t)] = t;
        for (double q : {1e-4, 1e-2, 0.1}) {
            const DepolarizingChannel dep(targets, q);
            std::vector<PauliTransferMatrix> factors;
            for (const auto& ch : decompose_depolarizing(dep)) factors.push_back(ptm(ch));
            const auto composed = ptm_compose(factors);
            CHECK(composed.max_abs_diff(ptm(dep)) < 1e-10);

            // all factors diagonal, so order never matters
            auto engine = make_engine(static_cast<std::uint64_t>(k * 1000 + q * 1e5));
            std::shuffle(factors.begin(), factors.end(), engine);
            CHECK(ptm_compose(factors).max_abs_diff(ptm(dep)) < 1e-10);
        }
    }
}

TEST_CASE("anticommutation count is 2*4^(k-1), exhaustively for k <= 3") {
    for (int k = 1; k <= 3; ++k) {
        const auto basis = pauli_basis(k);
        const long expected = 2L * (1L << (2 * (k - 1)));
        for (std::size_t j = 1; j < basis.size(); ++j) {
            long anti = 0;
            for (std::size_t i = 1; i < basis.size(); ++i)
                if (!basis[i].commutes_with(basis[j])) ++anti;
            CHECK(anti == expected);
        }
    }
}

TEST_CASE("noise spec forms") {
    const NoiseSpec direct = NoiseSpec::direct(1e-4, 1e-3, 1e-3);
    CHECK(direct.q1 == 1e-4);
    CHECK_THROWS_AS(NoiseSpec::direct(-1e-4, 0, 0), std::invalid_argument);

    // q_k = (4^{k-1} - 1/4) c_k q
    const NoiseSpec scaled = NoiseSpec::scaled(1e-3, 1.0, 2.0);
    CHECK(scaled.q1 == doctest::Approx(0.75e-3).epsilon(1e-15));
    CHECK(scaled.q2 == doctest::Approx(7.5e-3).epsilon(1e-15));
    CHECK(scaled.q_readout == doctest::Approx(0.75e-3).epsilon(1e-15));
    const NoiseSpec scaled_ro = NoiseSpec::scaled(1e-3, 1.0, 2.0, 4.0);
    CHECK(scaled_ro.q_readout == doctest::Approx(3e-3).epsilon(1e-15));
}

TEST_CASE("insert_noise registry layout") {
    const Circuit ansatz = build_ansatz(4, 2, 77);

    SUBCASE("no noise -> empty registry, circuit unchanged") {
        const NoisyCircuit nc = insert_noise(ansatz, NoiseSpec{});
        CHECK(nc.registry.size() == 0);
        CHECK(nc.circuit.gates.size() == ansatz.gates.size());
    }
    SUBCASE("fig-1 topology count: M' = 8*3 + 6*15 + 4*3 = 126") {
        const NoisyCircuit nc = insert_noise(ansatz, NoiseSpec::direct(1e-4, 1e-3, 1e-3));
        CHECK(nc.registry.size() == 126);
        // merged: exactly one per single-qubit rotation, its own axis
        CHECK(nc.registry.merged_count() == 8);
        int merged_on_own_axis = 0;
        for (const auto& e : nc.registry.entries) {
            if (!e.merged) continue;
            const auto& gate = nc.circuit.gates[static_cast<std::size_t>(e.position - 1)];
            const auto& rot = std::get<RotationGate>(gate);
            CHECK(rot.generator == e.generator);
            CHECK(rot.slot == e.merged_slot);
            ++merged_on_own_axis;
        }
        CHECK(merged_on_own_axis == 8);

        // variances by origin
        const double s1 = depolarizing_gaussian_variance(1, 1e-4);
        const double s2 = depolarizing_gaussian_variance(2, 1e-3);
        for (const auto& e : nc.registry.entries) {
            if (e.origin.kind == NoiseOrigin::Kind::GateDepolarizing && e.origin.k == 1)
                CHECK(e.sigma2 == doctest::Approx(s1).epsilon(1e-15));
            if (e.origin.kind == NoiseOrigin::Kind::GateDepolarizing && e.origin.k == 2)
                CHECK(e.sigma2 == doctest::Approx(s2).epsilon(1e-15));
            CHECK(e.sigma2 > 0.0);
        }
    }
    SUBCASE("readout entries sit after the final gate") {
        const NoisyCircuit nc = insert_noise(ansatz, NoiseSpec::direct(0, 0, 1e-3));
        CHECK(nc.registry.size() == 12); // 3n
        for (const auto& e : nc.registry.entries) {
            CHECK(e.position == static_cast<int>(ansatz.gates.size()));
            CHECK(e.origin.kind == NoiseOrigin::Kind::Readout);
            CHECK(!e.merged); // final layer is CZ, nothing to merge with
        }
    }
    SUBCASE("invalid probabilities are rejected") {
        CHECK_THROWS_AS(insert_noise(ansatz, NoiseSpec::direct(0.8, 0, 0)),
                        std::invalid_argument);
    }
    SUBCASE("slot variance collection folds merged entries") {
        NoisyCircuit nc = insert_noise(ansatz, NoiseSpec::direct(1e-4, 1e-3, 1e-3));
        const SlotVariances sv = collect_slot_variances(nc);
        CHECK(sv.real.size() == 8);
        CHECK(sv.virtuals.size() == 126 - 8);
        const double s1 = depolarizing_gaussian_variance(1, 1e-4);
        for (double v : sv.real) CHECK(v == doctest::Approx(s1).epsilon(1e-15));
        CHECK(sv.total() == doctest::Approx(nc.registry.total_variance()).epsilon(1e-12));

        add_parameter_noise(nc, 3, 0.01);
        const SlotVariances sv2 = collect_slot_variances(nc);
        CHECK(sv2.real[3] == doctest::Approx(s1 + 0.01).epsilon(1e-12));
    }
}

TEST_CASE("virtual-parameter runs") {
    auto engine = make_engine(33);
    const Circuit ansatz = build_ansatz(3, 2, 5);
    const NoisyCircuit nc = insert_noise(ansatz, NoiseSpec::direct(1e-3, 1e-2, 1e-3));
    const auto theta = test::random_angles(engine, ansatz.num_params);
    const StateVector in = StateVector::basis(3, 0);

    SUBCASE("all virtual angles zero reproduces the bare circuit") {
        std::vector<double> virt(nc.registry.size(), 0.0);
        CHECK(max_abs_diff(run_circuit(nc, theta, virt, in), run_circuit(ansatz, theta, in)) <
              1e-14);
    }
    SUBCASE("a pi angle inserts the rotation at the registered position") {
        const int idx = 7;
        std::vector<double> virt(nc.registry.size(), 0.0);
        virt[idx] = kPi;
        const StateVector via_registry = run_circuit(nc, theta, virt, in);

        const auto& entry = nc.registry.entries[idx];
        StateVector manual = in;
        for (std::size_t g = 0; g <= ansatz.gates.size(); ++g) {
            if (static_cast<int>(g) == entry.position)
                apply_rotation(manual, entry.generator, kPi);
            if (g < ansatz.gates.size()) apply_gate(manual, ansatz.gates[g], theta);
        }
        CHECK(max_abs_diff(via_registry, manual) < 1e-14);
    }
}

TEST_CASE("exact channel evolution is invariant under same-position reordering") {
    auto engine = make_engine(34);
    const Circuit ansatz = build_ansatz(3, 1, 9);
    NoisyCircuit nc = insert_noise(ansatz, NoiseSpec::direct(5e-3, 2e-2, 1e-2));
    const auto theta = test::random_angles(engine, ansatz.num_params);
    const DensityMatrix in = DensityMatrix::pure(StateVector::basis(3, 0));
    const DensityMatrix base = evolve_density(in, nc, theta);

    NoisyCircuit shuffled = nc;
    std::shuffle(shuffled.registry.entries.begin(), shuffled.registry.entries.end(), engine);
    CHECK(max_abs_diff(evolve_density(in, shuffled, theta), base) < 1e-12);
}

TEST_CASE("gaussian channel equals its stochastic form on density matrices") {
    // The production path applies Gaussian channels through Eq.-9 closed form;
    // check it against direct quadrature of the rotation-angle average.
    auto engine = make_engine(35);
    const PauliString g = PauliString::from_letters("XZY");
    const double sigma2 = 0.3;
    const DensityMatrix rho = test::random_density(engine, 3, 3);

    DensityMatrix closed = rho;
    density_apply_stochastic_pauli(closed, g, stochastic_of_variance(sigma2));

    const auto rule = gauss_hermite(64);
    DensityMatrix averaged(3);
    const double scale = std::sqrt(2.0 * sigma2);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        DensityMatrix rotated = rho;
        density_apply_rotation(rotated, g, scale * rule.nodes[i]);
        const double w = rule.weights[i] * kInvSqrtPi;
        for (std::size_t e = 0; e < averaged.a.size(); ++e) averaged.a[e] += w * rotated.a[e];
    }
    CHECK(max_abs_diff(closed, averaged) < 1e-12);
}
