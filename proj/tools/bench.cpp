// Throughput comparison of the amplitude kernels against the serial dense
// reference, plus OpenMP scaling of the kernel path. The reference builds
// full 2^n x 2^n gate matrices, so it is only timed at sizes where that is
// sane; correctness columns come from the same runs.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vqnoise/kernels.hpp"
#include "vqnoise/ref.hpp"
#include "vqnoise/rng.hpp"
#include "vqnoise/toymodel.hpp"

using namespace vqnoise;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

StateVector random_state(std::mt19937_64& engine, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    StateVector s(n);
    for (cplx& a : s.amps) a = cplx{g(engine), g(engine)};
    s.normalize();
    return s;
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

// captured once at startup; omp_get_max_threads() tracks set_num_threads
int g_workers = 1;

int max_threads() { return g_workers; }

void bench_statevector(int n, int reps) {
    auto engine = make_engine(1);
    const Circuit circuit = build_ansatz(n, 4, 7);
    std::vector<double> theta(static_cast<std::size_t>(circuit.num_params), 0.37);
    StateVector in = random_state(engine, n);

    double ref_ms = -1.0;
    double dev = 0.0;
    StateVector fast1 = in;
    if (n <= 10) {
        const auto t0 = clock_type::now();
        const StateVector slow = ref::run_circuit(circuit, theta, in);
        ref_ms = ms_since(t0);
        fast1 = run_circuit(circuit, theta, in);
        dev = max_abs_diff(fast1, slow);
    }

    set_threads(1);
    const auto t1 = clock_type::now();
    for (int r = 0; r < reps; ++r) fast1 = run_circuit(circuit, theta, in);
    const double serial_ms = ms_since(t1) / reps;

    set_threads(max_threads());
    const auto t2 = clock_type::now();
    StateVector fastN = in;
    for (int r = 0; r < reps; ++r) fastN = run_circuit(circuit, theta, in);
    const double parallel_ms = ms_since(t2) / reps;

    if (ref_ms >= 0.0)
        std::printf("statevector  n=%2d  dense %6.2f ms | kernel x1 %8.3f ms | x%d %8.3f ms | "
                    "speedup %4.2f | max dev %.1e\n",
                    n, ref_ms, serial_ms, max_threads(), parallel_ms, serial_ms / parallel_ms,
                    dev);
    else
        std::printf("statevector  n=%2d  dense    n/a    | kernel x1 %8.3f ms | x%d %8.3f ms | "
                    "speedup %4.2f |\n",
                    n, serial_ms, max_threads(), parallel_ms, serial_ms / parallel_ms);
}

void bench_density(int n, int reps) {
    auto engine = make_engine(2);
    const Circuit circuit = build_ansatz(n, 2, 9);
    const NoisyCircuit nc = insert_noise(circuit, NoiseSpec::direct(1e-3, 1e-2, 1e-3));
    std::vector<double> theta(static_cast<std::size_t>(circuit.num_params), 0.51);
    const DensityMatrix in = DensityMatrix::pure(random_state(engine, n));

    double ref_ms = -1.0;
    double dev = 0.0;
    if (n <= 6) {
        const auto t0 = clock_type::now();
        DensityMatrix slow = in;
        const auto by_pos = nc.entries_by_position();
        for (std::size_t pos = 0; pos <= circuit.gates.size(); ++pos) {
            for (int idx : by_pos[pos]) {
                const auto& e = nc.registry.entries[static_cast<std::size_t>(idx)];
                slow = ref::stochastic_pauli(e.generator, stochastic_of_variance(e.sigma2), slow);
            }
            if (pos < circuit.gates.size())
                slow = ref::conjugate(ref::gate_matrix(circuit.gates[pos], n, theta), slow);
        }
        ref_ms = ms_since(t0);
        const DensityMatrix fast = evolve_density(in, nc, theta, {}, n);
        dev = max_abs_diff(fast, slow);
    }

    set_threads(1);
    const auto t1 = clock_type::now();
    for (int r = 0; r < reps; ++r) (void)evolve_density(in, nc, theta, {}, n);
    const double serial_ms = ms_since(t1) / reps;

    set_threads(max_threads());
    const auto t2 = clock_type::now();
    for (int r = 0; r < reps; ++r) (void)evolve_density(in, nc, theta, {}, n);
    const double parallel_ms = ms_since(t2) / reps;

    if (ref_ms >= 0.0)
        std::printf("density      n=%2d  dense %6.2f ms | kernel x1 %8.3f ms | x%d %8.3f ms | "
                    "speedup %4.2f | max dev %.1e\n",
                    n, ref_ms, serial_ms, max_threads(), parallel_ms, serial_ms / parallel_ms,
                    dev);
    else
        std::printf("density      n=%2d  dense    n/a    | kernel x1 %8.3f ms | x%d %8.3f ms | "
                    "speedup %4.2f |\n",
                    n, serial_ms, max_threads(), parallel_ms, serial_ms / parallel_ms);
}

void bench_trajectories(int n, std::int64_t samples) {
    const ToyModelSpec spec{.n = n, .depth = 2};
    const ToyModel model = build_toy_model(spec);
    const NoisyCircuit nc = insert_noise(model.ansatz, NoiseSpec::direct(1e-4, 1e-3, 1e-3));
    NoisyEvaluator ev(model.cost, nc.registry);
    ev.mode = EvalMode::Trajectory;
    ev.samples = samples;
    ev.seed = 5;

    set_threads(1);
    const auto t1 = clock_type::now();
    const NoisyValue serial = ev.evaluate(model.theta_opt);
    const double serial_ms = ms_since(t1);

    set_threads(max_threads());
    const auto t2 = clock_type::now();
    const NoisyValue parallel = ev.evaluate(model.theta_opt);
    const double parallel_ms = ms_since(t2);

    std::printf("trajectories n=%2d  N=%lld     | x1 %8.1f ms | x%d %8.1f ms | speedup %4.2f | "
                "identical %s\n",
                n, static_cast<long long>(samples), serial_ms, max_threads(), parallel_ms,
                serial_ms / parallel_ms, serial.value == parallel.value ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    int reps = 20;
    if (argc > 1) reps = std::atoi(argv[1]);
#ifdef _OPENMP
    g_workers = omp_get_max_threads();
#endif
    std::printf("workers available: %d\n\n", max_threads());

    for (int n : {4, 8, 12, 16, 20}) bench_statevector(n, n >= 16 ? std::max(3, reps / 4) : reps);
    std::printf("\n");
    for (int n : {4, 6, 8, 10}) bench_density(n, n >= 10 ? std::max(2, reps / 10) : reps);
    std::printf("\n");
    bench_trajectories(4, 100000);
    return 0;
}
