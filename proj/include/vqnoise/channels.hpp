#ifndef VQNOISE_CHANNELS_HPP
#define VQNOISE_CHANNELS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqnoise/circuit.hpp"
#include "vqnoise/state.hpp"

namespace vqnoise {

// E_{A,p}(rho) = (1-p) rho + p A rho A, A a Pauli string with A^2 = I.
struct StochasticPauliChannel {
    PauliString generator;
    double p = 0.0; // 0 <= p < 1/2

    StochasticPauliChannel(PauliString g, double prob);
};

// Rotation angle jitter: exp(-i D A / 2) with D ~ N(0, sigma2). Identical as a
// channel to the stochastic form with p = (1 - exp(-sigma2/2))/2.
struct GaussianRotationChannel {
    PauliString generator;
    double sigma2 = 0.0;

    GaussianRotationChannel(PauliString g, double variance);
};

struct DepolarizingChannel {
    int k = 1;
    double q = 0.0; // 0 <= q < (4^k-1)/4^k
    std::vector<int> targets;

    DepolarizingChannel(std::vector<int> target_qubits, double prob);
};

// sigma^2 = -2 log(1 - 2p)
double variance_of_stochastic(double p);
// p = (1 - exp(-sigma^2/2)) / 2
double stochastic_of_variance(double sigma2);
// Common variance of the 4^k - 1 Gaussian factors of D_{k,q}:
// sigma^2 = -(1/4^{k-1}) log(1 - 4^k q / (4^k - 1))
double depolarizing_gaussian_variance(int k, double q);

// D_{k,q} as a composition of 4^k - 1 Gaussian rotation channels, one per
// non-identity Pauli on the targets, all with the common variance above.
std::vector<GaussianRotationChannel> decompose_depolarizing(const DepolarizingChannel& ch);

// Channel in the Pauli operator basis: R_{ij} = tr(P_i E(P_j)) / 2^k.
// Diagonal for every channel here; computed by exhaustive action on the basis
// as a verification oracle, so it is size-guarded.
struct PauliTransferMatrix {
    int k = 0;
    std::vector<double> m; // 4^k x 4^k row-major

    std::size_t dim() const { return m.empty() ? 0 : (std::size_t{1} << (2 * k)); }
    double& at(std::size_t r, std::size_t c) { return m[r * dim() + c]; }
    const double& at(std::size_t r, std::size_t c) const { return m[r * dim() + c]; }
    double max_abs_diff(const PauliTransferMatrix& other) const;
};

PauliTransferMatrix ptm(const StochasticPauliChannel& ch);
// Integrates the rotation conjugation against the Gaussian measure by
// quadrature; deliberately does not reuse the stochastic form, so the
// equivalence tests compare two independent routes.
PauliTransferMatrix ptm(const GaussianRotationChannel& ch);
PauliTransferMatrix ptm(const DepolarizingChannel& ch);
PauliTransferMatrix ptm_compose(const std::vector<PauliTransferMatrix>& factors);
PauliTransferMatrix ptm_identity(int k);

// Where depolarizing noise sits in a circuit. Either direct probabilities or
// the scaled form q_k = (4^{k-1} - 1/4) c_k q.
struct NoiseSpec {
    double q1 = 0.0;        // after every 1-qubit gate
    double q2 = 0.0;        // after every 2-qubit gate
    double q_readout = 0.0; // after the final gate, on every qubit
    double parameter_sigma2 = 0.0; // Gaussian jitter on every real parameter

    static NoiseSpec direct(double q1, double q2, double q_readout);
    static NoiseSpec scaled(double q_scale, double c1, double c2,
                            std::optional<double> c_readout = std::nullopt);
    bool is_zero() const;
};

struct NoiseOrigin {
    enum class Kind { GateDepolarizing, Readout, Parameter };
    Kind kind = Kind::GateDepolarizing;
    int gate_index = -1; // source gate (GateDepolarizing, Parameter)
    int k = 1;           // depolarizing arity
    double q = 0.0;      // source error probability (depolarizing kinds)
};

// One virtual Pauli rotation marking where a noise channel acts. The angle is
// identically 0 during optimization; sigma2 is the Gaussian variance of its
// jitter. `merged` entries duplicate the generator of the rotation gate
// immediately before them; their variance is accounted against that real slot
// and they are never shifted independently.
struct VirtualEntry {
    int position = 0; // acts after this many gates of the base circuit
    PauliString generator;
    double sigma2 = 0.0;
    NoiseOrigin origin;
    bool merged = false;
    int merged_slot = -1;
};

struct VirtualParameterRegistry {
    std::vector<VirtualEntry> entries;

    std::size_t size() const { return entries.size(); }
    int merged_count() const;
    double total_variance() const;
};

struct NoisyCircuit {
    Circuit circuit;
    VirtualParameterRegistry registry;

    // entry indices grouped by position, positions 0..gates.size()
    std::vector<std::vector<int>> entries_by_position() const;
};

NoisyCircuit insert_noise(const Circuit& circuit, const NoiseSpec& spec);

// Extra Gaussian jitter on one real parameter slot (registered as a merged
// entry right after that gate).
void add_parameter_noise(NoisyCircuit& nc, int slot, double sigma2);

// A pi-shift of a virtual parameter: the registry entry's rotation gate is
// inserted at its position with the given angle.
struct VirtualShift {
    int entry_index = -1;
    double angle = 0.0;
};

// Noiseless run of the circuit with virtual rotations applied at their
// registered positions. virtual_params has one angle per registry entry.
StateVector run_circuit(const NoisyCircuit& nc, std::span<const double> params,
                        std::span<const double> virtual_params, const StateVector& input);

// Exact propagation through all gates and channels. Channels apply in their
// equivalent stochastic form; shifts insert virtual rotations. Refuses above
// qubit_cap. With noise_on_shift_gates, every shifted entry's channel fires a
// second time, modeling noise on the inserted shift gate itself.
DensityMatrix evolve_density(const DensityMatrix& rho, const NoisyCircuit& nc,
                             std::span<const double> params,
                             std::span<const VirtualShift> shifts = {}, int qubit_cap = 8,
                             bool noise_on_shift_gates = false);

// Per-slot variances after merging: real[i] accumulates parameter jitter plus
// merged channel variances for slot i; virtuals lists (registry index, sigma2)
// for the non-merged entries.
struct SlotVariances {
    std::vector<double> real;
    std::vector<std::pair<int, double>> virtuals;

    double total() const;
    std::size_t active_count(double threshold = 0.0) const; // slots with sigma2 > threshold
};

SlotVariances collect_slot_variances(const NoisyCircuit& nc);

} // namespace vqnoise

#endif
