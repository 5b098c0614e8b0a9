#include "vqnoise/channels.hpp"

#include <cmath>
#include <stdexcept>

#include "vqnoise/errors.hpp"
#include "vqnoise/kernels.hpp"
#include "vqnoise/quadrature.hpp"
#include "vqnoise/ref.hpp"

namespace vqnoise {

StochasticPauliChannel::StochasticPauliChannel(PauliString g, double prob)
    : generator(std::move(g)), p(prob) {
    if (generator.is_identity())
        throw std::invalid_argument("stochastic channel: generator must have weight >= 1");
    if (p < 0.0 || p >= 0.5)
        throw std::invalid_argument("stochastic channel: require 0 <= p < 1/2");
}

GaussianRotationChannel::GaussianRotationChannel(PauliString g, double variance)
    : generator(std::move(g)), sigma2(variance) {
    if (generator.is_identity())
        throw std::invalid_argument("gaussian channel: generator must have weight >= 1");
    if (sigma2 < 0.0) throw std::invalid_argument("gaussian channel: negative variance");
}

DepolarizingChannel::DepolarizingChannel(std::vector<int> target_qubits, double prob)
    : k(static_cast<int>(target_qubits.size())), q(prob), targets(std::move(target_qubits)) {
    if (targets.empty()) throw std::invalid_argument("depolarizing channel: no targets");
    const double limit = (std::pow(4.0, k) - 1.0) / std::pow(4.0, k);
    if (q < 0.0 || q >= limit)
        throw std::invalid_argument("depolarizing channel: require 0 <= q < (4^k-1)/4^k");
}

double variance_of_stochastic(double p) {
    if (p < 0.0 || p >= 0.5)
        throw std::invalid_argument("variance_of_stochastic: require 0 <= p < 1/2");
    return -2.0 * std::log1p(-2.0 * p);
}

double stochastic_of_variance(double sigma2) {
    if (sigma2 < 0.0) throw std::invalid_argument("stochastic_of_variance: negative variance");
    return 0.5 * -std::expm1(-0.5 * sigma2);
}

double depolarizing_gaussian_variance(int k, double q) {
    const double fourk = std::pow(4.0, k);
    if (k < 1) throw std::invalid_argument("depolarizing_gaussian_variance: k >= 1 required");
    if (q < 0.0 || q >= (fourk - 1.0) / fourk)
        throw std::invalid_argument("depolarizing_gaussian_variance: q out of range");
    return -std::log1p(-fourk * q / (fourk - 1.0)) / std::pow(4.0, k - 1);
}

std::vector<GaussianRotationChannel> decompose_depolarizing(const DepolarizingChannel& ch) {
    const double sigma2 = depolarizing_gaussian_variance(ch.k, ch.q);
    // Generators live on a standalone k-qubit register, targets 0..k-1.
    std::vector<int> local(static_cast<std::size_t>(ch.k));
    for (int t = 0; t < ch.k; ++t) local[static_cast<std::size_t>(t)] = t;
    std::vector<GaussianRotationChannel> out;
    for (const PauliString& p : nonidentity_paulis_on(ch.k, local))
        out.emplace_back(p, sigma2);
    return out;
}

double PauliTransferMatrix::max_abs_diff(const PauliTransferMatrix& other) const {
    if (k != other.k) throw std::invalid_argument("ptm diff: size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) d = std::max(d, std::abs(m[i] - other.m[i]));
    return d;
}

namespace {

constexpr int kPtmQubitGuard = 3;

void check_ptm_size(int k) {
    if (k > kPtmQubitGuard)
        throw std::invalid_argument("ptm: guarded at 3 qubits (verification oracle only)");
}

// R_{ij} = tr(P_i E(P_j)) / 2^k for a channel given as a matrix map.
template <typename ChannelAction>
PauliTransferMatrix ptm_from_action(int k, ChannelAction&& action) {
    check_ptm_size(k);
    const auto basis = pauli_basis(k);
    const std::size_t nb = basis.size();
    const double norm = 1.0 / static_cast<double>(dim_of(k));
    PauliTransferMatrix r;
    r.k = k;
    r.m.assign(nb * nb, 0.0);
    for (std::size_t j = 0; j < nb; ++j) {
        DensityMatrix in(k);
        in.a = ref::pauli_matrix(basis[j]).data();
        DensityMatrix out = action(in);
        for (std::size_t i = 0; i < nb; ++i) {
            Matrix pi = ref::pauli_matrix(basis[i]);
            cplx tr{0.0, 0.0};
            const std::size_t d = dim_of(k);
            for (std::size_t row = 0; row < d; ++row)
                for (std::size_t col = 0; col < d; ++col) tr += pi(row, col) * out.at(col, row);
            if (std::abs(tr.imag()) > 1e-12)
                throw std::runtime_error("ptm: non-real transfer entry");
            r.at(i, j) = tr.real() * norm;
        }
    }
    return r;
}

} // namespace

// The transfer matrix lives on the generator's whole register, so the factors
// of a k-qubit depolarizing decomposition compose even when a generator has
// weight below k.
PauliTransferMatrix ptm(const StochasticPauliChannel& ch) {
    const int k = ch.generator.num_qubits();
    return ptm_from_action(k, [&](const DensityMatrix& rho) {
        return ref::stochastic_pauli(ch.generator, ch.p, rho);
    });
}

PauliTransferMatrix ptm(const GaussianRotationChannel& ch) {
    const int k = ch.generator.num_qubits();
    if (ch.sigma2 == 0.0)
        return ptm_from_action(k, [](const DensityMatrix& rho) { return rho; });
    const GaussHermiteRule rule = gauss_hermite(64);
    const double scale = std::sqrt(2.0 * ch.sigma2);
    return ptm_from_action(k, [&](const DensityMatrix& rho) {
        DensityMatrix avg(rho.num_qubits);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double w = rule.weights[i] * kInvSqrtPi;
            DensityMatrix rotated = rho;
            density_apply_rotation(rotated, ch.generator, scale * rule.nodes[i]);
            for (std::size_t e = 0; e < avg.a.size(); ++e) avg.a[e] += w * rotated.a[e];
        }
        return avg;
    });
}

PauliTransferMatrix ptm(const DepolarizingChannel& ch) {
    std::vector<int> local(static_cast<std::size_t>(ch.k));
    for (int t = 0; t < ch.k; ++t) local[static_cast<std::size_t>(t)] = t;
    return ptm_from_action(ch.k, [&](const DensityMatrix& rho) {
        return ref::depolarizing(local, ch.q, ch.k, rho);
    });
}

PauliTransferMatrix ptm_identity(int k) {
    check_ptm_size(k);
    const std::size_t nb = std::size_t{1} << (2 * k);
    PauliTransferMatrix r;
    r.k = k;
    r.m.assign(nb * nb, 0.0);
    for (std::size_t i = 0; i < nb; ++i) r.at(i, i) = 1.0;
    return r;
}

PauliTransferMatrix ptm_compose(const std::vector<PauliTransferMatrix>& factors) {
    if (factors.empty()) throw std::invalid_argument("ptm_compose: empty factor list");
    PauliTransferMatrix acc = ptm_identity(factors.front().k);
    const std::size_t nb = acc.dim();
    for (const auto& f : factors) {
        if (f.k != acc.k) throw std::invalid_argument("ptm_compose: size mismatch");
        PauliTransferMatrix next;
        next.k = acc.k;
        next.m.assign(nb * nb, 0.0);
        for (std::size_t r = 0; r < nb; ++r)
            for (std::size_t kk = 0; kk < nb; ++kk) {
                const double v = f.at(r, kk);
                if (v == 0.0) continue;
                for (std::size_t c = 0; c < nb; ++c) next.at(r, c) += v * acc.at(kk, c);
            }
        acc = std::move(next);
    }
    return acc;
}

NoiseSpec NoiseSpec::direct(double q1, double q2, double q_readout) {
    NoiseSpec s;
    s.q1 = q1;
    s.q2 = q2;
    s.q_readout = q_readout;
    if (q1 < 0 || q2 < 0 || q_readout < 0)
        throw std::invalid_argument("noise spec: negative probability");
    return s;
}

NoiseSpec NoiseSpec::scaled(double q_scale, double c1, double c2, std::optional<double> c_readout) {
    if (q_scale < 0 || c1 < 0 || c2 < 0)
        throw std::invalid_argument("noise spec: negative scale factor");
    // q_k = (4^{k-1} - 1/4) c_k q
    NoiseSpec s;
    s.q1 = (1.0 - 0.25) * c1 * q_scale;
    s.q2 = (4.0 - 0.25) * c2 * q_scale;
    s.q_readout = (1.0 - 0.25) * c_readout.value_or(c1) * q_scale;
    return s;
}

bool NoiseSpec::is_zero() const {
    return q1 == 0.0 && q2 == 0.0 && q_readout == 0.0 && parameter_sigma2 == 0.0;
}

int VirtualParameterRegistry::merged_count() const {
    int c = 0;
    for (const auto& e : entries) c += e.merged ? 1 : 0;
    return c;
}

double VirtualParameterRegistry::total_variance() const {
    double t = 0.0;
    for (const auto& e : entries) t += e.sigma2;
    return t;
}

std::vector<std::vector<int>> NoisyCircuit::entries_by_position() const {
    std::vector<std::vector<int>> by_pos(circuit.gates.size() + 1);
    for (std::size_t i = 0; i < registry.entries.size(); ++i) {
        const int pos = registry.entries[i].position;
        if (pos < 0 || pos > static_cast<int>(circuit.gates.size()))
            throw std::invalid_argument("registry: entry position out of range");
        by_pos[static_cast<std::size_t>(pos)].push_back(static_cast<int>(i));
    }
    return by_pos;
}

namespace {

// Channels directly after a rotation gate with the same generator sit on the
// same virtual axis as the real parameter; their second derivatives coincide,
// so their variance is accounted on the real slot.
void flag_if_merged(VirtualEntry& entry, const Circuit& circuit) {
    if (entry.position == 0) return;
    const Gate& before = circuit.gates[static_cast<std::size_t>(entry.position - 1)];
    if (const auto* rot = std::get_if<RotationGate>(&before)) {
        if (rot->generator == entry.generator) {
            entry.merged = true;
            entry.merged_slot = rot->slot;
        }
    }
}

void append_depolarizing_entries(NoisyCircuit& nc, int gate_index, const std::vector<int>& support,
                                 double q, NoiseOrigin::Kind kind) {
    const int k = static_cast<int>(support.size());
    const double sigma2 = depolarizing_gaussian_variance(k, q);
    NoiseOrigin origin;
    origin.kind = kind;
    origin.gate_index = gate_index;
    origin.k = k;
    origin.q = q;
    const int position = gate_index + 1;
    for (const PauliString& p : nonidentity_paulis_on(nc.circuit.num_qubits, support)) {
        VirtualEntry e;
        e.position = position;
        e.generator = p;
        e.sigma2 = sigma2;
        e.origin = origin;
        flag_if_merged(e, nc.circuit);
        nc.registry.entries.push_back(std::move(e));
    }
}

} // namespace

NoisyCircuit insert_noise(const Circuit& circuit, const NoiseSpec& spec) {
    circuit.validate();
    NoisyCircuit nc;
    nc.circuit = circuit;
    const int n = circuit.num_qubits;

    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        if (spec.parameter_sigma2 > 0.0) {
            if (const auto* rot = std::get_if<RotationGate>(&circuit.gates[g])) {
                VirtualEntry e;
                e.position = static_cast<int>(g) + 1;
                e.generator = rot->generator;
                e.sigma2 = spec.parameter_sigma2;
                e.origin = {NoiseOrigin::Kind::Parameter, static_cast<int>(g), 0, 0.0};
                e.merged = true;
                e.merged_slot = rot->slot;
                nc.registry.entries.push_back(std::move(e));
            }
        }
        const auto support = Circuit::gate_support(circuit.gates[g], n);
        const int k = static_cast<int>(support.size());
        if (k == 1 && spec.q1 > 0.0)
            append_depolarizing_entries(nc, static_cast<int>(g), support, spec.q1,
                                        NoiseOrigin::Kind::GateDepolarizing);
        else if (k == 2 && spec.q2 > 0.0)
            append_depolarizing_entries(nc, static_cast<int>(g), support, spec.q2,
                                        NoiseOrigin::Kind::GateDepolarizing);
        else if (k > 2 && (spec.q1 > 0.0 || spec.q2 > 0.0))
            throw std::invalid_argument("insert_noise: gates above 2 qubits not covered by spec");
    }

    if (spec.q_readout > 0.0) {
        const int last = static_cast<int>(circuit.gates.size()) - 1;
        for (int q = 0; q < n; ++q)
            append_depolarizing_entries(nc, last, {q}, spec.q_readout, NoiseOrigin::Kind::Readout);
    }
    return nc;
}

void add_parameter_noise(NoisyCircuit& nc, int slot, double sigma2) {
    if (sigma2 < 0.0) throw std::invalid_argument("add_parameter_noise: negative variance");
    if (sigma2 == 0.0) return; // registry entries carry strictly positive variance
    for (std::size_t g = 0; g < nc.circuit.gates.size(); ++g) {
        if (const auto* rot = std::get_if<RotationGate>(&nc.circuit.gates[g])) {
            if (rot->slot != slot) continue;
            VirtualEntry e;
            e.position = static_cast<int>(g) + 1;
            e.generator = rot->generator;
            e.sigma2 = sigma2;
            e.origin = {NoiseOrigin::Kind::Parameter, static_cast<int>(g), 0, 0.0};
            e.merged = true;
            e.merged_slot = slot;
            nc.registry.entries.push_back(std::move(e));
            return;
        }
    }
    throw std::invalid_argument("add_parameter_noise: no rotation gate with that slot");
}

StateVector run_circuit(const NoisyCircuit& nc, std::span<const double> params,
                        std::span<const double> virtual_params, const StateVector& input) {
    if (virtual_params.size() != nc.registry.size())
        throw std::invalid_argument("run_circuit: virtual parameter length mismatch");
    if (static_cast<int>(params.size()) != nc.circuit.num_params)
        throw std::invalid_argument("run_circuit: parameter vector length mismatch");
    const auto by_pos = nc.entries_by_position();
    StateVector psi = input;
    for (std::size_t pos = 0; pos <= nc.circuit.gates.size(); ++pos) {
        for (int idx : by_pos[pos]) {
            const double angle = virtual_params[static_cast<std::size_t>(idx)];
            if (angle != 0.0)
                apply_rotation(psi, nc.registry.entries[static_cast<std::size_t>(idx)].generator,
                               angle);
        }
        if (pos < nc.circuit.gates.size()) apply_gate(psi, nc.circuit.gates[pos], params);
    }
    return psi;
}

DensityMatrix evolve_density(const DensityMatrix& rho, const NoisyCircuit& nc,
                             std::span<const double> params, std::span<const VirtualShift> shifts,
                             int qubit_cap, bool noise_on_shift_gates) {
    if (nc.circuit.num_qubits > qubit_cap)
        throw qubit_cap_exceeded("evolve_density: circuit exceeds exact-mode qubit cap");
    if (rho.num_qubits != nc.circuit.num_qubits)
        throw std::invalid_argument("evolve_density: density matrix qubit count mismatch");
    if (static_cast<int>(params.size()) != nc.circuit.num_params)
        throw std::invalid_argument("evolve_density: parameter vector length mismatch");

    std::vector<double> shift_angle(nc.registry.size(), 0.0);
    for (const VirtualShift& s : shifts) {
        if (s.entry_index < 0 || static_cast<std::size_t>(s.entry_index) >= nc.registry.size())
            throw std::invalid_argument("evolve_density: shift index out of range");
        shift_angle[static_cast<std::size_t>(s.entry_index)] += s.angle;
    }

    const auto by_pos = nc.entries_by_position();
    DensityMatrix out = rho;
    for (std::size_t pos = 0; pos <= nc.circuit.gates.size(); ++pos) {
        for (int idx : by_pos[pos]) {
            const auto& entry = nc.registry.entries[static_cast<std::size_t>(idx)];
            const double angle = shift_angle[static_cast<std::size_t>(idx)];
            if (angle != 0.0) {
                density_apply_rotation(out, entry.generator, angle);
                if (noise_on_shift_gates && entry.sigma2 > 0.0)
                    density_apply_stochastic_pauli(out, entry.generator,
                                                   stochastic_of_variance(entry.sigma2));
            }
            if (entry.sigma2 > 0.0)
                density_apply_stochastic_pauli(out, entry.generator,
                                               stochastic_of_variance(entry.sigma2));
        }
        if (pos < nc.circuit.gates.size())
            density_apply_gate(out, nc.circuit.gates[pos], params);
    }
    return out;
}

double SlotVariances::total() const {
    double t = 0.0;
    for (double v : real) t += v;
    for (const auto& [idx, v] : virtuals) t += v;
    return t;
}

std::size_t SlotVariances::active_count(double threshold) const {
    std::size_t c = 0;
    for (double v : real) c += (v > threshold) ? 1 : 0;
    for (const auto& [idx, v] : virtuals) c += (v > threshold) ? 1 : 0;
    return c;
}

SlotVariances collect_slot_variances(const NoisyCircuit& nc) {
    SlotVariances sv;
    sv.real.assign(static_cast<std::size_t>(nc.circuit.num_params), 0.0);
    for (std::size_t i = 0; i < nc.registry.size(); ++i) {
        const auto& e = nc.registry.entries[i];
        if (e.merged)
            sv.real[static_cast<std::size_t>(e.merged_slot)] += e.sigma2;
        else
            sv.virtuals.emplace_back(static_cast<int>(i), e.sigma2);
    }
    return sv;
}

} // namespace vqnoise
