#include "vqnoise/cost.hpp"

#include <cmath>
#include <stdexcept>

#include "vqnoise/errors.hpp"
#include "vqnoise/kernels.hpp"
#include "vqnoise/rng.hpp"
#include "vqnoise/stats.hpp"

namespace vqnoise {

void CostFunction::validate() const {
    circuit.validate();
    if (terms.empty()) throw std::invalid_argument("cost function: no terms");
    for (const CostTerm& t : terms) {
        if (observable_qubits(t.obs) != circuit.num_qubits)
            throw std::invalid_argument("cost function: observable qubit count mismatch");
        if (t.input.num_qubits != circuit.num_qubits)
            throw std::invalid_argument("cost function: input state qubit count mismatch");
        if (std::abs(t.input.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("cost function: input state not normalized");
    }
}

bool CostFunction::common_input_state() const {
    for (std::size_t l = 1; l < terms.size(); ++l)
        if (max_abs_diff(terms[l].input, terms[0].input) > 1e-12) return false;
    return true;
}

double eval_cost(const CostFunction& cf, std::span<const double> theta) {
    if (static_cast<int>(theta.size()) != cf.circuit.num_params)
        throw std::invalid_argument("eval_cost: parameter vector length mismatch");
    double c = 0.0;
    for (const CostTerm& t : cf.terms)
        c += expectation(run_circuit(cf.circuit, theta, t.input), t.obs);
    return c;
}

std::vector<double> gradient(const CostFunction& cf, std::span<const double> theta) {
    std::vector<double> shifted(theta.begin(), theta.end());
    std::vector<double> g(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        shifted[i] = theta[i] + 0.5 * kPi;
        const double plus = eval_cost(cf, shifted);
        shifted[i] = theta[i] - 0.5 * kPi;
        const double minus = eval_cost(cf, shifted);
        shifted[i] = theta[i];
        g[i] = 0.5 * (plus - minus);
    }
    return g;
}

namespace {

// Noiseless cost with one virtual rotation inserted at its registry position.
double eval_cost_with_virtual(const CostFunction& cf, const VirtualParameterRegistry& registry,
                              std::span<const double> theta, int entry_index, double angle) {
    const auto& entry = registry.entries.at(static_cast<std::size_t>(entry_index));
    double c = 0.0;
    for (const CostTerm& t : cf.terms) {
        StateVector psi = t.input;
        for (std::size_t g = 0; g <= cf.circuit.gates.size(); ++g) {
            if (static_cast<int>(g) == entry.position) apply_rotation(psi, entry.generator, angle);
            if (g < cf.circuit.gates.size()) apply_gate(psi, cf.circuit.gates[g], theta);
        }
        c += expectation(psi, t.obs);
    }
    return c;
}

StateVector circuit_state_with_virtual(const CostFunction& cf,
                                       const VirtualParameterRegistry& registry,
                                       std::span<const double> theta, int entry_index,
                                       double angle) {
    const auto& entry = registry.entries.at(static_cast<std::size_t>(entry_index));
    StateVector psi = cf.terms[0].input;
    for (std::size_t g = 0; g <= cf.circuit.gates.size(); ++g) {
        if (static_cast<int>(g) == entry.position) apply_rotation(psi, entry.generator, angle);
        if (g < cf.circuit.gates.size()) apply_gate(psi, cf.circuit.gates[g], theta);
    }
    return psi;
}

} // namespace

double second_derivative(const CostFunction& cf, std::span<const double> theta, int slot) {
    if (slot < 0 || slot >= cf.circuit.num_params)
        throw std::invalid_argument("second_derivative: slot out of range");
    std::vector<double> shifted(theta.begin(), theta.end());
    shifted[static_cast<std::size_t>(slot)] += kPi;
    return 0.5 * (eval_cost(cf, shifted) - eval_cost(cf, theta));
}

double second_derivative(const CostFunction& cf, const VirtualParameterRegistry& registry,
                         std::span<const double> theta, Slot slot) {
    if (slot.kind == Slot::Kind::Real) return second_derivative(cf, theta, slot.index);
    if (slot.index < 0 || static_cast<std::size_t>(slot.index) >= registry.size())
        throw std::invalid_argument("second_derivative: virtual slot out of range");
    const double shifted = eval_cost_with_virtual(cf, registry, theta, slot.index, kPi);
    return 0.5 * (shifted - eval_cost(cf, theta));
}

double fubini_diag(const CostFunction& cf, std::span<const double> theta, int slot) {
    return fubini_diag(cf, VirtualParameterRegistry{}, theta, Slot::real(slot));
}

double fubini_diag(const CostFunction& cf, const VirtualParameterRegistry& registry,
                   std::span<const double> theta, Slot slot) {
    if (!cf.common_input_state())
        throw std::invalid_argument("fubini_diag: requires a common input state across terms");
    StateVector base = run_circuit(cf.circuit, theta, cf.terms[0].input);
    StateVector shifted;
    if (slot.kind == Slot::Kind::Real) {
        if (slot.index < 0 || slot.index >= cf.circuit.num_params)
            throw std::invalid_argument("fubini_diag: slot out of range");
        std::vector<double> th(theta.begin(), theta.end());
        th[static_cast<std::size_t>(slot.index)] += kPi;
        shifted = run_circuit(cf.circuit, th, cf.terms[0].input);
    } else {
        if (slot.index < 0 || static_cast<std::size_t>(slot.index) >= registry.size())
            throw std::invalid_argument("fubini_diag: virtual slot out of range");
        shifted = circuit_state_with_virtual(cf, registry, theta, slot.index, kPi);
    }
    const double overlap2 = std::norm(inner(shifted, base));
    return 0.25 * (1.0 - overlap2);
}

NoisyEvaluator::NoisyEvaluator(CostFunction cf, VirtualParameterRegistry registry)
    : cf_(std::move(cf)), registry_(std::move(registry)) {
    cf_.validate();
    nc_.circuit = cf_.circuit;
    nc_.registry = registry_;
    by_position_ = nc_.entries_by_position();
}

NoisyValue NoisyEvaluator::evaluate(std::span<const double> theta,
                                    std::span<const VirtualShift> shifts) const {
    ++eval_count_;
    if (mode == EvalMode::Exact) return evaluate_exact(theta, shifts);
    return evaluate_trajectory(theta, shifts);
}

NoisyValue NoisyEvaluator::evaluate_exact(std::span<const double> theta,
                                          std::span<const VirtualShift> shifts) const {
    double c = 0.0;
    for (const CostTerm& t : cf_.terms) {
        DensityMatrix rho = DensityMatrix::pure(t.input);
        rho = evolve_density(rho, nc_, theta, shifts, qubit_cap, noise_on_inserted_shift_gates);
        c += expectation(rho, t.obs);
    }
    return {c, 0.0};
}

NoisyValue NoisyEvaluator::evaluate_trajectory(std::span<const double> theta,
                                               std::span<const VirtualShift> shifts) const {
    if (static_cast<int>(theta.size()) != cf_.circuit.num_params)
        throw std::invalid_argument("evaluate: parameter vector length mismatch");
    if (samples < 2) throw std::invalid_argument("evaluate: trajectory mode needs samples >= 2");

    std::vector<double> shift_angle(registry_.size(), 0.0);
    for (const VirtualShift& s : shifts) {
        if (s.entry_index < 0 || static_cast<std::size_t>(s.entry_index) >= registry_.size())
            throw std::invalid_argument("evaluate: shift index out of range");
        shift_angle[static_cast<std::size_t>(s.entry_index)] += s.angle;
    }
    std::vector<double> fire_prob(registry_.size(), 0.0);
    for (std::size_t i = 0; i < registry_.size(); ++i)
        fire_prob[i] = stochastic_of_variance(registry_.entries[i].sigma2);

    std::vector<double> values(static_cast<std::size_t>(samples), 0.0);
    const std::int64_t n = samples;
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
        auto engine = make_engine(seed, static_cast<std::uint64_t>(t));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        // One noise realization per trajectory, shared across cost terms.
        std::vector<bool> fired(registry_.size(), false);
        std::vector<bool> fired_shift(registry_.size(), false);
        for (std::size_t e = 0; e < registry_.size(); ++e) {
            fired[e] = fire_prob[e] > 0.0 && u(engine) < fire_prob[e];
            if (noise_on_inserted_shift_gates && shift_angle[e] != 0.0)
                fired_shift[e] = fire_prob[e] > 0.0 && u(engine) < fire_prob[e];
        }
        double c = 0.0;
        for (const CostTerm& term : cf_.terms) {
            StateVector psi = term.input;
            for (std::size_t pos = 0; pos <= cf_.circuit.gates.size(); ++pos) {
                for (int idx : by_position_[pos]) {
                    const auto e = static_cast<std::size_t>(idx);
                    const auto& entry = registry_.entries[e];
                    if (shift_angle[e] != 0.0) {
                        apply_rotation(psi, entry.generator, shift_angle[e]);
                        if (fired_shift[e]) apply_pauli(psi, entry.generator);
                    }
                    if (fired[e]) apply_pauli(psi, entry.generator);
                }
                if (pos < cf_.circuit.gates.size())
                    apply_gate(psi, cf_.circuit.gates[pos], theta);
            }
            c += expectation(psi, term.obs);
        }
        values[static_cast<std::size_t>(t)] = c;
    }

    // Deterministic merge: plain left-to-right sums over the index order.
    const double m = mean(values);
    const double se = sample_std(values) / std::sqrt(static_cast<double>(samples));
    return {m, se};
}

double NoisyEvaluator::noisy_second_derivative(std::span<const double> theta, Slot slot,
                                               const double* base_value) const {
    const double base = base_value ? *base_value : evaluate(theta).value;
    if (slot.kind == Slot::Kind::Real) {
        if (slot.index < 0 || slot.index >= cf_.circuit.num_params)
            throw std::invalid_argument("noisy_second_derivative: slot out of range");
        std::vector<double> shifted(theta.begin(), theta.end());
        shifted[static_cast<std::size_t>(slot.index)] += kPi;
        return 0.5 * (evaluate(shifted).value - base);
    }
    if (slot.index < 0 || static_cast<std::size_t>(slot.index) >= registry_.size())
        throw std::invalid_argument("noisy_second_derivative: virtual slot out of range");
    const VirtualShift shift{slot.index, kPi};
    return 0.5 * (evaluate(theta, {&shift, 1}).value - base);
}

std::vector<double> NoisyEvaluator::gradient(std::span<const double> theta) const {
    std::vector<double> shifted(theta.begin(), theta.end());
    std::vector<double> g(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        shifted[i] = theta[i] + 0.5 * kPi;
        const double plus = evaluate(shifted).value;
        shifted[i] = theta[i] - 0.5 * kPi;
        const double minus = evaluate(shifted).value;
        shifted[i] = theta[i];
        g[i] = 0.5 * (plus - minus);
    }
    return g;
}

} // namespace vqnoise
