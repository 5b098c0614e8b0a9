#ifndef VQNOISE_COST_HPP
#define VQNOISE_COST_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "vqnoise/channels.hpp"
#include "vqnoise/observable.hpp"

namespace vqnoise {

struct CostTerm {
    Observable obs;
    StateVector input;
};

// C(theta) = sum_l <phi_l| U(theta)^dagger H_l U(theta) |phi_l>
struct CostFunction {
    Circuit circuit;
    std::vector<CostTerm> terms;

    void validate() const;
    bool common_input_state() const; // all terms share one input state
};

double eval_cost(const CostFunction& cf, std::span<const double> theta);

// Parameter-shift gradient, dC/dtheta_i = (C(theta + pi/2 e_i) - C(theta - pi/2 e_i)) / 2.
std::vector<double> gradient(const CostFunction& cf, std::span<const double> theta);

// Which parameter a derivative or shift refers to: a real slot or a registry
// entry (virtual slot).
struct Slot {
    enum class Kind { Real, Virtual };
    Kind kind = Kind::Real;
    int index = 0;

    static Slot real(int i) { return {Kind::Real, i}; }
    static Slot virt(int i) { return {Kind::Virtual, i}; }
};

// Exact second derivative via the pi-shift rule,
// d2C/dtheta_i^2 = (C(theta + pi e_i) - C(theta)) / 2, valid since A^2 = I.
double second_derivative(const CostFunction& cf, std::span<const double> theta, int slot);
// Virtual slots shift the registry entry's rotation at its position (noiseless circuit).
double second_derivative(const CostFunction& cf, const VirtualParameterRegistry& registry,
                         std::span<const double> theta, Slot slot);

// Fubini-Study metric diagonal, G_ii = (1 - |<phi(theta+pi e_i)|phi(theta)>|^2)/4.
// Requires a common input state.
double fubini_diag(const CostFunction& cf, std::span<const double> theta, int slot);
double fubini_diag(const CostFunction& cf, const VirtualParameterRegistry& registry,
                   std::span<const double> theta, Slot slot);

enum class EvalMode { Exact, Trajectory };

struct NoisyValue {
    double value = 0.0;
    double std_error = 0.0;
};

// Noisy cost evaluator over a circuit with registered channels.
//
// Exact mode propagates a density matrix through every channel
// (deterministic, std_error = 0). Trajectory mode averages `samples` pure
// runs in which each channel fires its generator independently with its
// stochastic probability; trajectory i draws from a substream keyed by
// (seed, i), so results are bit-identical for any thread count.
class NoisyEvaluator {
  public:
    NoisyEvaluator(CostFunction cf, VirtualParameterRegistry registry);

    EvalMode mode = EvalMode::Exact;
    std::int64_t samples = 100000;
    std::uint64_t seed = 0;
    int qubit_cap = 8;
    // When true, the pi-shift of a virtual slot inserts that slot's own
    // channel noise alongside the shift gate. Off by default: the inserted
    // gate is treated as noiseless.
    bool noise_on_inserted_shift_gates = false;

    const CostFunction& cost() const { return cf_; }
    const VirtualParameterRegistry& registry() const { return registry_; }
    const NoisyCircuit& noisy_circuit() const { return nc_; }

    NoisyValue evaluate(std::span<const double> theta,
                        std::span<const VirtualShift> shifts = {}) const;

    // h_slot(theta) = (C_noisy(theta + pi e_slot) - C_noisy(theta)) / 2,
    // base_value = C_noisy(theta) if already known.
    double noisy_second_derivative(std::span<const double> theta, Slot slot,
                                   const double* base_value = nullptr) const;

    std::vector<double> gradient(std::span<const double> theta) const;

    long eval_count() const { return eval_count_; }
    void reset_eval_count() { eval_count_ = 0; }

  private:
    CostFunction cf_;
    VirtualParameterRegistry registry_;
    NoisyCircuit nc_;
    std::vector<std::vector<int>> by_position_;
    mutable long eval_count_ = 0;

    NoisyValue evaluate_exact(std::span<const double> theta,
                              std::span<const VirtualShift> shifts) const;
    NoisyValue evaluate_trajectory(std::span<const double> theta,
                                   std::span<const VirtualShift> shifts) const;
};

} // namespace vqnoise

#endif
