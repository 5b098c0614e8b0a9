#include "vqnoise/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace vqnoise {

namespace {

// Entering an OpenMP region costs microseconds even with a false if-clause,
// which dwarfs the work on the small registers the bound checks run at. Only
// touch the runtime above the cutoff.
template <typename Body>
void maybe_parallel_for(std::int64_t n, std::int64_t work, Body&& body) {
    if (work >= static_cast<std::int64_t>(kern::kParallelCutoff)) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) body(i);
    } else {
        for (std::int64_t i = 0; i < n; ++i) body(i);
    }
}

} // namespace

namespace kern {

namespace {

using std::int64_t;
using u64 = std::uint64_t;

u64 qubit_bit(int num_qubits, int qubit) {
    if (qubit < 0 || qubit >= num_qubits)
        throw std::out_of_range("kernel: qubit index out of range");
    return u64{1} << (num_qubits - 1 - qubit);
}

} // namespace

void rotation(std::span<cplx> amps, int num_qubits, const PauliString& generator, double angle) {
    if (generator.num_qubits() != num_qubits)
        throw std::out_of_range("rotation: generator acts outside the register");
    const int64_t dim = static_cast<int64_t>(amps.size());
    const double c = std::cos(0.5 * angle);
    const cplx mis{0.0, -std::sin(0.5 * angle)}; // -i sin(t/2)
    const u64 flip = generator.flip_mask();

    if (flip == 0) {
        // Z-type string: diagonal, phase(i) = +-1.
        maybe_parallel_for(dim, dim, [&](int64_t i) {
            const cplx ph = generator.phase(static_cast<u64>(i));
            amps[static_cast<std::size_t>(i)] *= c + mis * ph;
        });
        return;
    }

    maybe_parallel_for(dim, dim, [&](int64_t i) {
        const u64 j = static_cast<u64>(i) ^ flip;
        if (static_cast<u64>(i) >= j) return; // each pair handled once
        const cplx ai = amps[static_cast<std::size_t>(i)];
        const cplx aj = amps[j];
        // <i|A|j> = phase(j), <j|A|i> = phase(i)
        amps[static_cast<std::size_t>(i)] = c * ai + mis * generator.phase(j) * aj;
        amps[j] = c * aj + mis * generator.phase(static_cast<u64>(i)) * ai;
    });
}

void pauli(std::span<cplx> amps, int num_qubits, const PauliString& op) {
    if (op.num_qubits() != num_qubits)
        throw std::out_of_range("pauli: operator acts outside the register");
    const int64_t dim = static_cast<int64_t>(amps.size());
    const u64 flip = op.flip_mask();

    if (flip == 0) {
        maybe_parallel_for(dim, dim, [&](int64_t i) {
            amps[static_cast<std::size_t>(i)] *= op.phase(static_cast<u64>(i));
        });
        return;
    }

    maybe_parallel_for(dim, dim, [&](int64_t i) {
        const u64 j = static_cast<u64>(i) ^ flip;
        if (static_cast<u64>(i) >= j) return;
        const cplx ai = amps[static_cast<std::size_t>(i)];
        amps[static_cast<std::size_t>(i)] = op.phase(j) * amps[j];
        amps[j] = op.phase(static_cast<u64>(i)) * ai;
    });
}

void cz(std::span<cplx> amps, int num_qubits, int qubit_a, int qubit_b) {
    const u64 mask = qubit_bit(num_qubits, qubit_a) | qubit_bit(num_qubits, qubit_b);
    const int64_t dim = static_cast<int64_t>(amps.size());
    maybe_parallel_for(dim, dim, [&](int64_t i) {
        if ((static_cast<u64>(i) & mask) == mask)
            amps[static_cast<std::size_t>(i)] = -amps[static_cast<std::size_t>(i)];
    });
}

void unitary(std::span<cplx> amps, int num_qubits, const std::vector<int>& qubits,
             const Matrix& u) {
    const int k = static_cast<int>(qubits.size());
    const std::size_t block = std::size_t{1} << k;
    if (u.dim() != block) throw std::invalid_argument("unitary: matrix dim != 2^k");
    if (block > 64) throw std::invalid_argument("unitary: custom gates limited to 6 qubits");

    std::vector<u64> bits(qubits.size());
    for (std::size_t t = 0; t < qubits.size(); ++t)
        bits[t] = qubit_bit(num_qubits, qubits[static_cast<std::size_t>(t)]);
    u64 target_mask = 0;
    for (u64 b : bits) target_mask |= b;

    const int64_t groups = static_cast<int64_t>(amps.size() >> k);
    maybe_parallel_for(groups, static_cast<int64_t>(amps.size()), [&](int64_t g) {
        // Spread group index over the non-target bit positions.
        u64 base = 0;
        u64 rem = static_cast<u64>(g);
        for (u64 bit = 1; bit < amps.size(); bit <<= 1) {
            if (bit & target_mask) continue;
            if (rem & 1) base |= bit;
            rem >>= 1;
        }
        cplx in[64];
        for (std::size_t v = 0; v < block; ++v) {
            u64 idx = base;
            for (std::size_t t = 0; t < bits.size(); ++t)
                if (v & (block >> (t + 1))) idx |= bits[t];
            in[v] = amps[idx];
        }
        for (std::size_t r = 0; r < block; ++r) {
            cplx acc{0.0, 0.0};
            for (std::size_t cidx = 0; cidx < block; ++cidx) acc += u(r, cidx) * in[cidx];
            u64 idx = base;
            for (std::size_t t = 0; t < bits.size(); ++t)
                if (r & (block >> (t + 1))) idx |= bits[t];
            amps[idx] = acc;
        }
    });
}

} // namespace kern

void apply_rotation(StateVector& psi, const PauliString& generator, double angle) {
    kern::rotation(psi.amps, psi.num_qubits, generator, angle);
}

void apply_pauli(StateVector& psi, const PauliString& op) {
    kern::pauli(psi.amps, psi.num_qubits, op);
}

void apply_gate(StateVector& psi, const Gate& gate, std::span<const double> params) {
    if (const auto* rot = std::get_if<RotationGate>(&gate)) {
        apply_rotation(psi, rot->generator, params[static_cast<std::size_t>(rot->slot)]);
    } else {
        const auto& fg = std::get<FixedGate>(gate);
        if (fg.kind == FixedGate::Kind::CZ)
            kern::cz(psi.amps, psi.num_qubits, fg.qubits[0], fg.qubits[1]);
        else
            kern::unitary(psi.amps, psi.num_qubits, fg.qubits, fg.matrix);
    }
}

void apply_gate_inverse(StateVector& psi, const Gate& gate, std::span<const double> params) {
    if (const auto* rot = std::get_if<RotationGate>(&gate)) {
        apply_rotation(psi, rot->generator, -params[static_cast<std::size_t>(rot->slot)]);
    } else {
        const auto& fg = std::get<FixedGate>(gate);
        if (fg.kind == FixedGate::Kind::CZ)
            kern::cz(psi.amps, psi.num_qubits, fg.qubits[0], fg.qubits[1]);
        else
            kern::unitary(psi.amps, psi.num_qubits, fg.qubits, fg.matrix.adjoint());
    }
}

StateVector run_circuit(const Circuit& circuit, std::span<const double> params,
                        const StateVector& input) {
    if (static_cast<int>(params.size()) != circuit.num_params)
        throw std::invalid_argument("run_circuit: parameter vector length mismatch");
    if (input.num_qubits != circuit.num_qubits)
        throw std::invalid_argument("run_circuit: input state qubit count mismatch");
    StateVector psi = input;
    for (const Gate& g : circuit.gates) apply_gate(psi, g, params);
    return psi;
}

StateVector run_circuit_inverse(const Circuit& circuit, std::span<const double> params,
                                const StateVector& input) {
    if (static_cast<int>(params.size()) != circuit.num_params)
        throw std::invalid_argument("run_circuit_inverse: parameter vector length mismatch");
    if (input.num_qubits != circuit.num_qubits)
        throw std::invalid_argument("run_circuit_inverse: input state qubit count mismatch");
    StateVector psi = input;
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it)
        apply_gate_inverse(psi, *it, params);
    return psi;
}

namespace {

// rho <- U rho: statevector kernel down each column; rho <- rho U^dagger:
// conjugate each (contiguous) row, run the same kernel, conjugate back.
template <typename Kernel>
void density_conjugate(DensityMatrix& rho, Kernel&& k) {
    const std::size_t d = rho.dim();
    const std::int64_t dd = static_cast<std::int64_t>(d);
    const bool big = dd * dd >= static_cast<std::int64_t>(kern::kParallelCutoff);

    if (big) {
#pragma omp parallel
        {
            std::vector<cplx> col(d);
#pragma omp for schedule(static)
            for (std::int64_t c = 0; c < dd; ++c) {
                for (std::size_t r = 0; r < d; ++r)
                    col[r] = rho.at(r, static_cast<std::size_t>(c));
                k(std::span<cplx>(col));
                for (std::size_t r = 0; r < d; ++r)
                    rho.at(r, static_cast<std::size_t>(c)) = col[r];
            }
#pragma omp for schedule(static)
            for (std::int64_t r = 0; r < dd; ++r) {
                std::span<cplx> row(rho.a.data() + static_cast<std::size_t>(r) * d, d);
                for (cplx& v : row) v = std::conj(v);
                k(row);
                for (cplx& v : row) v = std::conj(v);
            }
        }
        return;
    }

    std::vector<cplx> col(d);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t r = 0; r < d; ++r) col[r] = rho.at(r, c);
        k(std::span<cplx>(col));
        for (std::size_t r = 0; r < d; ++r) rho.at(r, c) = col[r];
    }
    for (std::size_t r = 0; r < d; ++r) {
        std::span<cplx> row(rho.a.data() + r * d, d);
        for (cplx& v : row) v = std::conj(v);
        k(row);
        for (cplx& v : row) v = std::conj(v);
    }
}

} // namespace

void density_apply_rotation(DensityMatrix& rho, const PauliString& generator, double angle) {
    density_conjugate(rho, [&](std::span<cplx> v) {
        kern::rotation(v, rho.num_qubits, generator, angle);
    });
}

void density_apply_gate(DensityMatrix& rho, const Gate& gate, std::span<const double> params) {
    density_conjugate(rho, [&](std::span<cplx> v) {
        if (const auto* rot = std::get_if<RotationGate>(&gate)) {
            kern::rotation(v, rho.num_qubits, rot->generator,
                           params[static_cast<std::size_t>(rot->slot)]);
        } else {
            const auto& fg = std::get<FixedGate>(gate);
            if (fg.kind == FixedGate::Kind::CZ)
                kern::cz(v, rho.num_qubits, fg.qubits[0], fg.qubits[1]);
            else
                kern::unitary(v, rho.num_qubits, fg.qubits, fg.matrix);
        }
    });
}

void density_apply_gate_inverse(DensityMatrix& rho, const Gate& gate,
                                std::span<const double> params) {
    density_conjugate(rho, [&](std::span<cplx> v) {
        if (const auto* rot = std::get_if<RotationGate>(&gate)) {
            kern::rotation(v, rho.num_qubits, rot->generator,
                           -params[static_cast<std::size_t>(rot->slot)]);
        } else {
            const auto& fg = std::get<FixedGate>(gate);
            if (fg.kind == FixedGate::Kind::CZ)
                kern::cz(v, rho.num_qubits, fg.qubits[0], fg.qubits[1]);
            else
                kern::unitary(v, rho.num_qubits, fg.qubits, fg.matrix.adjoint());
        }
    });
}

void density_apply_stochastic_pauli(DensityMatrix& rho, const PauliString& generator, double p) {
    if (generator.num_qubits() != rho.num_qubits)
        throw std::invalid_argument("stochastic pauli: qubit count mismatch");
    if (p < 0.0) throw std::invalid_argument("stochastic pauli: negative probability");
    if (p == 0.0) return;
    const std::size_t d = rho.dim();
    const std::int64_t dd = static_cast<std::int64_t>(d);
    const std::uint64_t flip = generator.flip_mask();
    const double keep = 1.0 - p;

    if (flip == 0) {
        // (A rho A)_{ij} = phase(i) phase(j) rho_{ij}, phases +-1
        maybe_parallel_for(dd, dd * dd, [&](std::int64_t r) {
            const cplx pr = generator.phase(static_cast<std::uint64_t>(r));
            for (std::size_t c = 0; c < d; ++c) {
                const cplx pc = generator.phase(c);
                rho.at(static_cast<std::size_t>(r), c) *= keep + p * (pr * pc).real();
            }
        });
        return;
    }

    // Pairs {(i,j), (i^flip, j^flip)}; iterate i < i^flip so each pair is
    // touched once. (A rho A)_{ij} = phase(i^flip) phase(j) rho_{i^flip, j^flip}.
    maybe_parallel_for(dd, dd * dd, [&](std::int64_t ri) {
        const auto i = static_cast<std::uint64_t>(ri);
        const std::uint64_t ix = i ^ flip;
        if (i >= ix) return;
        const cplx pi = generator.phase(i);
        const cplx pix = generator.phase(ix);
        for (std::size_t j = 0; j < d; ++j) {
            const std::uint64_t jx = j ^ flip;
            const cplx pj = generator.phase(j);
            const cplx pjx = generator.phase(jx);
            const cplx a = rho.at(i, j);
            const cplx b = rho.at(ix, jx);
            rho.at(i, j) = keep * a + p * pix * pj * b;
            rho.at(ix, jx) = keep * b + p * pi * pjx * a;
        }
    });
}

void density_apply_depolarizing(DensityMatrix& rho, const std::vector<int>& targets, double q) {
    const int k = static_cast<int>(targets.size());
    const double denom = std::pow(4.0, k) - 1.0;
    if (q < 0.0 || q >= denom / std::pow(4.0, k))
        throw std::invalid_argument("depolarizing: q out of range");
    if (q == 0.0) return;

    DensityMatrix acc(rho.num_qubits);
    const double w = q / denom;
    for (const PauliString& p : nonidentity_paulis_on(rho.num_qubits, targets)) {
        const std::uint64_t flip = p.flip_mask();
        const std::size_t d = rho.dim();
        for (std::size_t i = 0; i < d; ++i) {
            const cplx pix = p.phase(i ^ flip);
            for (std::size_t j = 0; j < d; ++j)
                acc.at(i, j) += pix * p.phase(j) * rho.at(i ^ flip, j ^ flip);
        }
    }
    for (std::size_t idx = 0; idx < rho.a.size(); ++idx)
        rho.a[idx] = (1.0 - q) * rho.a[idx] + w * acc.a[idx];
}

} // namespace vqnoise
