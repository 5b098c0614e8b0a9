#include "vqnoise/ref.hpp"

#include <cmath>
#include <stdexcept>

namespace vqnoise::ref {

Matrix pauli_matrix(const PauliString& p) {
    const std::size_t d = dim_of(p.num_qubits());
    Matrix m(d);
    const std::uint64_t flip = p.flip_mask();
    for (std::size_t i = 0; i < d; ++i) m(i ^ flip, i) = p.phase(i);
    return m;
}

Matrix embed(int num_qubits, const std::vector<int>& qubits, const Matrix& u) {
    const std::size_t d = dim_of(num_qubits);
    const std::size_t block = std::size_t{1} << qubits.size();
    if (u.dim() != block) throw std::invalid_argument("embed: matrix dim != 2^k");
    std::vector<std::uint64_t> bits(qubits.size());
    for (std::size_t t = 0; t < qubits.size(); ++t) {
        const int q = qubits[t];
        if (q < 0 || q >= num_qubits) throw std::invalid_argument("embed: qubit out of range");
        bits[t] = std::uint64_t{1} << (num_qubits - 1 - q);
    }

    auto local = [&](std::size_t full) {
        std::size_t v = 0;
        for (std::size_t t = 0; t < bits.size(); ++t)
            if (full & bits[t]) v |= block >> (t + 1);
        return v;
    };
    std::uint64_t target_mask = 0;
    for (auto b : bits) target_mask |= b;

    Matrix m(d);
    for (std::size_t col = 0; col < d; ++col) {
        const std::size_t rest = col & ~target_mask;
        const std::size_t lc = local(col);
        for (std::size_t lr = 0; lr < block; ++lr) {
            std::size_t row = rest;
            for (std::size_t t = 0; t < bits.size(); ++t)
                if (lr & (block >> (t + 1))) row |= bits[t];
            m(row, col) = u(lr, lc);
        }
    }
    return m;
}

Matrix gate_matrix(const Gate& gate, int num_qubits, std::span<const double> params) {
    const std::size_t d = dim_of(num_qubits);
    if (const auto* rot = std::get_if<RotationGate>(&gate)) {
        const double t = params[static_cast<std::size_t>(rot->slot)];
        Matrix m = cplx{std::cos(0.5 * t), 0.0} * Matrix::identity(d);
        Matrix a = pauli_matrix(rot->generator);
        return m - (cplx{0.0, std::sin(0.5 * t)} * a);
    }
    const auto& fg = std::get<FixedGate>(gate);
    if (fg.kind == FixedGate::Kind::CZ) {
        Matrix m = Matrix::identity(d);
        const std::uint64_t ba = std::uint64_t{1} << (num_qubits - 1 - fg.qubits[0]);
        const std::uint64_t bb = std::uint64_t{1} << (num_qubits - 1 - fg.qubits[1]);
        for (std::size_t i = 0; i < d; ++i)
            if ((i & ba) && (i & bb)) m(i, i) = -1.0;
        return m;
    }
    return embed(num_qubits, fg.qubits, fg.matrix);
}

Matrix circuit_matrix(const Circuit& circuit, std::span<const double> params) {
    Matrix m = Matrix::identity(dim_of(circuit.num_qubits));
    for (const Gate& g : circuit.gates) m = gate_matrix(g, circuit.num_qubits, params) * m;
    return m;
}

StateVector run_circuit(const Circuit& circuit, std::span<const double> params,
                        const StateVector& input) {
    StateVector out = input;
    for (const Gate& g : circuit.gates)
        out.amps = gate_matrix(g, circuit.num_qubits, params).apply(out.amps);
    return out;
}

DensityMatrix conjugate(const Matrix& u, const DensityMatrix& rho) {
    const std::size_t d = rho.dim();
    if (u.dim() != d) throw std::invalid_argument("conjugate: dimension mismatch");
    Matrix r(d, rho.a);
    Matrix out = u * r * u.adjoint();
    DensityMatrix res(rho.num_qubits);
    res.a = out.data();
    return res;
}

DensityMatrix stochastic_pauli(const PauliString& generator, double p, const DensityMatrix& rho) {
    Matrix a = pauli_matrix(generator);
    DensityMatrix kicked = conjugate(a, rho);
    DensityMatrix out = rho;
    for (std::size_t i = 0; i < out.a.size(); ++i)
        out.a[i] = (1.0 - p) * rho.a[i] + p * kicked.a[i];
    return out;
}

DensityMatrix depolarizing(const std::vector<int>& targets, double q, int num_qubits,
                           const DensityMatrix& rho) {
    const double denom = std::pow(4.0, static_cast<int>(targets.size())) - 1.0;
    DensityMatrix acc(num_qubits);
    for (const PauliString& p : nonidentity_paulis_on(num_qubits, targets)) {
        DensityMatrix kicked = conjugate(pauli_matrix(p), rho);
        for (std::size_t i = 0; i < acc.a.size(); ++i) acc.a[i] += kicked.a[i];
    }
    DensityMatrix out = rho;
    for (std::size_t i = 0; i < out.a.size(); ++i)
        out.a[i] = (1.0 - q) * rho.a[i] + (q / denom) * acc.a[i];
    return out;
}

} // namespace vqnoise::ref
