#include "vqnoise/toymodel.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "vqnoise/rng.hpp"

namespace vqnoise {

void ToyModelSpec::validate() const {
    if (n < 2) throw std::invalid_argument("toy model: n >= 2 required");
    if (depth < 1) throw std::invalid_argument("toy model: depth >= 1 required");
    if (!(e0 < e1) || !(e1 <= emax))
        throw std::invalid_argument("toy model: require E0 < E1 <= Emax");
}

Circuit build_ansatz(int n, int depth, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("build_ansatz: n >= 2 required");
    if (depth < 1) throw std::invalid_argument("build_ansatz: depth >= 1 required");
    auto engine = make_engine(seed);
    std::uniform_int_distribution<int> axis(0, 2);
    static const char kAxes[3] = {'X', 'Y', 'Z'};

    Circuit c;
    c.num_qubits = n;
    for (int layer = 0; layer < depth; ++layer) {
        for (int q = 0; q < n; ++q)
            c.add_rotation(PauliString::single(n, q, kAxes[axis(engine)]));
        for (int q = 0; q + 1 < n; ++q) c.add_fixed(make_cz(q, q + 1));
    }
    c.validate();
    return c;
}

ToyModel build_toy_model(const ToyModelSpec& spec) {
    spec.validate();
    ToyModel model;
    model.spec = spec;
    model.ansatz = build_ansatz(spec.n, spec.depth, spec.circuit_seed);

    auto theta_engine = make_engine(spec.theta_opt_seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    model.theta_opt.resize(static_cast<std::size_t>(model.ansatz.num_params));
    for (double& t : model.theta_opt) t = angle(theta_engine);

    const std::size_t d = dim_of(spec.n);
    std::vector<double> eigenvalues(d);
    eigenvalues.front() = spec.e0;
    eigenvalues[1] = spec.e1;
    eigenvalues.back() = spec.emax;
    auto spectrum_engine = make_engine(spec.spectrum_seed);
    std::uniform_real_distribution<double> middle(spec.e1, spec.emax);
    for (std::size_t i = 2; i + 1 < d; ++i) eigenvalues[i] = middle(spectrum_engine);
    std::sort(eigenvalues.begin() + 1, eigenvalues.end() - 1);

    model.hamiltonian =
        make_spectral_observable(eigenvalues, model.ansatz, model.theta_opt);
    model.spectrum = SpectrumInfo::single(spec.e0, spec.e1, spec.emax);
    model.cost.circuit = model.ansatz;
    model.cost.terms.push_back({model.hamiltonian, StateVector::basis(spec.n, 0)});
    model.cost.validate();
    return model;
}

} // namespace vqnoise
