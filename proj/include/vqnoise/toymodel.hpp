#ifndef VQNOISE_TOYMODEL_HPP
#define VQNOISE_TOYMODEL_HPP

#include <cstdint>

#include "vqnoise/bounds.hpp"
#include "vqnoise/cost.hpp"

namespace vqnoise {

// Artificial-spectrum model: a random layered ansatz whose action at a drawn
// optimum defines the eigenbasis of the target operator, so the noiseless
// minimum sits exactly at E0.
struct ToyModelSpec {
    int n = 4;
    int depth = 2;
    double e0 = 1.0;
    double e1 = 51.0;
    double emax = 100.0;
    std::uint64_t circuit_seed = 1;
    std::uint64_t spectrum_seed = 2;
    std::uint64_t theta_opt_seed = 3;

    void validate() const; // E0 < E1 <= Emax, n >= 2, depth >= 1
};

// Per layer: one single-qubit rotation per qubit with an axis drawn uniformly
// from {X, Y, Z}, then CZ on the adjacent pairs of a linear chain (no wrap).
// M = n * depth parameters, (n-1) * depth CZ gates.
Circuit build_ansatz(int n, int depth, std::uint64_t seed);

struct ToyModel {
    ToyModelSpec spec;
    Circuit ansatz;
    std::vector<double> theta_opt;
    Observable hamiltonian; // spectral form over the ansatz at theta_opt
    SpectrumInfo spectrum;
    CostFunction cost; // single term, input |0...0>
};

// Eigenvalues: E0, E1 and Emax fixed; the 2^n - 3 middle ones drawn uniformly
// on (E1, Emax) and sorted. theta_opt drawn uniformly on [0, 2pi).
ToyModel build_toy_model(const ToyModelSpec& spec);

} // namespace vqnoise

#endif
