#ifndef VQNOISE_TESTS_ORACLES_HPP
#define VQNOISE_TESTS_ORACLES_HPP

// Test-only oracles, independent of the library code paths they check:
// a cyclic Jacobi Hermitian eigensolver, finite-difference derivatives,
// random instance generators, and a least-squares sinusoid fit.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "vqnoise/bounds.hpp"
#include "vqnoise/kernels.hpp"
#include "vqnoise/matrix.hpp"
#include "vqnoise/ref.hpp"
#include "vqnoise/toymodel.hpp"

namespace vqnoise::test {

struct EigenSystem {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column i belongs to values[i]
};

// Cyclic Jacobi for complex Hermitian matrices. Fine up to dim ~ 64.
inline EigenSystem jacobi_eigensystem(Matrix a, double tol = 1e-13, int max_sweeps = 100) {
    const std::size_t n = a.dim();
    Matrix v = Matrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c) s += std::norm(a(r, c));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_norm() > tol; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double phi = std::arg(apq);
                const double theta = 0.5 * std::atan2(2.0 * std::abs(apq), app - aqq);
                const double c = std::cos(theta), s = std::sin(theta);
                const cplx eip = std::polar(1.0, phi);
                const cplx eim = std::conj(eip);
                // A <- U^H A U with the 2x2 block U = [[c, -s e^{i phi}],
                //                                      [s e^{-i phi}, c]]
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp + s * eim * arq;
                    a(r, q) = -s * eip * arp + c * arq;
                }
                for (std::size_t col = 0; col < n; ++col) {
                    const cplx apc = a(p, col), aqc = a(q, col);
                    a(p, col) = c * apc + s * eip * aqc;
                    a(q, col) = -s * eim * apc + c * aqc;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * vrp + s * eim * vrq;
                    v(r, q) = -s * eip * vrp + c * vrq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    EigenSystem es;
    es.values.resize(n);
    es.vectors = Matrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        es.values[i] = a(order[i], order[i]).real();
        for (std::size_t r = 0; r < n; ++r) es.vectors(r, i) = v(r, order[i]);
    }
    return es;
}

inline StateVector random_state(std::mt19937_64& engine, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    StateVector s(n);
    for (cplx& a : s.amps) a = cplx{g(engine), g(engine)};
    s.normalize();
    return s;
}

inline DensityMatrix random_density(std::mt19937_64& engine, int n, int rank) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(static_cast<std::size_t>(rank));
    double total = 0.0;
    for (double& x : w) {
        x = u(engine) + 1e-3;
        total += x;
    }
    DensityMatrix rho(n);
    for (double x : w) {
        const StateVector psi = random_state(engine, n);
        const DensityMatrix p = DensityMatrix::pure(psi);
        for (std::size_t i = 0; i < rho.a.size(); ++i) rho.a[i] += (x / total) * p.a[i];
    }
    return rho;
}

inline PauliString random_pauli(std::mt19937_64& engine, int n, int max_weight = 2) {
    std::uniform_int_distribution<int> wdist(1, std::min(max_weight, n));
    std::uniform_int_distribution<int> ldist(0, 2);
    const int w = wdist(engine);
    std::vector<int> qubits(static_cast<std::size_t>(n));
    std::iota(qubits.begin(), qubits.end(), 0);
    std::shuffle(qubits.begin(), qubits.end(), engine);
    std::string letters(static_cast<std::size_t>(n), 'I');
    static const char kAxes[3] = {'X', 'Y', 'Z'};
    for (int i = 0; i < w; ++i)
        letters[static_cast<std::size_t>(qubits[static_cast<std::size_t>(i)])] =
            kAxes[ldist(engine)];
    return PauliString::from_letters(letters);
}

// Rotations with weight-1/2 generators, CZ gates sprinkled in between.
inline Circuit random_circuit(std::mt19937_64& engine, int n, int num_rotations,
                              bool with_cz = true) {
    Circuit c;
    c.num_qubits = n;
    std::uniform_int_distribution<int> qdist(0, n - 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < num_rotations; ++i) {
        c.add_rotation(random_pauli(engine, n));
        if (with_cz && n >= 2 && u(engine) < 0.4) {
            const int a = qdist(engine);
            int b = qdist(engine);
            while (b == a) b = qdist(engine);
            c.add_fixed(make_cz(a, b));
        }
    }
    c.validate();
    return c;
}

inline std::vector<double> random_angles(std::mt19937_64& engine, int m) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    std::vector<double> t(static_cast<std::size_t>(m));
    for (double& x : t) x = u(engine);
    return t;
}

// A cost function with a known spectrum: H diagonalized by a random circuit at
// fixed random angles, evaluated on the |0...0> input.
struct RandomInstance {
    CostFunction cost;
    SpectrumInfo spectrum;
    std::vector<double> eigenvalues;
};

inline RandomInstance random_instance(std::mt19937_64& engine, int n, int num_rotations,
                                      double e0, double e1, double emax) {
    Circuit diag = random_circuit(engine, n, std::max(2, n));
    const auto diag_angles = random_angles(engine, diag.num_params);

    const std::size_t d = dim_of(n);
    std::vector<double> eigs(d);
    eigs.front() = e0;
    eigs[1] = e1;
    eigs.back() = emax;
    std::uniform_real_distribution<double> mid(e1, emax);
    for (std::size_t i = 2; i + 1 < d; ++i) eigs[i] = mid(engine);
    std::sort(eigs.begin() + 1, eigs.end() - 1);

    RandomInstance inst;
    inst.eigenvalues = eigs;
    inst.cost.circuit = random_circuit(engine, n, num_rotations);
    inst.cost.terms.push_back(
        {make_spectral_observable(eigs, diag, diag_angles), StateVector::basis(n, 0)});
    inst.cost.validate();
    inst.spectrum = SpectrumInfo::single(e0, e1, emax);
    return inst;
}

// Central five-point second derivative, O(h^4) truncation.
template <typename F>
double fd_second_derivative(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
           (12.0 * h * h);
}

struct SinusoidFit {
    double a_cos = 0.0, a_sin = 0.0, offset = 0.0;
    double max_residual = 0.0;
};

// Least-squares fit of v(t) = a cos t + b sin t + c on the sample grid.
inline SinusoidFit fit_sinusoid(const std::vector<double>& ts, const std::vector<double>& vs) {
    const std::size_t m = ts.size();
    double s_cc = 0, s_cs = 0, s_c = 0, s_ss = 0, s_s = 0, s_1 = static_cast<double>(m);
    double b_c = 0, b_s = 0, b_1 = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double c = std::cos(ts[i]), s = std::sin(ts[i]);
        s_cc += c * c;
        s_cs += c * s;
        s_c += c;
        s_ss += s * s;
        s_s += s;
        b_c += c * vs[i];
        b_s += s * vs[i];
        b_1 += vs[i];
    }
    // 3x3 normal equations, solved by Cramer's rule.
    const double a11 = s_cc, a12 = s_cs, a13 = s_c;
    const double a22 = s_ss, a23 = s_s, a33 = s_1;
    const double det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                       a13 * (a12 * a23 - a22 * a13);
    SinusoidFit fit;
    fit.a_cos = (b_c * (a22 * a33 - a23 * a23) - a12 * (b_s * a33 - a23 * b_1) +
                 a13 * (b_s * a23 - a22 * b_1)) /
                det;
    fit.a_sin = (a11 * (b_s * a33 - a23 * b_1) - b_c * (a12 * a33 - a23 * a13) +
                 a13 * (a12 * b_1 - b_s * a13)) /
                det;
    fit.offset = (a11 * (a22 * b_1 - b_s * a23) - a12 * (a12 * b_1 - b_s * a13) +
                  b_c * (a12 * a23 - a22 * a13)) /
                 det;
    for (std::size_t i = 0; i < m; ++i) {
        const double pred =
            fit.a_cos * std::cos(ts[i]) + fit.a_sin * std::sin(ts[i]) + fit.offset;
        fit.max_residual = std::max(fit.max_residual, std::abs(pred - vs[i]));
    }
    return fit;
}

} // namespace vqnoise::test

#endif
