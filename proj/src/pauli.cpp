#include "vqnoise/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace vqnoise {

namespace {

std::uint64_t index_bit(int num_qubits, int qubit) {
    return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

} // namespace

PauliString::PauliString(int num_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : num_qubits_(num_qubits), x_mask_(x_mask), z_mask_(z_mask) {
    if (num_qubits < 1 || num_qubits > 62)
        throw std::invalid_argument("PauliString: qubit count out of range");
    const std::uint64_t valid = (std::uint64_t{1} << num_qubits) - 1;
    if ((x_mask | z_mask) & ~valid)
        throw std::invalid_argument("PauliString: mask exceeds qubit count");
}

PauliString PauliString::identity(int num_qubits) { return PauliString(num_qubits, 0, 0); }

PauliString PauliString::single(int num_qubits, int qubit, char letter) {
    if (qubit < 0 || qubit >= num_qubits)
        throw std::invalid_argument("PauliString: qubit index out of range");
    const std::uint64_t b = index_bit(num_qubits, qubit);
    switch (letter) {
        case 'I': return PauliString(num_qubits, 0, 0);
        case 'X': return PauliString(num_qubits, b, 0);
        case 'Y': return PauliString(num_qubits, b, b);
        case 'Z': return PauliString(num_qubits, 0, b);
        default: throw std::invalid_argument("PauliString: letter must be one of I,X,Y,Z");
    }
}

PauliString PauliString::from_letters(std::string_view letters) {
    const int n = static_cast<int>(letters.size());
    std::uint64_t x = 0, z = 0;
    for (int q = 0; q < n; ++q) {
        const std::uint64_t b = index_bit(n, q);
        switch (letters[q]) {
            case 'I': break;
            case 'X': x |= b; break;
            case 'Y': x |= b; z |= b; break;
            case 'Z': z |= b; break;
            default: throw std::invalid_argument("PauliString: letter must be one of I,X,Y,Z");
        }
    }
    return PauliString(n, x, z);
}

char PauliString::letter(int qubit) const {
    const std::uint64_t b = index_bit(num_qubits_, qubit);
    const bool x = x_mask_ & b, z = z_mask_ & b;
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

std::string PauliString::letters() const {
    std::string s(static_cast<std::size_t>(num_qubits_), 'I');
    for (int q = 0; q < num_qubits_; ++q) s[static_cast<std::size_t>(q)] = letter(q);
    return s;
}

int PauliString::weight() const { return std::popcount(x_mask_ | z_mask_); }

bool PauliString::commutes_with(const PauliString& other) const {
    const int anti = std::popcount(x_mask_ & other.z_mask_) + std::popcount(z_mask_ & other.x_mask_);
    return (anti % 2) == 0;
}

cplx PauliString::phase(std::uint64_t basis_index) const {
    const int ny = std::popcount(x_mask_ & z_mask_);
    const int sign_bits = std::popcount(basis_index & z_mask_);
    static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx p = i_pow[ny % 4];
    if (sign_bits % 2) p = -p;
    return p;
}

std::vector<PauliString> pauli_basis(int num_qubits) {
    const std::size_t count = std::size_t{1} << (2 * num_qubits);
    std::vector<PauliString> out;
    out.reserve(count);
    static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    std::string letters(static_cast<std::size_t>(num_qubits), 'I');
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rem = idx;
        for (int q = num_qubits - 1; q >= 0; --q) {
            letters[static_cast<std::size_t>(q)] = kLetters[rem % 4];
            rem /= 4;
        }
        out.push_back(PauliString::from_letters(letters));
    }
    return out;
}

std::vector<PauliString> nonidentity_paulis_on(int num_qubits, const std::vector<int>& targets) {
    const int k = static_cast<int>(targets.size());
    const std::size_t count = std::size_t{1} << (2 * k);
    std::vector<PauliString> out;
    out.reserve(count - 1);
    static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    for (std::size_t idx = 1; idx < count; ++idx) {
        std::string letters(static_cast<std::size_t>(num_qubits), 'I');
        std::size_t rem = idx;
        for (int t = k - 1; t >= 0; --t) {
            letters[static_cast<std::size_t>(targets[static_cast<std::size_t>(t)])] =
                kLetters[rem % 4];
            rem /= 4;
        }
        out.push_back(PauliString::from_letters(letters));
    }
    return out;
}

} // namespace vqnoise
