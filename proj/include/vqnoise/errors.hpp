#ifndef VQNOISE_ERRORS_HPP
#define VQNOISE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vqnoise {

struct degenerate_spectrum_error : std::domain_error {
    explicit degenerate_spectrum_error(const std::string& what)
        : std::domain_error(what) {}
};

struct qubit_cap_exceeded : std::runtime_error {
    explicit qubit_cap_exceeded(const std::string& what)
        : std::runtime_error(what) {}
};

struct nonfinite_cost_error : std::runtime_error {
    explicit nonfinite_cost_error(const std::string& what)
        : std::runtime_error(what) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace vqnoise

#endif
