#include "rsm/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsm {

namespace {

using cplx = std::complex<double>;

constexpr double lanczos_g = 7.0;
constexpr double lanczos_p[9] = {
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}

cplx log_sin(cplx z) {
    const cplx i{0.0, 1.0};
    if (z.imag() < 0.0) {
        // sin z = e^{iz} (1 - e^{-2iz}) / (2i)
        return i * z + std::log(1.0 - std::exp(-2.0 * i * z)) - std::log(2.0 * i);
    }
    // sin z = e^{-iz} (1 - e^{2iz}) / (-2i)
    return -i * z + std::log(1.0 - std::exp(2.0 * i * z)) - std::log(-2.0 * i);
}

cplx complex_lgamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        throw std::domain_error("complex_lgamma: pole");
    }
    if (z.real() < 0.5) {
        return std::log(std::numbers::pi) - log_sin(std::numbers::pi * z) - complex_lgamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = lanczos_p[0];
    for (int k = 1; k < 9; ++k) {
        x += lanczos_p[k] / (z + static_cast<double>(k));
    }
    const cplx t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}
