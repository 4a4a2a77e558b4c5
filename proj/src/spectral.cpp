#include "rsm/spectral.hpp"

#include "rsm/bigfloat.hpp"
#include "rsm/oscquad.hpp"
#include "rsm/parallel.hpp"
#include "rsm/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsm::spectral {

namespace {

constexpr double pi = std::numbers::pi;

// log cosh(t), no overflow
double log_cosh(double t) {
    t = std::fabs(t);
    return t + std::log1p(std::exp(-2.0 * t)) - std::numbers::ln2;
}

}

SpectralWeight::SpectralWeight(double T_, double Delta_) : T(T_), Delta(Delta_) {
    if (!(T > 0) || !(Delta > 0) || !std::isfinite(T) || !std::isfinite(Delta)) {
        throw std::invalid_argument("SpectralWeight: T and Delta must be positive");
    }
    if (Delta > T) {
        throw std::invalid_argument("SpectralWeight: Delta must not exceed T");
    }
}

double h_weight(double r, const SpectralWeight& sw) {
    const double a = (r - sw.T) / sw.Delta, b = (r + sw.T) / sw.Delta;
    return (r * r + 0.25) / (sw.T * sw.T) * (std::exp(-a * a) + std::exp(-b * b));
}

cplx bessel_j(cplx nu, double x) {
    if (!(x > 0) || x > 1000.0) {
        throw std::invalid_argument("bessel_j: x must lie in (0, 1000]");
    }
    if (nu.real() < 0) {
        throw std::invalid_argument("bessel_j: Re nu must be >= 0");
    }
    return std::exp(nu * std::log(x / 2) - complex_lgamma(1.0 + nu)) * bigfloat::bessel_0f1(nu, x);
}

cplx scaled_bessel_ratio(double r, double x) {
    if (!(std::fabs(r) <= 100.0)) {
        throw std::invalid_argument("scaled_bessel_ratio: |r| must be <= 100");
    }
    if (!(x >= 0) || x > 1000.0) {
        throw std::invalid_argument("scaled_bessel_ratio: x must lie in [0, 1000]");
    }
    if (x == 0.0) {
        return r == 0.0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    }
    // J_{-2ir} = conj J_{2ir}; the series wants Re nu >= 0 only, which 2ir satisfies
    const cplx nu{0.0, 2.0 * r};
    const cplx lead = nu * std::log(x / 2) - complex_lgamma(1.0 + nu) - log_cosh(pi * r);
    return std::exp(lead) * bigfloat::bessel_0f1(nu, x);
}

cplx h_check_oracle(double x, const SpectralWeight& sw, const HCheckOptions& opts) {
    if (opts.panels < 1 || opts.nodes < 2) {
        throw std::invalid_argument("h_check_oracle: need >= 1 panel and >= 2 nodes");
    }
    const double R = sw.T + 8.0 * sw.Delta;
    if (R > 100.0) {
        throw std::invalid_argument("h_check_oracle: T + 8 Delta exceeds the representable |r| <= 100");
    }
    const auto [gx, gw] = oscquad::gauss_legendre(opts.nodes);
    const double width = 2.0 * R / opts.panels;
    cplx sum{0.0, 0.0};
    for (int p = 0; p < opts.panels; ++p) {
        const double mid = -R + (p + 0.5) * width;
        for (int k = 0; k < opts.nodes; ++k) {
            const double r = mid + 0.5 * width * gx[k];
            sum += 0.5 * width * gw[k] * r * h_weight(r, sw) * scaled_bessel_ratio(r, x);
        }
    }
    return cplx{0.0, 2.0 / pi} * sum;
}

LeadingTerm h_check_leading(double x, const SpectralWeight& sw) {
    if (!(x > 0)) {
        throw std::invalid_argument("h_check_leading: x must be positive");
    }
    const double T = sw.T, D = sw.Delta;
    LeadingTerm out;
    out.delta_ok = D >= 2.0 * std::cbrt(T);
    out.phase_ok = T * T * T * T / (x * x * x) <= 0.01;
    const double g = 2.0 * D * T / x;
    out.cosine = std::cos(x - 2.0 * T * T / x + pi / 4);
    out.value = 4.0 / pi * std::sqrt(2.0 / x) * D * T * std::exp(-g * g) * out.cosine;
    return out;
}

std::vector<HCheckRow> h_check_sweep(const std::vector<double>& xs, const SpectralWeight& sw,
                                     const HCheckOptions& opts, int jobs) {
    std::vector<HCheckRow> rows(xs.size());
    parallel_for(static_cast<std::ptrdiff_t>(xs.size()), jobs, [&](std::ptrdiff_t i) {
        HCheckRow& row = rows[i];
        row.x = xs[i];
        row.oracle = h_check_oracle(xs[i], sw, opts);
        row.leading = h_check_leading(xs[i], sw);
        row.rel_deviation = std::abs(row.oracle - row.leading.value) / std::fabs(row.leading.value);
    });
    return rows;
}

}
