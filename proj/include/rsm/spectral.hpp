#ifndef RSM_SPECTRAL_HPP
#define RSM_SPECTRAL_HPP

// Kuznetsov weight h(r), its Bessel transform, and the leading term of the
// transform's large-x expansion.

#include <complex>
#include <vector>

namespace rsm::spectral {

using cplx = std::complex<double>;

struct SpectralWeight {
    double T;
    double Delta;

    /// Requires 0 < Delta <= T.
    SpectralWeight(double T, double Delta);
};

/// ((r^2 + 1/4)/T^2) [exp(-((r-T)/Delta)^2) + exp(-((r+T)/Delta)^2)]
double h_weight(double r, const SpectralWeight& sw);

/// J_nu(x) for Re nu >= 0, 0 < x <= 1000, from the power series summed at
/// high precision (the alternating terms reach e^x in size).
cplx bessel_j(cplx nu, double x);

/// J_{2ir}(x) / cosh(pi r) with every exponentially large factor combined
/// in one exponent. |r| <= 100, 0 < x <= 1000; x = 0 gives the limit
/// (1 at r = 0, 0 otherwise).
cplx scaled_bessel_ratio(double r, double x);

struct HCheckOptions {
    int panels = 48;           ///< Gauss-Legendre panels over [-T - 8 Delta, T + 8 Delta]
    int nodes = 10;            ///< nodes per panel
};

/// (2i/pi) int r h(r) J_{2ir}(x)/cosh(pi r) dr over the whole line
/// (both Gaussian lobes, |r -+ T| <= 8 Delta). The result is real up to
/// rounding; the imaginary part is returned so callers can check that.
cplx h_check_oracle(double x, const SpectralWeight& sw, const HCheckOptions& opts = {});

struct LeadingTerm {
    double value = 0.0;
    bool delta_ok = false;   ///< Delta >= 2 T^{1/3}
    bool phase_ok = false;   ///< T^4 / x^3 <= 0.01
    double cosine = 0.0;     ///< cos(x - 2T^2/x + pi/4), for zero exclusion

    bool in_window() const { return delta_ok && phase_ok; }
};

/// (4/pi) sqrt(2/x) Delta T exp(-(2 Delta T/x)^2) cos(x - 2T^2/x + pi/4).
/// Evaluated regardless of the window flags.
LeadingTerm h_check_leading(double x, const SpectralWeight& sw);

struct HCheckRow {
    double x;
    cplx oracle;
    LeadingTerm leading;
    double rel_deviation;    ///< |oracle - leading| / |leading|
};

/// Oracle and leading term on each x; runs in parallel over x.
std::vector<HCheckRow> h_check_sweep(const std::vector<double>& xs, const SpectralWeight& sw,
                                     const HCheckOptions& opts = {}, int jobs = 0);

}

#endif
