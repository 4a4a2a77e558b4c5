#ifndef RSM_OSCQUAD_HPP
#define RSM_OSCQUAD_HPP

// Adaptive quadrature for integrals  int amplitude(y) e(phase(y)) dy  with a
// parametric phase, plus the smooth windows used as amplitudes.

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rsm::oscquad {

using cplx = std::complex<double>;

enum class Family { bump, gaussian, fejer_majorant, power_tilt };

const char* family_name(Family f);

/// Parametric smooth test function.
///
///   bump           amplitude * exp(1 - 1/(1 - u^2)), u = (x - center)/scale, |u| < 1
///   gaussian       amplitude * exp(-pi ((x - center)/scale)^2)
///   fejer_majorant amplitude * (sin(pi u)/(pi u))^2, u = (x - center)/scale
///   power_tilt     bump * x^(exponent + i tilt), support inside (0, inf)
///
/// For the Fejer kernel scale = 1/delta, so its transform lives in [-delta, delta].
struct SmoothWindow {
    Family family = Family::bump;
    double center = 0.0;
    double scale = 1.0;
    cplx amplitude{1.0, 0.0};
    double exponent = 0.0;
    double tilt = 0.0;

    static SmoothWindow bump(double lo, double hi, cplx amplitude = 1.0);
    static SmoothWindow gaussian(double center, double scale, cplx amplitude = 1.0);
    static SmoothWindow fejer(double center, double delta, cplx amplitude = 1.0);
    static SmoothWindow power_tilt(double lo, double hi, double exponent, double tilt, cplx amplitude = 1.0);

    bool whole_line() const { return family == Family::gaussian || family == Family::fejer_majorant; }
    double support_lo() const;
    double support_hi() const;

    cplx operator()(double x) const;
    /// First derivative; bump and gaussian only (std::invalid_argument otherwise).
    cplx derivative(double x) const;

    /// Window with conjugated values.
    SmoothWindow conj() const;

    /// Upper bound for the mass int_{|x - center| > r} |w|. Whole-line families only.
    double tail_mass(double r) const;
};

/// phase(y) = sqrt_coef sqrt(y) + cbrt_coef y^{1/3} + linear y + log_coef log y
///            + quadratic y^2 + constant.
/// The root and log terms require y > 0 on the integration interval.
struct Phase {
    double sqrt_coef = 0.0;
    double cbrt_coef = 0.0;
    double linear = 0.0;
    double log_coef = 0.0;
    double quadratic = 0.0;
    double constant = 0.0;

    double operator()(double y) const;
    double derivative(double y) const;
    bool needs_positive() const { return sqrt_coef != 0.0 || cbrt_coef != 0.0 || log_coef != 0.0; }
    Phase negated() const;
};

struct QuadratureResult {
    cplx value{0.0, 0.0};
    double err_estimate = 0.0;
    std::int64_t evaluations = 0;
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(QuadratureResult best);
    const QuadratureResult& best() const { return best_; }

private:
    QuadratureResult best_;
};

struct QuadratureOptions {
    std::int64_t max_evaluations = 40'000'000;
    double max_cycles_per_panel = 2.0;
};

/// Integral of amplitude * e(phase) over [lo, hi], intersected with the
/// window's support. Infinite endpoints are allowed for whole-line windows,
/// which are then truncated where the closed-form tail bound drops below tol/10.
/// Stops when the summed panel error is at most tol * (1 + |value|).
QuadratureResult integrate_oscillatory(const SmoothWindow& amplitude, const Phase& phase,
                                       double lo, double hi, double tol,
                                       const QuadratureOptions& opts = {});

/// Same, over the window's full support.
QuadratureResult integrate_oscillatory(const SmoothWindow& amplitude, const Phase& phase, double tol,
                                       const QuadratureOptions& opts = {});

/// Generic adaptive Gauss-Kronrod for a smooth complex integrand on [lo, hi]
/// (finite). `breakpoints` seeds the initial panels.
QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f, std::vector<double> breakpoints,
                                    double tol, const QuadratureOptions& opts = {});

/// Nonnegative majorant g(t) = c (sin(pi delta t)/(pi delta t))^2 with c the
/// smallest constant giving g >= 1 on [-2, 2]. 0 < delta <= 1/4.
SmoothWindow fejer_majorant(double delta);

/// Closed-form transform int g(t) e(-xi t) dt of a Fejer window centered at 0:
/// (amplitude/delta) max(0, 1 - |xi|/delta).
cplx fejer_transform(const SmoothWindow& g, double xi);

/// w~(iy) = int_0^inf w(x) x^{iy - 1} dx. Compactly supported families only.
cplx mellin_window_transform(const SmoothWindow& w, double y, double tol = 1e-12);

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

}

#endif
