#include "rsm/stphase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsm::stphase {

namespace {

constexpr double pi = std::numbers::pi;

cplx e(double x) {
    // reduce first; the phases here reach 1e6 and beyond
    double r = x - std::floor(x);
    return std::polar(1.0, 2.0 * pi * r);
}

SmoothWindow dilate(const SmoothWindow& w, double Z) {
    if (w.family != oscquad::Family::bump && w.family != oscquad::Family::gaussian) {
        throw std::invalid_argument("dilate: bump or gaussian window expected");
    }
    SmoothWindow d = w;
    d.center *= Z;
    d.scale *= Z;
    return d;
}

// Neville's scheme evaluated at 0
cplx extrapolate_to_zero(const std::vector<double>& x, std::vector<cplx> y) {
    const std::size_t n = x.size();
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            y[i] = (x[i + m] * y[i] - x[i] * y[i + 1]) / (x[i + m] - x[i]);
        }
    }
    return y[0];
}

}

PhasePair::PhasePair(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
    if (!(alpha > 0) || !(beta > 0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw std::invalid_argument("PhasePair: alpha and beta must be positive");
    }
    double r = beta / alpha;
    if (r < 0.1 || r > 10.0) {
        throw std::invalid_argument("PhasePair: beta/alpha outside [1/10, 10]");
    }
}

double PhasePair::stationary_point() const {
    return std::pow(2.0 * beta / (3.0 * alpha), 6);
}

oscquad::Phase PhasePair::phase() const {
    oscquad::Phase ph;
    ph.sqrt_coef = alpha;
    ph.cbrt_coef = -beta;
    return ph;
}

cplx stationary_phase_I(const PhasePair& pp, const SmoothWindow& f) {
    const double t0 = 2.0 * pp.beta / (3.0 * pp.alpha);
    const double t5 = std::pow(t0, 5);
    const double psi0 = -4.0 * pp.beta * pp.beta * pp.beta / (27.0 * pp.alpha * pp.alpha);
    return 6.0 * t5 / std::sqrt(2.0 * pp.beta) * e(psi0 + 0.125) * f(t5 * t0);
}

oscquad::QuadratureResult stationary_phase_oracle(const PhasePair& pp, const SmoothWindow& f, double tol) {
    if (f.whole_line() || !(f.support_lo() > 0)) {
        throw std::invalid_argument("stationary_phase_oracle: amplitude must be supported in (0, inf)");
    }
    return oscquad::integrate_oscillatory(f, pp.phase(), tol);
}

FresnelCheck fresnel_check(double z, double eps) {
    if (!(std::fabs(z) <= 50.0)) {
        throw std::invalid_argument("fresnel_check: |z| must be <= 50");
    }
    if (!(eps > 0 && eps <= 1e-2)) {
        throw std::invalid_argument("fresnel_check: eps must lie in (0, 1e-2]");
    }
    const cplx pref = std::polar(1.0 / std::sqrt(2.0), pi / 4);
    const cplx target = e(z * z);

    FresnelCheck out;
    const cplx closed = std::sqrt(2.0) * std::polar(1.0, -pi / 4) * target;
    out.analytic_residual = std::abs(target - pref * closed);

    oscquad::Phase ph;
    ph.linear = z;
    ph.quadratic = -0.25;
    std::vector<double> xs;
    std::vector<cplx> ys;
    for (int i = 0; i < 4; ++i) {
        double ei = eps / double(1 << i);
        // e^{-ei t^2} = exp(-pi (t/s)^2)
        auto g = SmoothWindow::gaussian(0.0, std::sqrt(pi / ei));
        xs.push_back(ei);
        ys.push_back(oscquad::integrate_oscillatory(g, ph, 1e-10).value);
    }
    out.integral = extrapolate_to_zero(xs, ys);
    out.quadrature_residual = std::abs(target - pref * out.integral);
    return out;
}

double fresnel_identity_residual(double z) {
    return fresnel_check(z).quadrature_residual;
}

std::pair<cplx, cplx> y_transform_pair(double v, double U, double Z, const SmoothWindow& w3, double tol) {
    if (!(U > 0)) {
        throw std::invalid_argument("y_transform_pair: U must be positive");
    }
    if (!(Z >= 10.0)) {
        throw std::invalid_argument("y_transform_pair: Z must be >= 10");
    }
    oscquad::Phase ph;
    ph.quadratic = 1.0;
    ph.linear = -v;
    cplx oracle = U * oscquad::integrate_oscillatory(dilate(w3, Z), ph, tol).value;
    cplx leading = U * std::polar(1.0 / std::sqrt(2.0), pi / 4) * e(-v * v / 4) * w3(v / (2.0 * Z));
    return {oracle, leading};
}

std::pair<double, double> ghat_log_expansion_check(double m, double n, double U, const SmoothWindow& ghat) {
    if (!(m > 0) || !(n > 0) || !(U > 0)) {
        throw std::invalid_argument("ghat_log_expansion_check: m, n, U must be positive");
    }
    if (std::fabs(m - n) > 10.0 * n / U) {
        throw std::invalid_argument("ghat_log_expansion_check: |m - n| exceeds 10 n / U");
    }
    double exact = ghat(U / (2 * pi) * std::log(m / n)).real();
    double d = (std::sqrt(m) - std::sqrt(n)) / std::sqrt(n);
    double x = U / pi * d;
    double expanded = (ghat(x) - U / (2 * pi) * d * d * ghat.derivative(x)).real();
    return {exact, expanded};
}

double VoronoiWeightParams::lambda_scale() const {
    double uab = U * A * B;
    return v * v * v * N * N / (uab * uab * uab);
}

double VoronoiWeightParams::prefactor(double lambda) const {
    return b / std::sqrt(N) * std::pow(lambda * N, 2.0 / 3.0);
}

VoronoiPair voronoi_phi_pair(const VoronoiWeightParams& p, double lambda, double tol) {
    if (!(lambda > 0)) {
        throw std::invalid_argument("voronoi_phi_pair: lambda must be positive");
    }
    if (!(p.N > 0 && p.U > 0 && p.A > 0 && p.B > 0 && p.v > 0 && p.b > 0)) {
        throw std::invalid_argument("voronoi_phi_pair: N, U, A, B, v, b must be positive");
    }
    if (p.w.family != oscquad::Family::bump || !(p.w.support_lo() > 0)) {
        throw std::invalid_argument("voronoi_phi_pair: w must be a bump supported in (0, inf)");
    }
    const double lo = p.w.support_lo(), hi = p.w.support_hi();
    const auto amp = SmoothWindow::power_tilt(lo, hi, -1.0 / 3.0, p.y0, p.w.amplitude);
    const double alpha = p.v * p.N / (p.U * p.A * p.B);
    const double beta = 3.0 * std::cbrt(lambda * p.N);
    const cplx pref = p.prefactor(lambda) * std::polar(1.0, p.y0 * std::log(p.N));

    oscquad::Phase ph;
    ph.sqrt_coef = alpha;
    ph.cbrt_coef = -beta;

    VoronoiPair out;
    out.oracle = pref * oscquad::integrate_oscillatory(amp, ph, tol).value;
    out.stationary_point = std::pow(2.0 * beta / (3.0 * alpha), 6);
    out.in_window = out.stationary_point > lo && out.stationary_point < hi;
    out.leading = out.in_window ? pref * stationary_phase_I(PhasePair(alpha, beta), amp) : cplx{0.0, 0.0};
    return out;
}

double voronoi_window_center(const VoronoiWeightParams& p, const std::vector<double>& grid) {
    if (grid.empty()) {
        throw std::invalid_argument("voronoi_window_center: empty grid");
    }
    double best = grid.front(), best_abs = -1.0;
    for (double lam : grid) {
        double a = std::abs(voronoi_phi_pair(p, lam).oracle);
        if (a > best_abs) {
            best_abs = a;
            best = lam;
        }
    }
    return best;
}

cplx psi0_expansion_evaluate(const std::vector<std::pair<cplx, cplx>>& constants, double x,
                             const SmoothWindow& psi, int terms, double tol) {
    if (!(x > 0)) {
        throw std::invalid_argument("psi0_expansion_evaluate: x must be positive");
    }
    if (terms < 0 || terms > static_cast<int>(constants.size())) {
        throw std::invalid_argument("psi0_expansion_evaluate: terms exceeds the supplied constants");
    }
    if (psi.family != oscquad::Family::bump || !(psi.support_lo() > 0)) {
        throw std::invalid_argument("psi0_expansion_evaluate: psi must be a bump supported in (0, inf)");
    }
    cplx total{0.0, 0.0};
    const double c3 = 3.0 * std::cbrt(x);
    for (int j = 1; j <= terms; ++j) {
        const auto [cp, cm] = constants[j - 1];
        if (cp == 0.0 && cm == 0.0) {
            continue;
        }
        const double xj = x * std::pow(x, -j / 3.0);
        const auto amp = SmoothWindow::power_tilt(psi.support_lo(), psi.support_hi(), -j / 3.0, 0.0, psi.amplitude);
        oscquad::Phase ph;
        if (cp != 0.0) {
            ph.cbrt_coef = c3;
            total += cp * xj * oscquad::integrate_oscillatory(amp, ph, tol).value;
        }
        if (cm != 0.0) {
            ph.cbrt_coef = -c3;
            total += cm * xj * oscquad::integrate_oscillatory(amp, ph, tol).value;
        }
    }
    return total;
}

}
