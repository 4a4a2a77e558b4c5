#include "rsm/oscquad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

namespace rsm::oscquad {

namespace {

constexpr double pi = std::numbers::pi;

// 21-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 10-point Gauss weights (QUADPACK qk21).
constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980529162, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651163};

struct Panel {
    double a, b;
    cplx value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk21(const std::function<cplx(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fv[21];
    fv[10] = f(c);
    for (int j = 0; j < 10; ++j) {
        fv[j] = f(c - h * xgk[j]);
        fv[20 - j] = f(c + h * xgk[j]);
    }
    cplx rk = wgk[10] * fv[10], rg{0.0, 0.0};
    double resabs = wgk[10] * std::abs(fv[10]);
    for (int j = 0; j < 10; ++j) {
        rk += wgk[j] * (fv[j] + fv[20 - j]);
        resabs += wgk[j] * (std::abs(fv[j]) + std::abs(fv[20 - j]));
        if (j % 2 == 1) {
            rg += wg[j / 2] * (fv[j] + fv[20 - j]);
        }
    }
    const cplx mean = 0.5 * rk;
    double resasc = wgk[10] * std::abs(fv[10] - mean);
    for (int j = 0; j < 10; ++j) {
        resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[20 - j] - mean));
    }
    rk *= h;
    rg *= h;
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs(rk - rg);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    return {a, b, rk, err};
}

// Panels with at most `cycles` oscillations of the phase each.
std::vector<double> cycle_breaks(const Phase& phase, double lo, double hi, double cycles) {
    std::vector<double> out{lo};
    double x = lo;
    const double span = hi - lo;
    while (x < hi) {
        const double d0 = std::abs(phase.derivative(x));
        double h = d0 > 0 ? cycles / d0 : span;
        if (x + h < hi) {
            const double d1 = std::abs(phase.derivative(x + h));
            h = std::min(h, d1 > 0 ? cycles / d1 : span);
        }
        h = std::max(h, span * 1e-9);
        x = std::min(hi, x + h);
        out.push_back(x);
        if (out.size() > 50'000'000) {
            throw std::invalid_argument("integrate_oscillatory: phase oscillates too fast for the interval");
        }
    }
    return out;
}

double fejer_truncation(const SmoothWindow& w, const Phase& phase, double tol) {
    const double s = w.scale, a = std::abs(w.amplitude);
    const bool pure_linear = phase.quadratic == 0.0 && !phase.needs_positive();
    if (pure_linear) {
        const double xi = std::abs(phase.linear), d = 1.0 / s;
        const double feff = std::min(xi, std::abs(xi - d));
        if (feff > 1e-3 * d) {
            // Integration by parts on each exponential in sin^2 = (1 - cos)/2.
            return std::sqrt(2.0 * a * s * s / (pi * pi * pi * feff * tol / 10.0));
        }
    }
    return std::min(2.0 * a * s * s / (pi * pi * tol / 10.0), 1e8 * s);
}

}

BudgetExceeded::BudgetExceeded(QuadratureResult best)
    : std::runtime_error("quadrature evaluation budget exceeded"), best_(best) {}

const char* family_name(Family f) {
    switch (f) {
    case Family::bump: return "bump";
    case Family::gaussian: return "gaussian";
    case Family::fejer_majorant: return "fejer-majorant";
    case Family::power_tilt: return "power-tilt";
    }
    return "?";
}

SmoothWindow SmoothWindow::bump(double lo, double hi, cplx amplitude) {
    if (!(hi > lo)) {
        throw std::invalid_argument("bump: empty support");
    }
    SmoothWindow w;
    w.family = Family::bump;
    w.center = 0.5 * (lo + hi);
    w.scale = 0.5 * (hi - lo);
    w.amplitude = amplitude;
    return w;
}

SmoothWindow SmoothWindow::gaussian(double center, double scale, cplx amplitude) {
    if (!(scale > 0)) {
        throw std::invalid_argument("gaussian: scale must be positive");
    }
    SmoothWindow w;
    w.family = Family::gaussian;
    w.center = center;
    w.scale = scale;
    w.amplitude = amplitude;
    return w;
}

SmoothWindow SmoothWindow::fejer(double center, double delta, cplx amplitude) {
    if (!(delta > 0)) {
        throw std::invalid_argument("fejer: delta must be positive");
    }
    SmoothWindow w;
    w.family = Family::fejer_majorant;
    w.center = center;
    w.scale = 1.0 / delta;
    w.amplitude = amplitude;
    return w;
}

SmoothWindow SmoothWindow::power_tilt(double lo, double hi, double exponent, double tilt, cplx amplitude) {
    if (!(lo > 0)) {
        throw std::invalid_argument("power_tilt: support must lie in (0, inf)");
    }
    SmoothWindow w = bump(lo, hi, amplitude);
    w.family = Family::power_tilt;
    w.exponent = exponent;
    w.tilt = tilt;
    return w;
}

double SmoothWindow::support_lo() const {
    return whole_line() ? -std::numeric_limits<double>::infinity() : center - scale;
}

double SmoothWindow::support_hi() const {
    return whole_line() ? std::numeric_limits<double>::infinity() : center + scale;
}

cplx SmoothWindow::operator()(double x) const {
    const double u = (x - center) / scale;
    switch (family) {
    case Family::bump:
    case Family::power_tilt: {
        if (std::abs(u) >= 1.0) {
            return {0.0, 0.0};
        }
        const double b = std::exp(1.0 - 1.0 / (1.0 - u * u));
        if (family == Family::bump) {
            return amplitude * b;
        }
        const double lx = std::log(x);
        return amplitude * b * std::exp(exponent * lx) * std::polar(1.0, tilt * lx);
    }
    case Family::gaussian:
        return amplitude * std::exp(-pi * u * u);
    case Family::fejer_majorant: {
        if (u == 0.0) {
            return amplitude;
        }
        const double s = std::sin(pi * u) / (pi * u);
        return amplitude * (s * s);
    }
    }
    return {0.0, 0.0};
}

cplx SmoothWindow::derivative(double x) const {
    const double u = (x - center) / scale;
    switch (family) {
    case Family::bump: {
        if (std::abs(u) >= 1.0) {
            return {0.0, 0.0};
        }
        const double q = 1.0 - u * u;
        return amplitude * std::exp(1.0 - 1.0 / q) * (-2.0 * u / (q * q)) / scale;
    }
    case Family::gaussian:
        return amplitude * std::exp(-pi * u * u) * (-2.0 * pi * u / scale);
    default:
        throw std::invalid_argument(std::string("derivative: not available for ") + family_name(family));
    }
}

SmoothWindow SmoothWindow::conj() const {
    SmoothWindow w = *this;
    w.amplitude = std::conj(amplitude);
    w.tilt = -tilt;
    return w;
}

double SmoothWindow::tail_mass(double r) const {
    const double a = std::abs(amplitude);
    switch (family) {
    case Family::gaussian:
        return a * scale * std::erfc(std::sqrt(pi) * r / scale);
    case Family::fejer_majorant:
        return 2.0 * a * scale * scale / (pi * pi * r);
    default:
        throw std::invalid_argument("tail_mass: compactly supported window");
    }
}

double Phase::operator()(double y) const {
    double v = linear * y + quadratic * y * y + constant;
    if (sqrt_coef != 0.0) v += sqrt_coef * std::sqrt(y);
    if (cbrt_coef != 0.0) v += cbrt_coef * std::cbrt(y);
    if (log_coef != 0.0) v += log_coef * std::log(y);
    return v;
}

double Phase::derivative(double y) const {
    double v = linear + 2.0 * quadratic * y;
    if (sqrt_coef != 0.0) v += 0.5 * sqrt_coef / std::sqrt(y);
    if (cbrt_coef != 0.0) v += cbrt_coef / (3.0 * std::cbrt(y * y));
    if (log_coef != 0.0) v += log_coef / y;
    return v;
}

Phase Phase::negated() const {
    return {-sqrt_coef, -cbrt_coef, -linear, -log_coef, -quadratic, -constant};
}

QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f, std::vector<double> breakpoints,
                                    double tol, const QuadratureOptions& opts) {
    if (!(tol >= 1e-12)) {
        throw std::invalid_argument("integrate_adaptive: tol must be >= 1e-12");
    }
    if (breakpoints.size() < 2) {
        return {};
    }
    QuadratureResult res;
    std::priority_queue<Panel> active;
    std::vector<Panel> settled;
    cplx total{0.0, 0.0};
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i])) {
            continue;
        }
        if (res.evaluations + 21 > opts.max_evaluations) {
            res.value = total;
            res.err_estimate = std::numeric_limits<double>::max();
            throw BudgetExceeded(res);
        }
        Panel p = gk21(f, breakpoints[i], breakpoints[i + 1]);
        res.evaluations += 21;
        total += p.value;
        err += p.err;
        active.push(p);
    }
    while (!active.empty() && err > tol * (1.0 + std::abs(total))) {
        Panel p = active.top();
        active.pop();
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b) || (p.b - p.a) <= 1e-14 * std::max(std::abs(p.a), std::abs(p.b))) {
            settled.push_back(p);   // cannot refine further
            if (active.empty()) {
                break;
            }
            continue;
        }
        if (res.evaluations + 42 > opts.max_evaluations) {
            active.push(p);
            break;
        }
        Panel l = gk21(f, p.a, mid), r = gk21(f, mid, p.b);
        res.evaluations += 42;
        total += l.value + r.value - p.value;
        err += l.err + r.err - p.err;
        active.push(l);
        active.push(r);
    }
    // Final sums from scratch, in interval order, for reproducibility.
    std::vector<Panel> all = std::move(settled);
    while (!active.empty()) {
        all.push_back(active.top());
        active.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    res.value = {0.0, 0.0};
    res.err_estimate = 0.0;
    for (const auto& p : all) {
        res.value += p.value;
        res.err_estimate += p.err;
    }
    if (res.err_estimate > tol * (1.0 + std::abs(res.value)) && res.evaluations + 42 > opts.max_evaluations) {
        throw BudgetExceeded(res);
    }
    return res;
}

QuadratureResult integrate_oscillatory(const SmoothWindow& amplitude, const Phase& phase,
                                       double lo, double hi, double tol, const QuadratureOptions& opts) {
    if (!(tol >= 1e-12)) {
        throw std::invalid_argument("integrate_oscillatory: tol must be >= 1e-12");
    }
    lo = std::max(lo, amplitude.support_lo());
    hi = std::min(hi, amplitude.support_hi());
    if (std::isinf(lo) || std::isinf(hi)) {
        const double r = amplitude.family == Family::gaussian
                             ? amplitude.scale * std::sqrt(std::max(1.0, std::log(10.0 * std::abs(amplitude.amplitude) * amplitude.scale / tol) / pi) + 1.0)
                             : fejer_truncation(amplitude, phase, tol);
        if (std::isinf(lo)) lo = amplitude.center - r;
        if (std::isinf(hi)) hi = amplitude.center + r;
    }
    if (!(hi > lo)) {
        return {};
    }
    if (phase.needs_positive() && lo <= 0.0) {
        throw std::invalid_argument("integrate_oscillatory: root/log phase terms need a positive interval");
    }

    // The window's tilt x^{i tilt} is oscillatory; move it into the phase.
    SmoothWindow amp = amplitude;
    Phase ph = phase;
    if (amp.tilt != 0.0) {
        ph.log_coef += amp.tilt / (2.0 * pi);
        amp.tilt = 0.0;
    }
    auto f = [&](double y) { return amp(y) * std::polar(1.0, 2.0 * pi * ph(y)); };
    return integrate_adaptive(f, cycle_breaks(ph, lo, hi, opts.max_cycles_per_panel), tol, opts);
}

QuadratureResult integrate_oscillatory(const SmoothWindow& amplitude, const Phase& phase, double tol,
                                       const QuadratureOptions& opts) {
    return integrate_oscillatory(amplitude, phase, -std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity(), tol, opts);
}

SmoothWindow fejer_majorant(double delta) {
    if (!(delta > 0.0 && delta <= 0.25)) {
        throw std::invalid_argument("fejer_majorant: delta must lie in (0, 1/4]");
    }
    // sinc^2(pi delta t) decreases on |t| <= 2 because 2 pi delta <= pi/2.
    const double x = 2.0 * pi * delta;
    const double s = std::sin(x) / x;
    return SmoothWindow::fejer(0.0, delta, 1.0 / (s * s));
}

cplx fejer_transform(const SmoothWindow& g, double xi) {
    if (g.family != Family::fejer_majorant) {
        throw std::invalid_argument("fejer_transform: not a Fejer window");
    }
    const double tri = std::max(0.0, 1.0 - std::abs(xi) * g.scale);
    return g.amplitude * g.scale * tri * std::polar(1.0, -2.0 * pi * xi * g.center);
}

cplx mellin_window_transform(const SmoothWindow& w, double y, double tol) {
    SmoothWindow v = w;
    switch (w.family) {
    case Family::bump:
        if (!(w.support_lo() > 0.0)) {
            throw std::invalid_argument("mellin_window_transform: support must lie in (0, inf)");
        }
        v.family = Family::power_tilt;
        v.exponent = -1.0;
        v.tilt = y;
        break;
    case Family::power_tilt:
        v.exponent -= 1.0;
        v.tilt += y;
        break;
    default:
        throw std::invalid_argument(std::string("mellin_window_transform: unsupported family ") + family_name(w.family));
    }
    return integrate_oscillatory(v, Phase{}, tol).value;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1) {
        throw std::invalid_argument("gauss_legendre: n must be >= 1");
    }
    std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        double p0 = 1.0, p1 = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        x[static_cast<std::size_t>(i)] = -z;
        x[static_cast<std::size_t>(n - 1 - i)] = z;
        w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

}
