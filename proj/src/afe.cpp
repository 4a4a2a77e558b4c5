#include "rsm/afe.hpp"

#include "rsm/parallel.hpp"
#include "rsm/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rsm::afe {

namespace {

constexpr double pi = std::numbers::pi;

void check_pole(cplx z) {
    if (z.real() < 0.5) {
        const double n = std::round(z.real());
        if (n <= 0.0 && std::abs(z - n) < 1e-6) {
            throw std::domain_error("gamma factor argument within 1e-6 of a pole");
        }
    }
}

// trapezoid on s = c + i tau, tau in [-L, L], halving the step until stable.
// The stopping test is floored at the rounding level of sum |integrand|, which
// dominates when the contour sits far right of the saddle (tiny y, c = 3).
template <typename F_>
cplx contour_integral(F_ integrand, const VOptions& opts, double offset) {
    if (!(opts.truncation > 0) || !(opts.rel_tol > 0)) {
        throw std::invalid_argument("contour integral: truncation and rel_tol must be positive");
    }
    const double L = opts.truncation;
    double h = 0.25;
    double mass = 0.0;
    auto sum_at = [&](double step, bool odd_only) {
        cplx acc{0.0, 0.0};
        const long n = std::lround(L / step);
        for (long k = -n; k <= n; ++k) {
            if (odd_only && k % 2 == 0) {
                continue;
            }
            const double w = (std::labs(k) == n) ? 0.5 : 1.0;
            const cplx v = integrand(cplx{opts.abscissa, k * step});
            acc += w * v;
            mass += w * std::abs(v);
        }
        return acc;
    };
    cplx total = sum_at(h, false);
    cplx value = h * total / (2.0 * pi);
    for (int level = 0; level < 12; ++level) {
        h /= 2;
        total += sum_at(h, true);
        const cplx next = h * total / (2.0 * pi);
        const double floor = 1e3 * std::numeric_limits<double>::epsilon() * h * mass / (2.0 * pi);
        // accuracy is judged on the final value offset + integral
        const double mag = std::abs(offset + next);
        if (std::abs(next - value) <= std::max(opts.rel_tol * mag, floor)) {
            if (floor > 1e-6 * mag) {
                throw std::runtime_error("contour integral: cancellation too severe on this abscissa (move it left)");
            }
            return next;
        }
        value = next;
    }
    throw std::runtime_error("contour integral: step refinement did not converge");
}

double residue_correction(const VOptions& opts) {
    if (opts.abscissa == 0.0) {
        throw std::invalid_argument("contour abscissa must not be 0");
    }
    return opts.abscissa < 0.0 ? 1.0 : 0.0;
}

}

LanglandsParams LanglandsParams::tempered(double a, double b) {
    return {cplx{1.0 / 3.0, a}, cplx{1.0 / 3.0, b}};
}

cplx log_gamma_factor_product(cplx s, double tj, const LanglandsParams& lp) {
    cplx acc = -3.0 * s * std::log(pi);
    const cplx itj{0.0, tj};
    for (const cplx k : lp.kappas()) {
        for (const cplx z : {(s + itj - k) / 2.0, (s - itj - k) / 2.0}) {
            check_pole(z);
            acc += complex_lgamma(z);
        }
    }
    return acc;
}

cplx gamma_factor_product(cplx s, double tj, const LanglandsParams& lp) {
    return std::exp(log_gamma_factor_product(s, tj, lp));
}

ConductorValue conductor_q(double t, double tj, const LanglandsParams& lp) {
    cplx q{1.0, 0.0};
    for (const cplx k : lp.kappas()) {
        q *= (cplx{0.5, t + tj} - k) * (cplx{0.5, t - tj} - k);
    }
    return {q, std::abs(q)};
}

cplx v_weight_direct(double y, double t, double tj, const LanglandsParams& lp, const VOptions& opts) {
    if (!(y > 0)) {
        throw std::invalid_argument("v_weight_direct: y must be positive");
    }
    // rightmost poles of gamma(1/2 + it + s) sit at Re s = Re kappa - 1/2
    double rightmost = -INFINITY;
    for (const cplx k : lp.kappas()) {
        rightmost = std::max(rightmost, k.real() - 0.5);
    }
    if (!(opts.abscissa > rightmost)) {
        throw std::invalid_argument("v_weight_direct: contour must lie right of the gamma poles");
    }
    const cplx s0{0.5, t};
    const cplx base = log_gamma_factor_product(s0, tj, lp);
    const double ly = std::log(y);
    auto f = [&](cplx s) {
        return std::exp(-s * ly + log_gamma_factor_product(s0 + s, tj, lp) - base + s * s) / s;
    };
    const double res = residue_correction(opts);
    return res + contour_integral(f, opts, res);
}

cplx v_weight_stirling(double y, double t, double tj, const LanglandsParams& lp, const VOptions& opts) {
    if (!(y > 0)) {
        throw std::invalid_argument("v_weight_stirling: y must be positive");
    }
    if (tj < 20.0 || std::fabs(t) > std::pow(tj, 0.9)) {
        throw std::invalid_argument("v_weight_stirling: need tj >= 20 and |t| <= tj^0.9");
    }
    // gamma(1/2+it+s)/gamma(1/2+it) ~ pi^{-3s} 2^{-3s} |q|^{s/2}: the 2^{-3s}
    // comes from the halved arguments of the six Gamma factors
    const double lu = std::log(8.0 * pi * pi * pi * y) - 0.5 * std::log(conductor_q(t, tj, lp).magnitude);
    auto f = [&](cplx s) { return std::exp(-s * lu + s * s) / s; };
    const double res = residue_correction(opts);
    return res + contour_integral(f, opts, res);
}

std::vector<VRow> v_weight_sweep(const std::vector<double>& us, double t, double tj, const LanglandsParams& lp, int jobs) {
    const double root_q = std::sqrt(conductor_q(t, tj, lp).magnitude);
    std::vector<VRow> rows(us.size());
    parallel_for(static_cast<std::ptrdiff_t>(us.size()), jobs, [&](std::ptrdiff_t i) {
        VRow& r = rows[i];
        r.u = us[i];
        r.y = root_q * us[i] / (pi * pi * pi);
        r.direct = v_weight_direct(r.y, t, tj, lp, {1.0, 30.0, 1e-8});
        r.stirling = v_weight_stirling(r.y, t, tj, lp);
        r.deviation = std::abs(r.direct - r.stirling) / std::abs(r.stirling);
    });
    return rows;
}

ConductorBox conductor_box(double T, double t_max, double tj_lo, double tj_hi, const LanglandsParams& lp, int n) {
    if (n < 2 || !(T > 0) || !(t_max >= 0) || !(tj_hi > tj_lo)) {
        throw std::invalid_argument("conductor_box: bad grid");
    }
    ConductorBox box{INFINITY, 0.0};
    const double T6 = std::pow(T, 6);
    for (int i = 0; i < n; ++i) {
        const double t = -t_max + 2.0 * t_max * i / (n - 1);
        for (int j = 1; j <= n; ++j) {
            const double tj = tj_lo + (tj_hi - tj_lo) * j / n;
            const double r = conductor_q(t, tj, lp).magnitude / T6;
            box.c1 = std::min(box.c1, r);
            box.c2 = std::max(box.c2, r);
        }
    }
    return box;
}

}
