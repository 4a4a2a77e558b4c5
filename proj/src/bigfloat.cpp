#include "rsm/bigfloat.hpp"

#include <mpfr.h>

#include <cmath>
#include <stdexcept>

namespace rsm::bigfloat {

namespace {

// RAII holder for a fixed number of mpfr_t at one precision.
template <int N>
struct Regs {
    mpfr_t v[N];
    explicit Regs(mpfr_prec_t prec) {
        for (auto& r : v) {
            mpfr_init2(r, prec);
            mpfr_set_ui(r, 0, MPFR_RNDN);
        }
    }
    ~Regs() {
        for (auto& r : v) {
            mpfr_clear(r);
        }
    }
    Regs(const Regs&) = delete;
    Regs& operator=(const Regs&) = delete;
};

mpfr_exp_t exponent_or_min(const mpfr_t x) {
    return mpfr_zero_p(x) ? mpfr_get_emin() : mpfr_get_exp(x);
}

}

double airy_ai_maclaurin(double x) {
    const double ax = std::abs(x);
    if (!std::isfinite(x) || ax > 200.0) {
        throw std::invalid_argument("airy_ai_maclaurin: |x| must be <= 200");
    }
    const auto prec = static_cast<mpfr_prec_t>(96 + 1.4427 * (4.0 / 3.0) * ax * std::sqrt(ax));
    // 0 c1, 1 c2, 2 x, 3 x^3, 4 f-term, 5 g-term, 6 f-sum, 7 g-sum, 8 scratch, 9 max term
    Regs<10> r(prec);
    auto& c1 = r.v[0];
    auto& c2 = r.v[1];
    auto& xx = r.v[2];
    auto& x3 = r.v[3];
    auto& tf = r.v[4];
    auto& tg = r.v[5];
    auto& sf = r.v[6];
    auto& sg = r.v[7];
    auto& tmp = r.v[8];

    // c1 = Ai(0) = 3^{-2/3} / Gamma(2/3), c2 = -Ai'(0) = 3^{-1/3} / Gamma(1/3).
    mpfr_set_ui(tmp, 2, MPFR_RNDN);
    mpfr_div_ui(tmp, tmp, 3, MPFR_RNDN);
    mpfr_gamma(c1, tmp, MPFR_RNDN);
    mpfr_set_ui(tmp, 3, MPFR_RNDN);
    mpfr_cbrt(tmp, tmp, MPFR_RNDN);
    mpfr_sqr(tmp, tmp, MPFR_RNDN);
    mpfr_mul(c1, c1, tmp, MPFR_RNDN);
    mpfr_ui_div(c1, 1, c1, MPFR_RNDN);

    mpfr_set_ui(tmp, 1, MPFR_RNDN);
    mpfr_div_ui(tmp, tmp, 3, MPFR_RNDN);
    mpfr_gamma(c2, tmp, MPFR_RNDN);
    mpfr_set_ui(tmp, 3, MPFR_RNDN);
    mpfr_cbrt(tmp, tmp, MPFR_RNDN);
    mpfr_mul(c2, c2, tmp, MPFR_RNDN);
    mpfr_ui_div(c2, 1, c2, MPFR_RNDN);

    mpfr_set_d(xx, x, MPFR_RNDN);
    mpfr_pow_ui(x3, xx, 3, MPFR_RNDN);
    mpfr_set_ui(tf, 1, MPFR_RNDN);
    mpfr_set(tg, xx, MPFR_RNDN);
    mpfr_set(sf, tf, MPFR_RNDN);
    mpfr_set(sg, tg, MPFR_RNDN);
    mpfr_exp_t max_exp = std::max(exponent_or_min(tf), exponent_or_min(tg));
    for (unsigned long k = 1; k < 100000; ++k) {
        mpfr_mul(tf, tf, x3, MPFR_RNDN);
        mpfr_div_ui(tf, tf, (3 * k - 1) * (3 * k), MPFR_RNDN);
        mpfr_mul(tg, tg, x3, MPFR_RNDN);
        mpfr_div_ui(tg, tg, (3 * k) * (3 * k + 1), MPFR_RNDN);
        mpfr_add(sf, sf, tf, MPFR_RNDN);
        mpfr_add(sg, sg, tg, MPFR_RNDN);
        const mpfr_exp_t e = std::max(exponent_or_min(tf), exponent_or_min(tg));
        max_exp = std::max(max_exp, e);
        if (k > 2 && e < max_exp - static_cast<mpfr_exp_t>(prec) - 8) {
            break;
        }
    }
    mpfr_mul(sf, sf, c1, MPFR_RNDN);
    mpfr_mul(sg, sg, c2, MPFR_RNDN);
    mpfr_sub(sf, sf, sg, MPFR_RNDN);
    return mpfr_get_d(sf, MPFR_RNDN);
}

std::complex<double> bessel_0f1(std::complex<double> nu, double x) {
    if (!(x >= 0.0 && x <= 1000.0) || nu.real() < 0.0) {
        throw std::invalid_argument("bessel_0f1: need 0 <= x <= 1000 and Re nu >= 0");
    }
    const auto prec = static_cast<mpfr_prec_t>(96 + 1.4427 * x);
    // 0 term re, 1 term im, 2 sum re, 3 sum im, 4 scratch a, 5 scratch b, 6 -x^2/4,
    // 7 k+1+Re nu, 8 denominator. The denominator has to be exact to working
    // precision: a double rounding there is amplified by the e^x term size.
    Regs<9> r(prec);
    auto& tr = r.v[0];
    auto& ti = r.v[1];
    auto& sr = r.v[2];
    auto& si = r.v[3];
    auto& a = r.v[4];
    auto& b = r.v[5];
    auto& q = r.v[6];
    auto& cr = r.v[7];
    auto& den = r.v[8];

    mpfr_set_d(q, x, MPFR_RNDN);
    mpfr_sqr(q, q, MPFR_RNDN);
    mpfr_div_si(q, q, -4, MPFR_RNDN);
    mpfr_set_ui(tr, 1, MPFR_RNDN);
    mpfr_set_ui(sr, 1, MPFR_RNDN);
    mpfr_exp_t max_exp = 1;
    const double nr = nu.real(), ni = nu.imag();
    for (unsigned long k = 0; k < 1000000; ++k) {
        // term *= q / ((k+1) (k+1+nu)) = q conj(k+1+nu) / ((k+1) |k+1+nu|^2)
        mpfr_set_d(cr, nr, MPFR_RNDN);
        mpfr_add_ui(cr, cr, k + 1, MPFR_RNDN);
        mpfr_sqr(den, cr, MPFR_RNDN);
        mpfr_set_d(b, ni, MPFR_RNDN);
        mpfr_sqr(b, b, MPFR_RNDN);
        mpfr_add(den, den, b, MPFR_RNDN);
        mpfr_mul_ui(den, den, k + 1, MPFR_RNDN);
        // (tr + i ti)(cr - i ni)
        mpfr_mul(a, tr, cr, MPFR_RNDN);
        mpfr_mul_d(b, ti, ni, MPFR_RNDN);
        mpfr_add(a, a, b, MPFR_RNDN);
        mpfr_mul_d(b, tr, -ni, MPFR_RNDN);
        mpfr_mul(ti, ti, cr, MPFR_RNDN);
        mpfr_add(ti, ti, b, MPFR_RNDN);
        mpfr_set(tr, a, MPFR_RNDN);
        mpfr_mul(tr, tr, q, MPFR_RNDN);
        mpfr_mul(ti, ti, q, MPFR_RNDN);
        mpfr_div(tr, tr, den, MPFR_RNDN);
        mpfr_div(ti, ti, den, MPFR_RNDN);
        mpfr_add(sr, sr, tr, MPFR_RNDN);
        mpfr_add(si, si, ti, MPFR_RNDN);
        const mpfr_exp_t e = std::max(exponent_or_min(tr), exponent_or_min(ti));
        max_exp = std::max(max_exp, e);
        if (static_cast<double>(k) > x && e < max_exp - static_cast<mpfr_exp_t>(prec) - 8) {
            return {mpfr_get_d(sr, MPFR_RNDN), mpfr_get_d(si, MPFR_RNDN)};
        }
    }
    throw std::runtime_error("bessel_0f1: series did not converge");
}

}
