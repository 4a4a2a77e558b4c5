#include "rsm/stphase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsm::stphase {

namespace {

// u_k of DLMF 9.7.2: u_0 = 1, u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / ((2k-1) 216 k)
double airy_u(int k) {
    double u = 1.0;
    for (int i = 1; i <= k; ++i) {
        u *= (6.0 * i - 5.0) * (6.0 * i - 3.0) * (6.0 * i - 1.0) / ((2.0 * i - 1.0) * 216.0 * i);
    }
    return u;
}

#ifdef __SIZEOF_FLOAT128__
using wide = __float128;
#else
using wide = long double;
#endif

// 0.d1d2...d34 from its 34 digits; exact up to the final division
wide from_digits(const char* digits) {
    wide v = 0, p = 1;
    for (const char* c = digits; *c; ++c) {
        v = v * 10 + (*c - '0');
        p *= 10;
    }
    return v / p;
}

double airy_maclaurin(double x) {
    // Ai(0) and -Ai'(0). For x near 8 the two series cancel by ~1e13, so
    // both the constants and the sums need more than long double.
    static const wide c1 = from_digits("3550280538878172392600631860041831");
    static const wide c2 = from_digits("2588194037928067984051835601892039");
    const wide xw = x;
    const wide x3 = xw * xw * xw;
    wide f = 1, g = xw;
    wide tf = 1, tg = xw;
    for (int k = 1; k < 400; ++k) {
        tf *= x3 / ((3 * k - 1) * (3 * k));
        tg *= x3 / ((3 * k) * (3 * k + 1));
        f += tf;
        g += tg;
        const wide af = f < 0 ? -f : f, ag = g < 0 ? -g : g;
        const wide atf = tf < 0 ? -tf : tf, atg = tg < 0 ? -tg : tg;
        if (atf <= af * wide(1e-33) && atg <= ag * wide(1e-33)) {
            break;
        }
    }
    return static_cast<double>(c1 * f - c2 * g);
}

// sum of the asymptotic series up to its smallest term
template<typename Term_>
double truncated_sum(Term_ term, int kmax) {
    double s = 0.0, prev = INFINITY;
    for (int k = 0; k < kmax; ++k) {
        double t = term(k);
        if (std::fabs(t) > prev) {
            break;
        }
        s += t;
        prev = std::fabs(t);
        if (prev < 1e-18 * std::fabs(s)) {
            break;
        }
    }
    return s;
}

double airy_positive_asymptotic(double x) {
    double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double s = truncated_sum([&](int k) { return ((k & 1) ? -1.0 : 1.0) * airy_u(k) * std::pow(zeta, -k); }, 80);
    return std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(x, 0.25)) * s;
}

double airy_oscillatory(double x) {
    // x > 0, returns Ai(-x)
    double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double ce = truncated_sum([&](int k) { return ((k & 1) ? -1.0 : 1.0) * airy_u(2 * k) * std::pow(zeta, -2 * k); }, 40);
    double so = truncated_sum([&](int k) { return ((k & 1) ? -1.0 : 1.0) * airy_u(2 * k + 1) * std::pow(zeta, -2 * k - 1); }, 40);
    double chi = zeta - std::numbers::pi / 4;
    return (std::cos(chi) * ce + std::sin(chi) * so) / (std::sqrt(std::numbers::pi) * std::pow(x, 0.25));
}

}

double airy_ai(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("airy_ai: non-finite argument");
    }
    if (x < -1000.0) {
        throw std::domain_error("airy_ai: argument below -1000 (phase loses precision)");
    }
    if (std::fabs(x) <= 8.0) {
        return airy_maclaurin(x);
    }
    if (x > 8.0) {
        return airy_positive_asymptotic(x);
    }
    return airy_oscillatory(-x);
}

double airy_coefficient(int k) {
    if (k < 0) {
        throw std::invalid_argument("airy_coefficient: negative index");
    }
    int half = k / 2;
    double sign = (half & 1) ? -1.0 : 1.0;
    return sign * airy_u(k) * std::pow(1.5, k);
}

double airy_negative_asymptotic(double x, int terms) {
    if (!(x >= 5.0)) {
        throw std::invalid_argument("airy_negative_asymptotic: x must be >= 5");
    }
    if (terms < 0) {
        throw std::invalid_argument("airy_negative_asymptotic: negative term count");
    }
    double z = 2.0 / 3.0 * x * std::sqrt(x) - std::numbers::pi / 4;
    double even = 0.0, odd = 0.0;
    for (int k = 0; k < terms; ++k) {
        double c = airy_coefficient(k);
        if (k % 2 == 0) {
            even += c * std::pow(x, -1.5 * k);
        } else {
            odd += c * std::pow(x, -1.5 * k);
        }
    }
    return (std::cos(z) * even + std::sin(z) * odd) / (std::sqrt(std::numbers::pi) * std::pow(x, 0.25));
}

}
