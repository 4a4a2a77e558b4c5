#include "doctest.h"

#include "rsm/afe.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace rsm::afe;

namespace {

constexpr double pi = std::numbers::pi;

// (1/2 pi i) int_{(c)} u^{-s} e^{s^2} ds / s, c > 0, in closed form
double erfc_weight(double u) { return 0.5 * std::erfc(std::log(u) / 2.0); }

}

TEST_CASE("langlands parameters") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> N(0.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        LanglandsParams lp{cplx{N(rng), N(rng)}, cplx{N(rng), N(rng)}};
        CHECK(std::abs(lp.alpha() + lp.beta() + lp.gamma()) < 1e-14);
    }
    LanglandsParams lp;
    for (cplx k : lp.kappas()) {
        CHECK(std::abs(k) < 1e-15);
    }
    for (cplx k : LanglandsParams::tempered(0.4, -1.1).kappas()) {
        CHECK(std::fabs(k.real()) < 1e-15);
    }
}

TEST_CASE("gamma factor product") {
    LanglandsParams lp;
    // real s, tj = 0: pi^{-3s} Gamma(s/2)^6
    for (double s : {0.5, 1.3, 4.0}) {
        CHECK(gamma_factor_product(s, 0.0, lp).real() ==
              doctest::Approx(std::pow(pi, -3 * s) * std::pow(std::tgamma(s / 2), 6)).epsilon(1e-12));
    }
    // s = 1: |Gamma(1/2 + i tj/2)|^2 = pi / cosh(pi tj / 2)
    for (double tj : {0.7, 5.0, 30.0}) {
        const double expect = -3.0 * std::log(pi) + 3.0 * std::log(pi / std::cosh(pi * tj / 2));
        CHECK(log_gamma_factor_product(1.0, tj, lp).real() == doctest::Approx(expect).epsilon(1e-12));
    }
    // Schwarz reflection for real-type parameters
    LanglandsParams real_type{cplx{0.2, 0.0}, cplx{0.45, 0.0}};
    for (cplx s : {cplx{0.5, 3.0}, cplx{2.0, -7.5}}) {
        const cplx a = gamma_factor_product(std::conj(s), 4.0, real_type);
        const cplx b = std::conj(gamma_factor_product(s, 4.0, real_type));
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
    }
    // symmetric in tj for the degenerate parameters
    CHECK(std::abs(gamma_factor_product({0.5, 1.0}, 6.0, lp) - gamma_factor_product({0.5, 1.0}, -6.0, lp)) < 1e-15);

    // Stirling: log |gamma(1/2)| ~ -(3 pi / 2) tj (six factors, each -pi tj / 4)
    const double lm = log_gamma_factor_product(0.5, 20.0, lp).real();
    CHECK(lm == doctest::Approx(-1.5 * pi * 20.0).epsilon(0.05));
    CHECK(log_gamma_factor_product(0.5, 200.0, lp).real() == doctest::Approx(-1.5 * pi * 200.0).epsilon(0.01));

    CHECK_THROWS_AS(gamma_factor_product(0.0, 0.0, lp), std::domain_error);
    CHECK_THROWS_AS(gamma_factor_product(-2.0 + 1e-8, 0.0, lp), std::domain_error);
    CHECK_NOTHROW(gamma_factor_product(-2.0 + 1e-3, 0.0, lp));
}

TEST_CASE("conductor") {
    LanglandsParams lp;
    const double T = 100.0;
    CHECK(conductor_q(0.0, T, lp).magnitude == doctest::Approx(std::pow(0.25 + T * T, 3)).epsilon(1e-14));
    LanglandsParams real_type{cplx{0.2, 0.0}, cplx{0.45, 0.0}};
    for (double t : {0.5, 13.0}) {
        CHECK(std::abs(conductor_q(-t, 70.0, real_type).q - std::conj(conductor_q(t, 70.0, real_type).q)) < 1e-6);
    }
    // brute-force product
    auto lpt = LanglandsParams::tempered(0.3, -0.7);
    cplx q = 1.0;
    for (cplx k : lpt.kappas()) {
        q *= (cplx{0.5, 5.0 + 80.0} - k) * (cplx{0.5, 5.0 - 80.0} - k);
    }
    CHECK(std::abs(conductor_q(5.0, 80.0, lpt).q - q) <= 1e-14 * std::abs(q));

    const double U = std::pow(T, 0.9);
    const auto box = conductor_box(T, U, T, T + U, lp, 41);
    CHECK(box.c1 > 0.1);
    CHECK(box.c2 / box.c1 <= 100.0);
    // the (T, 2T] box measured wider: corners t ~ T^{0.9}, tj ~ T pinch one factor
    const auto wide = conductor_box(T, U, T, 2 * T, lp, 41);
    CHECK(wide.c2 == doctest::Approx(64.0).epsilon(0.01));
    CHECK(wide.c2 / wide.c1 > 100.0);
}

TEST_CASE("weight V: limits and decay") {
    LanglandsParams lp;
    const double tj = 50.0;
    const double rq = std::sqrt(conductor_q(0.0, tj, lp).magnitude);

    const cplx small = v_weight_direct(1e-6 * rq, 0.0, tj, lp, {0.5, 30.0, 1e-8});
    CHECK(std::abs(small - 1.0) <= 0.05);
    // the contour left of 0 adds the residue: independent route to the same value
    const cplx shifted = v_weight_direct(1e-6 * rq, 0.0, tj, lp, {-0.25, 30.0, 1e-8});
    CHECK(std::abs(small - shifted) < 1e-10);
    CHECK_THROWS_AS(v_weight_direct(1e-6 * rq, 0.0, tj, lp), std::runtime_error);

    CHECK(std::abs(v_weight_direct(100.0 * rq, 0.0, tj, lp)) <= 1e-6);

    for (double f : {0.01, 0.3, 2.0}) {
        const cplx a = v_weight_direct(f * rq, 0.0, tj, lp);
        const cplx b = v_weight_direct(f * rq, 0.0, tj, lp, {3.0, 30.0, 1e-12});
        CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
        CHECK(std::abs(a - v_weight_direct(f * rq, 0.0, tj, lp, {1.0, 30.0, 1e-8})) <= 1e-8 * std::abs(a));
    }
    for (double f : {1.0, 4.0, 16.0}) {
        const double r = std::abs(v_weight_direct(2 * f * rq, 0.0, tj, lp)) / std::abs(v_weight_direct(f * rq, 0.0, tj, lp));
        CHECK(r <= 0.125);
    }
    // self-dual parameters, t = 0: real
    for (double f : {0.05, 1.0}) {
        const cplx v = v_weight_direct(f * rq, 0.0, tj, lp);
        CHECK(std::fabs(v.imag()) <= 1e-8 * std::abs(v));
        const cplx w = v_weight_stirling(f * rq, 0.0, tj, lp);
        CHECK(std::fabs(w.imag()) <= 1e-8 * std::abs(w));
    }
    CHECK_THROWS_AS(v_weight_direct(0.0, 0.0, tj, lp), std::invalid_argument);
    CHECK_THROWS_AS(v_weight_direct(1.0, 0.0, tj, lp, {-0.6, 30.0, 1e-8}), std::invalid_argument);
}

TEST_CASE("weight V: Stirling form") {
    LanglandsParams lp;
    for (double tj : {20.0, 50.0}) {
        const double rq = std::sqrt(conductor_q(0.0, tj, lp).magnitude);
        for (double u : {0.01, 0.1, 1.0, 10.0}) {
            const double y = rq * u / (pi * pi * pi);
            CHECK(v_weight_stirling(y, 0.0, tj, lp).real() == doctest::Approx(erfc_weight(8.0 * u)).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(v_weight_stirling(1.0, 0.0, 10.0, lp), std::invalid_argument);
    CHECK_THROWS_AS(v_weight_stirling(1.0, 40.0, 50.0, lp), std::invalid_argument);

    std::vector<double> us;
    for (int i = 0; i <= 10; ++i) {
        us.push_back(0.1 * std::pow(100.0, i / 10.0));
    }
    double dev50 = 0.0, dev200 = 0.0;
    for (const auto& r : v_weight_sweep(us, 0.0, 50.0, lp)) {
        dev50 = std::max(dev50, r.deviation);
    }
    for (const auto& r : v_weight_sweep(us, 0.0, 200.0, lp)) {
        dev200 = std::max(dev200, r.deviation);
    }
    CHECK(dev50 <= 0.1);
    CHECK(dev200 < dev50);

    // tempered, t != 0
    auto lpt = LanglandsParams::tempered(0.3, -0.7);
    const double rq = std::sqrt(conductor_q(3.0, 50.0, lpt).magnitude);
    const cplx a = v_weight_direct(0.37 * rq, 3.0, 50.0, lpt);
    const cplx b = v_weight_stirling(0.37 * rq, 3.0, 50.0, lpt);
    CHECK(std::abs(a - b) <= 0.01 * std::abs(b));
}
