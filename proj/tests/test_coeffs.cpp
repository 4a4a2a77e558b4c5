#include "doctest.h"

#include "rsm/arith.hpp"
#include "rsm/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

using namespace rsm::coeffs;

namespace {

// Dense product q * prod_{k>=1} (1 - q^k)^24, one factor at a time.
std::vector<long double> tau_dense(int n_max) {
    std::vector<long double> p(static_cast<std::size_t>(n_max), 0.0L);
    p[0] = 1.0L;
    for (int k = 1; k < n_max; ++k) {
        for (int rep = 0; rep < 24; ++rep) {
            for (int i = n_max - 1; i >= k; --i) {
                p[static_cast<std::size_t>(i)] -= p[static_cast<std::size_t>(i - k)];
            }
        }
    }
    std::vector<long double> tau(static_cast<std::size_t>(n_max + 1), 0.0L);
    for (int n = 1; n <= n_max; ++n) tau[static_cast<std::size_t>(n)] = p[static_cast<std::size_t>(n - 1)];
    return tau;
}

}

TEST_CASE("tau agrees with the dense product expansion") {
    const auto tau = ramanujan_tau(120);
    const auto dense = tau_dense(120);
    CHECK(static_cast<long long>(tau[2]) == -24);
    for (int n = 1; n <= 120; ++n) {
        CHECK(static_cast<long double>(tau[static_cast<std::size_t>(n)]) == dense[static_cast<std::size_t>(n)]);
    }
    CHECK_THROWS_AS(ramanujan_tau(0), std::invalid_argument);
}

TEST_CASE("delta-form GL(2) table") {
    const auto gl2 = build_gl2_delta(4000);
    CHECK(gl2(1) == 1.0);
    CHECK(gl2(2) == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-14));
    CHECK(gl2(2) == doctest::Approx(-0.530330).epsilon(1e-6));
    CHECK(gl2(4) == doctest::Approx(gl2(2) * gl2(2) - 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(gl2(4001), std::out_of_range);

    // Multiplicativity and the prime-power recursion on stored values.
    for (std::int64_t m = 2; m <= 60; ++m) {
        for (std::int64_t n = 2; m * n <= 4000; n += 7) {
            if (std::gcd(m, n) == 1) CHECK(std::abs(gl2(m * n) - gl2(m) * gl2(n)) < 1e-10);
        }
    }
    int ramanujan_violations = 0;
    for (std::int64_t p = 2; p <= 4000; ++p) {
        if (rsm::arith::factorize(p).size() != 1 || rsm::arith::factorize(p)[0].second != 1) continue;
        if (std::abs(gl2(p)) > 2.0) ++ramanujan_violations;
        double prev = 1.0, cur = gl2(p);
        for (std::int64_t pk = p; pk <= 4000 / p; pk *= p) {
            const double nxt = gl2(p) * cur - prev;
            CHECK(std::abs(gl2(pk * p) - nxt) < 1e-10);
            prev = cur;
            cur = nxt;
        }
    }
    CHECK(ramanujan_violations == 0);
}

TEST_CASE("symmetric square table") {
    const auto gl2 = build_gl2_delta(10000);
    const auto gl3 = build_gl3_sym_square(gl2);
    CHECK(gl3(1, 1) == cplx{1.0, 0.0});
    CHECK(gl3(1, 2).real() == doctest::Approx(gl2(2) * gl2(2) - 1.0).epsilon(1e-13));
    CHECK(gl3(1, 2).real() == doctest::Approx(-0.71875).epsilon(1e-12));
    CHECK(hecke_expand(gl3, 2, 2) == gl3(2, 1) * gl3(1, 2) - 1.0);

    // L(sym^2, s) = zeta(2s) sum lambda(n^2) n^{-s}, so A(1,n) = sum_{m^2 | n} lambda((n/m^2)^2).
    for (std::int64_t n = 1; n <= 100; ++n) {
        double expect = 0.0;
        for (std::int64_t m = 1; m * m <= n; ++m) {
            if (n % (m * m) == 0) expect += gl2((n / (m * m)) * (n / (m * m)));
        }
        CHECK(std::abs(gl3(1, n) - expect) < 1e-9);
    }
    for (std::int64_t m = 1; m <= 100; ++m) {
        for (std::int64_t n = 1; m * n <= 10000; ++n) {
            CHECK(std::abs(gl3(m, n).imag()) < 1e-10);
            CHECK(std::abs(gl3(n, m) - std::conj(gl3(m, n))) < 1e-10);
        }
    }
    CHECK_THROWS_AS(gl3(101, 100), std::out_of_range);
    CHECK_THROWS_AS(hecke_expand(gl3, 200, 100), std::out_of_range);
}

TEST_CASE("Hecke decomposition reproduces both GL(3) tables for ln <= 10^4") {
    const auto sym = build_gl3_sym_square(build_gl2_delta(10000));
    const auto rnd = build_gl3_random(10000, 0);
    for (const auto* t : {&sym, &rnd}) {
        double worst = 0.0;
        for (std::int64_t l = 1; l <= 10000; ++l) {
            for (std::int64_t n = 1; l * n <= 10000; ++n) {
                const cplx a = (*t)(l, n);
                worst = std::max(worst, std::abs(hecke_expand(*t, l, n) - a) / std::max(1.0, std::abs(a)));
            }
        }
        CHECK(worst <= 1e-10);
    }
    // Random model: complex values, dual symmetry, Hecke relation at p.
    bool any_complex = false;
    for (std::int64_t m = 1; m <= 50; ++m) {
        for (std::int64_t n = 1; n <= 50; ++n) {
            CHECK(std::abs(rnd(n, m) - std::conj(rnd(m, n))) < 1e-10);
            any_complex = any_complex || std::abs(rnd(m, n).imag()) > 1e-3;
        }
    }
    CHECK(any_complex);
    for (std::int64_t p : {2, 3, 5, 7, 97}) {
        CHECK(std::abs(rnd(p, 1) * rnd(1, p) - rnd(p, p) - 1.0) < 1e-12);
        const auto& s = rnd.satake(p);
        CHECK(std::abs(s[0] * s[1] * s[2] - 1.0) < 1e-12);
        CHECK(std::abs(rnd(1, p) - (s[0] + s[1] + s[2])) < 1e-12);
    }
}

TEST_CASE("rankin coefficients") {
    const auto gl2 = build_gl2_delta(2000);
    const auto gl3 = build_gl3_sym_square(gl2);
    const auto r = rankin_coeffs(gl3, gl2, 2000);
    CHECK(std::abs(r[1] - 1.0) < 1e-15);
    CHECK(std::abs(r[4] - (gl2(4) * gl3(1, 4) + gl2(1) * gl3(2, 1))) < 1e-14);
    for (std::int64_t p : {2, 3, 101, 1999}) {
        CHECK(std::abs(r[static_cast<std::size_t>(p)] - gl2(p) * gl3(1, p)) < 1e-14);
    }
    CHECK_THROWS_AS(rankin_coeffs(gl3, gl2, 3000), std::out_of_range);
}

TEST_CASE("coefficient mean square") {
    const auto sym = build_gl3_sym_square(build_gl2_delta(10000));
    const auto rnd = build_gl3_random(10000, 4);
    CHECK(coefficient_mean_square(sym, 1).sum == doctest::Approx(1.0));
    for (const auto* t : {&sym, &rnd}) {
        const auto a = coefficient_mean_square(*t, 1000);
        const auto b = coefficient_mean_square(*t, 10000);
        CHECK(b.ratio <= 2.0 * a.ratio);
        CHECK(b.sum > a.sum);
    }
}

TEST_CASE("csv export") {
    const auto gl3 = build_gl3_random(6, 1);
    std::ostringstream os;
    gl3.write_csv(os);
    const std::string s = os.str();
    CHECK(s.rfind("m,n,re,im\n", 0) == 0);
    // pairs with mn <= 6: 6 + 3 + 2 + 1 + 1 + 1 = 14 rows
    CHECK(gl3.size() == 14);
    CHECK(std::count(s.begin(), s.end(), '\n') == 15);
    CHECK(s.find("\n1,1,1,0\n") != std::string::npos);
}
