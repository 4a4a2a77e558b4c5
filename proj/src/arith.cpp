#include "rsm/arith.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rsm::arith {

Residue::Residue(std::int64_t value, std::int64_t modulus) : value_(value), modulus_(modulus) {
    if (modulus < 1) {
        throw std::invalid_argument("Residue: modulus must be >= 1");
    }
    if (value < 0 || value >= modulus) {
        throw std::invalid_argument("Residue: value must lie in [0, modulus)");
    }
}

std::int64_t reduce(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::optional<std::int64_t> mod_inverse(std::int64_t a, std::int64_t m) {
    if (m == 1) {
        return 0;
    }
    std::int64_t old_r = reduce(a, m), r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) {
        return std::nullopt;
    }
    return reduce(old_s, m);
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("factorize: n must be >= 1");
    }
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        out.emplace_back(n, 1);
    }
    return out;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t out = n;
    for (auto [p, e] : factorize(n)) {
        out = out / p * (p - 1);
    }
    return out;
}

int moebius(std::int64_t n) {
    int out = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) {
            return 0;
        }
        out = -out;
    }
    return out;
}

cplx unit_root(std::int64_t k, std::int64_t c) {
    const std::int64_t r = reduce(k, c);
    if (r == 0) {
        return {1.0, 0.0};
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(c);
    return {std::cos(angle), std::sin(angle)};
}

std::vector<cplx> unit_roots(std::int64_t c) {
    std::vector<cplx> out(static_cast<std::size_t>(c));
    for (std::int64_t k = 0; k < c; ++k) {
        out[static_cast<std::size_t>(k)] = unit_root(k, c);
    }
    return out;
}

namespace {

void require_modulus(std::int64_t c, const char* what) {
    if (c < 1) {
        throw std::invalid_argument(std::string(what) + ": modulus must be >= 1");
    }
}

}

ExactSumValue kloosterman_sum(std::int64_t m, std::int64_t n, std::int64_t c) {
    require_modulus(c, "kloosterman_sum");
    const std::int64_t mr = reduce(m, c), nr = reduce(n, c);
    cplx acc{0.0, 0.0};
    std::int64_t terms = 0;
    for (std::int64_t h = 0; h < c; ++h) {
        auto hbar = mod_inverse(h, c);
        if (!hbar) {
            continue;
        }
        acc += unit_root(h * mr % c + *hbar * nr % c, c);
        ++terms;
    }
    return {acc.real(), acc.imag(), c, terms};
}

double ramanujan_sum(std::int64_t n, std::int64_t s) {
    require_modulus(s, "ramanujan_sum");
    const std::int64_t nr = reduce(n, s);
    double acc = 0.0;
    for (std::int64_t h = 0; h < s; ++h) {
        if (std::gcd(h, s) == 1) {
            acc += unit_root(h * nr, s).real();
        }
    }
    // The exact value is an integer.
    return std::round(acc);
}

TwistCheck twist_decomposition_check(std::int64_t m, std::int64_t n, std::int64_t c) {
    require_modulus(c, "twist_decomposition_check");
    TwistCheck out;
    out.lhs = kloosterman_sum(m, n, c).value() * unit_root(-(reduce(m, c) + reduce(n, c)), c);

    cplx rhs{0.0, 0.0};
    for (std::int64_t a = 1; a <= c; ++a) {
        if (c % a != 0) {
            continue;
        }
        const std::int64_t b = c / a;
        const std::int64_t mb = reduce(m, b), nb = reduce(n, b);
        for (std::int64_t x = 0; x < b; ++x) {
            auto xbar = mod_inverse(x, b);
            auto xabar = mod_inverse(x + a, b);
            if (!xbar || !xabar) {
                continue;
            }
            rhs += unit_root(*xbar * mb % b - *xabar * nb % b, b);
            ++out.terms;
        }
    }
    out.rhs = rhs;
    return out;
}

MultiplicativityCheck kloosterman_multiplicativity_check(std::int64_t m, std::int64_t n,
                                                         std::int64_t u, std::int64_t v) {
    require_modulus(u, "kloosterman_multiplicativity_check");
    require_modulus(v, "kloosterman_multiplicativity_check");
    if (std::gcd(u, v) != 1) {
        throw std::invalid_argument("kloosterman_multiplicativity_check: gcd(u, v) must be 1");
    }
    const std::int64_t vbar = *mod_inverse(v, u);
    const std::int64_t ubar = *mod_inverse(u, v);
    MultiplicativityCheck out;
    out.direct = kloosterman_sum(m, n, u * v).value();
    out.factored = kloosterman_sum(reduce(m, u) * vbar, reduce(n, u) * vbar, u).value()
                 * kloosterman_sum(reduce(m, v) * ubar, reduce(n, v) * ubar, v).value();
    return out;
}

QuadraticPair kloosterman_average_identity(std::int64_t b, std::int64_t r, const Coefficients& coeffs) {
    require_modulus(b, "kloosterman_average_identity");
    require_modulus(r, "kloosterman_average_identity");
    for (auto [p, e] : factorize(r)) {
        if (b % p != 0) {
            throw std::invalid_argument("kloosterman_average_identity: every prime of r must divide b");
        }
    }
    const std::int64_t c = b * r;
    const auto roots = unit_roots(c);

    // inner[h] = sum_m c_m e(hbar m / c) for units h mod c.
    std::vector<std::int64_t> units;
    std::vector<cplx> inner;
    for (std::int64_t h = 0; h < c; ++h) {
        auto hbar = mod_inverse(h, c);
        if (!hbar) {
            continue;
        }
        cplx acc{0.0, 0.0};
        for (const auto& [m, cm] : coeffs) {
            acc += cm * roots[static_cast<std::size_t>(*hbar * reduce(m, c) % c)];
        }
        units.push_back(h);
        inner.push_back(acc);
    }

    QuadraticPair out;
    for (std::int64_t x = 0; x < b; ++x) {
        const std::int64_t rx = reduce(r * x, c);
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < units.size(); ++i) {
            acc += roots[static_cast<std::size_t>(units[i] * rx % c)] * inner[i];
        }
        out.lhs += std::norm(acc);
    }

    const auto roots_b = unit_roots(b);
    double rhs = 0.0;
    for (std::int64_t y = 0; y < b; ++y) {
        if (std::gcd(y, b) != 1) {
            continue;
        }
        cplx acc{0.0, 0.0};
        for (const auto& [m, cm] : coeffs) {
            if (m % r != 0) {
                continue;
            }
            acc += cm * roots_b[static_cast<std::size_t>(y * reduce(m / r, b) % b)];
        }
        rhs += std::norm(acc);
    }
    out.rhs = static_cast<double>(b) * static_cast<double>(r * r) * rhs;
    return out;
}

QuadraticPair ramanujan_cauchy_check(std::int64_t s, const Coefficients& coeffs) {
    require_modulus(s, "ramanujan_cauchy_check");
    cplx lin{0.0, 0.0};
    for (const auto& [l, bl] : coeffs) {
        lin += bl * ramanujan_sum(l, s);
    }
    const auto roots = unit_roots(s);
    double rhs = 0.0;
    for (std::int64_t h = 0; h < s; ++h) {
        if (std::gcd(h, s) != 1) {
            continue;
        }
        cplx acc{0.0, 0.0};
        for (const auto& [l, bl] : coeffs) {
            acc += bl * roots[static_cast<std::size_t>(h * reduce(l, s) % s)];
        }
        rhs += std::norm(acc);
    }
    return {std::norm(lin), static_cast<double>(s) * rhs};
}

double sqrt_product_identity_residual(double m, double n) {
    const double lhs = -2.0 * std::sqrt(m * n);
    const double d = std::sqrt(m) - std::sqrt(n);
    const double rhs = -m - n + d * d;
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1.0);
}

}
