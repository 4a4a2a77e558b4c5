#include "rsm/coeffs.hpp"

#include "rsm/arith.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace rsm::coeffs {

const char* source_name(Source s) {
    return s == Source::delta_form ? "delta-form" : "random-model";
}

namespace {

__int128 checked_mul(__int128 a, __int128 b) {
    __int128 r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("ramanujan_tau: 128-bit overflow");
    }
    return r;
}

__int128 checked_add(__int128 a, __int128 b) {
    __int128 r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("ramanujan_tau: 128-bit overflow");
    }
    return r;
}

// Smallest prime factor for 0..n.
std::vector<std::int64_t> spf_table(std::int64_t n) {
    std::vector<std::int64_t> spf(static_cast<std::size_t>(n + 1), 0);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (spf[static_cast<std::size_t>(i)] == 0) {
            for (std::int64_t j = i; j <= n; j += i) {
                if (spf[static_cast<std::size_t>(j)] == 0) {
                    spf[static_cast<std::size_t>(j)] = i;
                }
            }
        }
    }
    return spf;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    const auto spf = spf_table(n);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (spf[static_cast<std::size_t>(i)] == i) {
            out.push_back(i);
        }
    }
    return out;
}

// Angle with density (2/pi) sin^2, by rejection.
double sato_tate_angle(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const double t = std::numbers::pi * u(rng);
        if (u(rng) <= std::sin(t) * std::sin(t)) {
            return t;
        }
    }
}

// Eigenvalues of a Haar-random SU(3) matrix: uniform angles accepted with
// probability |Vandermonde|^2 / 27 (the Weyl density; 27 is its maximum).
std::array<std::complex<double>, 3> haar_su3(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const double t1 = 2.0 * std::numbers::pi * u(rng);
        const double t2 = 2.0 * std::numbers::pi * u(rng);
        const std::array<std::complex<double>, 3> z{std::polar(1.0, t1), std::polar(1.0, t2), std::polar(1.0, -(t1 + t2))};
        const double v = std::norm(z[0] - z[1]) * std::norm(z[0] - z[2]) * std::norm(z[1] - z[2]);
        if (27.0 * u(rng) <= v) {
            return z;
        }
    }
}

void require_range(std::int64_t n_max) {
    if (n_max < 1 || n_max > 1000000) {
        throw std::invalid_argument("coefficient table size must lie in [1, 10^6]");
    }
}

}

std::vector<__int128> ramanujan_tau(std::int64_t n_max) {
    require_range(n_max);
    // Delta = q * (prod (1 - q^k)^3)^8 and prod (1 - q^k)^3 = sum (-1)^k (2k+1) q^{k(k+1)/2}.
    const std::int64_t deg = n_max - 1;
    std::vector<std::pair<std::int64_t, __int128>> eta3;
    for (std::int64_t k = 0;; ++k) {
        const std::int64_t e = k * (k + 1) / 2;
        if (e > deg) {
            break;
        }
        eta3.emplace_back(e, (k % 2 ? -1 : 1) * (2 * k + 1));
    }
    std::vector<__int128> acc(static_cast<std::size_t>(deg + 1), 0);
    for (auto [e, c] : eta3) {
        acc[static_cast<std::size_t>(e)] = c;
    }
    for (int power = 2; power <= 8; ++power) {
        std::vector<__int128> next(acc.size(), 0);
        for (std::int64_t i = 0; i <= deg; ++i) {
            const __int128 a = acc[static_cast<std::size_t>(i)];
            if (a == 0) {
                continue;
            }
            for (auto [e, c] : eta3) {
                if (i + e > deg) {
                    break;
                }
                auto& slot = next[static_cast<std::size_t>(i + e)];
                slot = checked_add(slot, checked_mul(a, c));
            }
        }
        acc = std::move(next);
    }
    std::vector<__int128> tau(static_cast<std::size_t>(n_max + 1), 0);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        tau[static_cast<std::size_t>(n)] = acc[static_cast<std::size_t>(n - 1)];
    }
    return tau;
}

GL2CoefficientTable::GL2CoefficientTable(std::vector<double> lambda, Source source)
    : lambda_(std::move(lambda)), source_(source) {
    if (lambda_.size() < 2 || lambda_[1] != 1.0) {
        throw std::invalid_argument("GL2CoefficientTable: lambda(1) must be 1");
    }
}

double GL2CoefficientTable::operator()(std::int64_t n) const {
    if (n < 1 || n > n_max()) {
        throw std::out_of_range("GL2CoefficientTable: index " + std::to_string(n) + " out of range");
    }
    return lambda_[static_cast<std::size_t>(n)];
}

GL2CoefficientTable build_gl2_delta(std::int64_t n_max) {
    const auto tau = ramanujan_tau(n_max);
    std::vector<double> lambda(static_cast<std::size_t>(n_max + 1), 0.0);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const long double t = static_cast<long double>(tau[static_cast<std::size_t>(n)]);
        lambda[static_cast<std::size_t>(n)] = static_cast<double>(t / std::pow(static_cast<long double>(n), 5.5L));
    }
    lambda[1] = 1.0;
    return {std::move(lambda), Source::delta_form};
}

GL2CoefficientTable build_gl2_random(std::int64_t n_max, std::uint64_t seed) {
    require_range(n_max);
    std::mt19937_64 rng(seed);
    std::vector<double> lambda(static_cast<std::size_t>(n_max + 1), 0.0);
    lambda[1] = 1.0;
    const auto spf = spf_table(n_max);
    for (std::int64_t p : primes_up_to(n_max)) {
        const double lp = 2.0 * std::cos(sato_tate_angle(rng));
        double prev = 1.0, cur = lp;
        for (std::int64_t pk = p;; pk *= p) {
            lambda[static_cast<std::size_t>(pk)] = cur;
            const double nxt = lp * cur - prev;
            prev = cur;
            cur = nxt;
            if (pk > n_max / p) {
                break;
            }
        }
    }
    for (std::int64_t n = 2; n <= n_max; ++n) {
        const std::int64_t p = spf[static_cast<std::size_t>(n)];
        std::int64_t pk = 1, rest = n;
        while (rest % p == 0) {
            rest /= p;
            pk *= p;
        }
        if (rest > 1) {
            lambda[static_cast<std::size_t>(n)] = lambda[static_cast<std::size_t>(pk)] * lambda[static_cast<std::size_t>(rest)];
        }
    }
    return {std::move(lambda), Source::random_model};
}

cplx GL3CoefficientTable::operator()(std::int64_t m, std::int64_t n) const {
    if (m < 1 || n < 1 || m > n_max_ / n) {
        throw std::out_of_range("GL3CoefficientTable: index (" + std::to_string(m) + "," + std::to_string(n) + ") out of range");
    }
    return rows_[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
}

const GL3CoefficientTable::Satake& GL3CoefficientTable::satake(std::int64_t p) const {
    if (p < 2 || p > n_max_ || prime_index_[static_cast<std::size_t>(p)] < 0) {
        throw std::out_of_range("GL3CoefficientTable: no Satake data at " + std::to_string(p));
    }
    return satake_[static_cast<std::size_t>(prime_index_[static_cast<std::size_t>(p)])];
}

std::size_t GL3CoefficientTable::size() const {
    std::size_t total = 0;
    for (std::size_t m = 1; m < rows_.size(); ++m) {
        total += rows_[m].size() - 1;
    }
    return total;
}

void GL3CoefficientTable::write_csv(std::ostream& out) const {
    char buf[96];
    out << "m,n,re,im\n";
    for (std::size_t m = 1; m < rows_.size(); ++m) {
        for (std::size_t n = 1; n < rows_[m].size(); ++n) {
            std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", m, n, rows_[m][n].real(), rows_[m][n].imag());
            out << buf;
        }
    }
}

GL3CoefficientTable GL3CoefficientTable::from_satake(std::int64_t n_max, Source source,
                                                     const std::vector<std::int64_t>& primes,
                                                     const std::vector<Satake>& params) {
    require_range(n_max);
    if (primes.size() != params.size()) {
        throw std::invalid_argument("from_satake: one parameter triple per prime required");
    }
    GL3CoefficientTable t;
    t.n_max_ = n_max;
    t.source_ = source;
    t.prime_index_.assign(static_cast<std::size_t>(n_max + 1), -1);
    t.satake_ = params;

    // Per prime: A(p^a, p^b) = s_{(a+b, a)}(Satake) = h_{a+b} h_a - h_{a+b+1} h_{a-1}.
    std::vector<std::vector<cplx>> h(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::int64_t p = primes[i];
        t.prime_index_[static_cast<std::size_t>(p)] = static_cast<std::int64_t>(i);
        int kmax = 2;
        for (std::int64_t pk = p; pk <= n_max / p; pk *= p) {
            ++kmax;
        }
        const auto& a = params[i];
        const cplx e1 = a[0] + a[1] + a[2];
        const cplx e2 = a[0] * a[1] + a[0] * a[2] + a[1] * a[2];
        const cplx e3 = a[0] * a[1] * a[2];
        auto& hk = h[i];
        hk.assign(static_cast<std::size_t>(kmax + 1), cplx{0, 0});
        hk[0] = 1.0;
        for (int k = 1; k <= kmax; ++k) {
            cplx v = e1 * hk[static_cast<std::size_t>(k - 1)];
            if (k >= 2) v -= e2 * hk[static_cast<std::size_t>(k - 2)];
            if (k >= 3) v += e3 * hk[static_cast<std::size_t>(k - 3)];
            hk[static_cast<std::size_t>(k)] = v;
        }
    }
    auto local = [&](std::size_t i, int a, int b) {
        const auto& hk = h[i];
        cplx v = hk[static_cast<std::size_t>(a + b)] * hk[static_cast<std::size_t>(a)];
        if (a >= 1) {
            v -= hk[static_cast<std::size_t>(a + b + 1)] * hk[static_cast<std::size_t>(a - 1)];
        }
        return v;
    };

    const auto spf = spf_table(n_max);
    auto factor = [&](std::int64_t n) {
        std::vector<std::pair<std::int64_t, int>> f;
        while (n > 1) {
            const std::int64_t p = spf[static_cast<std::size_t>(n)];
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.emplace_back(p, e);
        }
        return f;
    };

    t.rows_.resize(static_cast<std::size_t>(n_max + 1));
    for (std::int64_t m = 1; m <= n_max; ++m) {
        const auto fm = factor(m);
        auto& row = t.rows_[static_cast<std::size_t>(m)];
        row.assign(static_cast<std::size_t>(n_max / m + 1), cplx{0, 0});
        for (std::int64_t n = 1; n <= n_max / m; ++n) {
            const auto fn = factor(n);
            cplx v{1.0, 0.0};
            std::size_t i = 0, j = 0;
            while (i < fm.size() || j < fn.size()) {
                std::int64_t p;
                int a = 0, b = 0;
                if (j == fn.size() || (i < fm.size() && fm[i].first < fn[j].first)) {
                    p = fm[i].first;
                    a = fm[i++].second;
                } else if (i == fm.size() || fn[j].first < fm[i].first) {
                    p = fn[j].first;
                    b = fn[j++].second;
                } else {
                    p = fm[i].first;
                    a = fm[i++].second;
                    b = fn[j++].second;
                }
                v *= local(static_cast<std::size_t>(t.prime_index_[static_cast<std::size_t>(p)]), a, b);
            }
            row[static_cast<std::size_t>(n)] = v;
        }
    }
    return t;
}

GL3CoefficientTable build_gl3_sym_square(const GL2CoefficientTable& gl2) {
    const std::int64_t n_max = gl2.n_max();
    const auto primes = primes_up_to(n_max);
    std::vector<GL3CoefficientTable::Satake> params;
    params.reserve(primes.size());
    for (std::int64_t p : primes) {
        // alpha, beta roots of X^2 - lambda X + 1.
        const double lp = gl2(p);
        const cplx disc = std::sqrt(cplx{lp * lp - 4.0, 0.0});
        const cplx alpha = (lp + disc) / 2.0, beta = (lp - disc) / 2.0;
        params.push_back({alpha * alpha, cplx{1.0, 0.0}, beta * beta});
    }
    return GL3CoefficientTable::from_satake(n_max, gl2.source(), primes, params);
}

GL3CoefficientTable build_gl3_random(std::int64_t n_max, std::uint64_t seed) {
    require_range(n_max);
    std::mt19937_64 rng(seed);
    const auto primes = primes_up_to(n_max);
    std::vector<GL3CoefficientTable::Satake> params;
    params.reserve(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        params.push_back(haar_su3(rng));
    }
    return GL3CoefficientTable::from_satake(n_max, Source::random_model, primes, params);
}

cplx hecke_expand(const GL3CoefficientTable& gl3, std::int64_t l, std::int64_t n) {
    if (l < 1 || n < 1 || l > gl3.n_max() / n) {
        throw std::out_of_range("hecke_expand: l n exceeds the table size");
    }
    const std::int64_t g = std::gcd(l, n);
    cplx acc{0.0, 0.0};
    for (std::int64_t d = 1; d <= g; ++d) {
        if (g % d != 0) {
            continue;
        }
        const int mu = arith::moebius(d);
        if (mu != 0) {
            acc += static_cast<double>(mu) * gl3(l / d, 1) * gl3(1, n / d);
        }
    }
    return acc;
}

std::vector<cplx> rankin_coeffs(const GL3CoefficientTable& gl3, const GL2CoefficientTable& gl2, std::int64_t n_max) {
    if (n_max > gl3.n_max() || n_max > gl2.n_max()) {
        throw std::out_of_range("rankin_coeffs: tables do not cover n_max");
    }
    std::vector<cplx> out(static_cast<std::size_t>(n_max + 1), cplx{0, 0});
    for (std::int64_t m = 1; m * m <= n_max; ++m) {
        for (std::int64_t n = 1; m * m * n <= n_max; ++n) {
            out[static_cast<std::size_t>(m * m * n)] += gl2(n) * gl3(m, n);
        }
    }
    return out;
}

MeanSquare coefficient_mean_square(const GL3CoefficientTable& gl3, double x) {
    if (x < 1 || x > static_cast<double>(gl3.n_max())) {
        throw std::out_of_range("coefficient_mean_square: x outside the table");
    }
    const auto xi = static_cast<std::int64_t>(std::floor(x));
    MeanSquare out;
    for (std::int64_t l = 1; l <= xi; ++l) {
        for (std::int64_t n = 1; n <= xi / l; ++n) {
            out.sum += std::norm(gl3(l, n));
        }
    }
    out.ratio = out.sum / std::pow(x, 1.05);
    return out;
}

}
