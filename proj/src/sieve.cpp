#include "rsm/sieve.hpp"

#include "rsm/arith.hpp"
#include "rsm/oscquad.hpp"
#include "rsm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace rsm::sieve {

namespace {

constexpr double pi = std::numbers::pi;

double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& c : v) {
        s += std::norm(c);
    }
    return s;
}

// sin(2 pi T theta)/(pi theta)
double sinc_kernel(double T, double theta) {
    if (theta == 0.0) {
        return 2.0 * T;
    }
    return std::sin(2.0 * pi * T * theta) / (pi * theta);
}

void check_coeffs(const std::vector<cplx>& coeffs, const char* who) {
    if (coeffs.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty coefficient vector");
    }
}

// sum of per-index partials in index order, so results never depend on threads
double ordered_sum(const std::vector<double>& parts) {
    double s = 0.0;
    for (double p : parts) {
        s += p;
    }
    return s;
}

// primitive-character sums P_q[r] = sum*_chi chi(r) and unit inverses mod q
struct CharacterTables {
    std::vector<std::vector<cplx>> Pc;
    std::vector<std::vector<std::int64_t>> inv;  // -1 for non-units
    std::vector<double> weight;                  // q / phi(q)
    std::vector<int> primitive_count;
};

CharacterTables character_tables(int Q) {
    CharacterTables t;
    t.Pc.resize(Q + 1);
    t.inv.resize(Q + 1);
    t.weight.assign(Q + 1, 0.0);
    t.primitive_count.assign(Q + 1, 0);
    for (int q = 1; q <= Q; ++q) {
        t.Pc[q].assign(q, cplx{0.0, 0.0});
        for (const auto& chi : arith::dirichlet_characters(q)) {
            if (!chi.is_primitive()) {
                continue;
            }
            ++t.primitive_count[q];
            const auto vals = chi.values();
            for (int r = 0; r < q; ++r) {
                t.Pc[q][r] += vals[r];
            }
        }
        t.inv[q].assign(q, -1);
        for (int r = 0; r < q; ++r) {
            if (auto v = arith::mod_inverse(r, q)) {
                t.inv[q][r] = *v;
            }
        }
        t.weight[q] = double(q) / double(arith::euler_phi(q));
    }
    return t;
}

void check_farey_bound(int B, const char* who) {
    if (B < 1 || B > 1000) {
        throw std::invalid_argument(std::string(who) + ": B must lie in [1, 1000]");
    }
}

}

FareySystem farey_fractions(int B) {
    check_farey_bound(B, "farey_fractions");
    FareySystem fs;
    fs.B = B;
    for (std::int64_t b = 1; b <= B; ++b) {
        for (std::int64_t x = 0; x < b; ++x) {
            if (std::gcd(x, b) == 1) {
                fs.fractions.push_back({x, b});
            }
        }
    }
    return fs;
}

std::vector<cplx> random_coefficients(std::size_t M, std::uint64_t seed, CoefficientLaw law) {
    std::mt19937_64 rng(seed);
    std::vector<cplx> out(M);
    switch (law) {
    case CoefficientLaw::rademacher: {
        std::bernoulli_distribution coin(0.5);
        for (auto& c : out) {
            c = coin(rng) ? 1.0 : -1.0;
        }
        break;
    }
    case CoefficientLaw::gaussian: {
        std::normal_distribution<double> g(0.0, std::sqrt(0.5));
        for (auto& c : out) {
            const double re = g(rng);
            c = cplx{re, g(rng)};
        }
        break;
    }
    case CoefficientLaw::ones:
        std::fill(out.begin(), out.end(), cplx{1.0, 0.0});
        break;
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<double> classical_fraction_terms(int B, std::int64_t N, const std::vector<cplx>& coeffs, int jobs) {
    check_farey_bound(B, "classical_fraction_terms");
    check_coeffs(coeffs, "classical_fraction_terms");
    if (N < 0) {
        throw std::invalid_argument("classical_fraction_terms: N must be >= 0");
    }
    // fractions with denominator b start at offset[b]
    std::vector<std::size_t> offset(B + 2, 0);
    for (int b = 1; b <= B; ++b) {
        offset[b + 1] = offset[b] + static_cast<std::size_t>(arith::euler_phi(b));
    }
    std::vector<double> out(offset[B + 1]);
    parallel_for(B, jobs, [&](std::ptrdiff_t i) {
        const std::int64_t b = i + 1;
        // fold the coefficients by residue of m mod b
        std::vector<cplx> A(b, cplx{0.0, 0.0});
        std::int64_t k = N % b;
        for (const cplx& c : coeffs) {
            A[k] += c;
            if (++k == b) {
                k = 0;
            }
        }
        const auto roots = arith::unit_roots(b);
        std::size_t pos = offset[b];
        for (std::int64_t x = 0; x < b; ++x) {
            if (std::gcd(x, b) != 1) {
                continue;
            }
            cplx s{0.0, 0.0};
            std::int64_t xk = 0;
            for (std::int64_t r = 0; r < b; ++r) {
                s += A[r] * roots[xk];
                xk += x;
                if (xk >= b) {
                    xk -= b;
                }
            }
            out[pos++] = std::norm(s);
        }
    });
    return out;
}

std::vector<double> classical_fraction_terms_reference(int B, std::int64_t N, const std::vector<cplx>& coeffs) {
    check_coeffs(coeffs, "classical_fraction_terms_reference");
    std::vector<double> out;
    for (const auto& fr : farey_fractions(B).fractions) {
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            s += coeffs[i] * arith::unit_root(fr.x * (N + static_cast<std::int64_t>(i)), fr.b);
        }
        out.push_back(std::norm(s));
    }
    return out;
}

TrialReport classical_trial(int B, std::int64_t N, const std::vector<cplx>& coeffs, int jobs) {
    TrialReport r;
    r.lhs = ordered_sum(classical_fraction_terms(B, N, coeffs, jobs));
    const double M = static_cast<double>(coeffs.size());
    r.bound = (double(B) * B + M) * norm2(coeffs);
    r.ratio = r.bound > 0 ? r.lhs / r.bound : 0.0;
    r.params = {{"B", B}, {"N", double(N)}, {"M", M}};
    return r;
}

// ---------------------------------------------------------------------------

double PhaseSpec::operator()(double y) const {
    return kind == PhaseKind::sqrt ? scale * std::sqrt(y) : scale * std::log(y);
}

double PhaseSpec::difference(double m, double n) const {
    if (kind == PhaseKind::sqrt) {
        return scale * (m - n) / (std::sqrt(m) + std::sqrt(n));
    }
    return scale * std::log1p((m - n) / n);
}

double PhaseSpec::x_sup(double N, double M) const {
    if (scale == 0.0) {
        throw std::invalid_argument("PhaseSpec: derivative vanishes (scale = 0)");
    }
    return kind == PhaseKind::sqrt ? 2.0 * std::sqrt(N + M) / std::fabs(scale) : (N + M) / std::fabs(scale);
}

namespace {

void check_hybrid(int B, double T, const PhaseSpec& f, std::int64_t N, const std::vector<cplx>& coeffs) {
    check_farey_bound(B, "hybrid");
    check_coeffs(coeffs, "hybrid");
    if (!(T > 0)) {
        throw std::invalid_argument("hybrid: T must be positive");
    }
    if (f.scale == 0.0 || !std::isfinite(f.scale)) {
        throw std::invalid_argument("hybrid: phase derivative vanishes (scale = 0)");
    }
    if (N < 1) {
        throw std::invalid_argument("hybrid: N must be >= 1 (phase needs y > 0)");
    }
}

}

double hybrid_lhs(int B, double T, const PhaseSpec& f, std::int64_t N, const std::vector<cplx>& coeffs, int jobs) {
    check_hybrid(B, T, f, N, coeffs);
    const std::size_t M = coeffs.size();
    // R(d) = sum_{b<=B} sum*_x e(x d / b) = sum_b c_b(d), even in d
    std::vector<double> R(M, 0.0);
    for (std::size_t d = 0; d < M; ++d) {
        for (int b = 1; b <= B; ++b) {
            R[d] += arith::ramanujan_sum(static_cast<std::int64_t>(d), b);
        }
    }
    std::vector<double> part(M, 0.0);
    parallel_for(static_cast<std::ptrdiff_t>(M), jobs, [&](std::ptrdiff_t i) {
        const double m = double(N + i);
        double s = std::norm(coeffs[i]) * 2.0 * T * R[0];
        cplx off{0.0, 0.0};
        for (std::size_t j = i + 1; j < M; ++j) {
            if (R[j - i] == 0.0) {
                continue;
            }
            const double theta = f.difference(m, double(N + static_cast<std::int64_t>(j)));
            off += coeffs[i] * std::conj(coeffs[j]) * (sinc_kernel(T, theta) * R[j - i]);
        }
        part[i] = s + 2.0 * off.real();
    });
    return ordered_sum(part);
}

double hybrid_lhs_quadrature(int B, double T, const PhaseSpec& f, std::int64_t N, const std::vector<cplx>& coeffs) {
    check_hybrid(B, T, f, N, coeffs);
    const std::size_t M = coeffs.size();
    const auto fs = farey_fractions(B);
    // phases relative to f(N); the common factor drops out of |.|^2
    std::vector<double> df(M);
    for (std::size_t i = 0; i < M; ++i) {
        df[i] = f.difference(double(N + static_cast<std::int64_t>(i)), double(N));
    }
    const double theta_max = std::max(std::fabs(df.front()), std::fabs(df.back()));
    const int panels = std::max(8, static_cast<int>(std::ceil(4.0 * T * theta_max)));
    const int nodes = 20;
    const auto [gx, gw] = oscquad::gauss_legendre(nodes);
    const double width = 2.0 * T / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = -T + (p + 0.5) * width;
        for (int k = 0; k < nodes; ++k) {
            const double t = mid + 0.5 * width * gx[k];
            double at_t = 0.0;
            for (const auto& fr : fs.fractions) {
                cplx s{0.0, 0.0};
                for (std::size_t i = 0; i < M; ++i) {
                    const double arith_part = double(arith::reduce(fr.x * (N + static_cast<std::int64_t>(i)), fr.b)) / double(fr.b);
                    s += coeffs[i] * std::polar(1.0, 2.0 * pi * (arith_part + t * df[i]));
                }
                at_t += std::norm(s);
            }
            total += 0.5 * width * gw[k] * at_t;
        }
    }
    return total;
}

TrialReport hybrid_trial(int B, double T, const PhaseSpec& f, std::int64_t N, const std::vector<cplx>& coeffs,
                         double C, int jobs) {
    if (!(C > 0)) {
        throw std::invalid_argument("hybrid_trial: C must be positive");
    }
    TrialReport r;
    r.lhs = hybrid_lhs(B, T, f, N, coeffs, jobs);
    const double M = static_cast<double>(coeffs.size());
    const double X = f.x_sup(double(N), M);
    const double base = (double(B) * B * T + X) * norm2(coeffs);
    r.bound = C * base;
    r.ratio = r.lhs / r.bound;
    r.params = {{"B", B}, {"T", T}, {"N", double(N)}, {"M", M}, {"X", X}, {"C", C}, {"empirical_C", r.lhs / base}};
    return r;
}

// ---------------------------------------------------------------------------

namespace {

void check_gallagher(int Q, double U, const std::vector<cplx>& coeffs) {
    if (Q < 1 || Q > 100) {
        throw std::invalid_argument("gallagher: Q must lie in [1, 100]");
    }
    if (!(U > 0)) {
        throw std::invalid_argument("gallagher: U must be positive");
    }
    check_coeffs(coeffs, "gallagher");
}

// 2 sin(U L)/L with L = log(m/n)
double log_kernel(double U, double L) {
    return L == 0.0 ? 2.0 * U : 2.0 * std::sin(U * L) / L;
}

}

double gallagher_lhs(int Q, double U, const std::vector<cplx>& coeffs, int jobs) {
    check_gallagher(Q, U, coeffs);
    const auto tab = character_tables(Q);
    const std::size_t N = coeffs.size();
    std::vector<double> logs(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        logs[n] = std::log(double(n));
    }
    std::vector<double> part(N, 0.0);
    parallel_for(static_cast<std::ptrdiff_t>(N), jobs, [&](std::ptrdiff_t i) {
        const std::int64_t m = i + 1;
        // diagonal: chi(m) conj chi(m) = 1 for units
        double wdiag = 0.0;
        for (int q = 1; q <= Q; ++q) {
            if (tab.inv[q][m % q] >= 0) {
                wdiag += tab.weight[q] * tab.primitive_count[q];
            }
        }
        double s = std::norm(coeffs[i]) * 2.0 * U * wdiag;
        cplx off{0.0, 0.0};
        for (std::size_t j = i + 1; j < N; ++j) {
            const std::int64_t n = static_cast<std::int64_t>(j) + 1;
            cplx W{0.0, 0.0};
            for (int q = 2; q <= Q; ++q) {
                const std::int64_t nb = tab.inv[q][n % q];
                if (nb >= 0) {
                    W += tab.weight[q] * tab.Pc[q][(m % q) * nb % q];
                }
            }
            // q = 1: the trivial character, weight 1
            W += tab.weight[1] * tab.Pc[1][0];
            if (W == cplx{0.0, 0.0}) {
                continue;
            }
            off += coeffs[i] * std::conj(coeffs[j]) * W * log_kernel(U, logs[m] - logs[n]);
        }
        part[i] = s + 2.0 * off.real();
    });
    return ordered_sum(part);
}

double gallagher_lhs_reference(int Q, double U, const std::vector<cplx>& coeffs) {
    check_gallagher(Q, U, coeffs);
    const std::size_t N = coeffs.size();
    double total = 0.0;
    for (int q = 1; q <= Q; ++q) {
        const double w = double(q) / double(arith::euler_phi(q));
        for (const auto& chi : arith::dirichlet_characters(q)) {
            if (!chi.is_primitive()) {
                continue;
            }
            std::vector<cplx> v(N);
            for (std::size_t i = 0; i < N; ++i) {
                v[i] = coeffs[i] * chi(static_cast<std::int64_t>(i) + 1);
            }
            double s = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                for (std::size_t j = 0; j < N; ++j) {
                    const double L = std::log(double(i + 1)) - std::log(double(j + 1));
                    s += (v[i] * std::conj(v[j])).real() * log_kernel(U, L);
                }
            }
            total += w * s;
        }
    }
    return total;
}

TrialReport gallagher_trial(int Q, double U, const std::vector<cplx>& coeffs, int jobs) {
    TrialReport r;
    r.lhs = gallagher_lhs(Q, U, coeffs, jobs);
    const double N = static_cast<double>(coeffs.size());
    r.bound = (N + U * Q * Q) * norm2(coeffs);
    r.ratio = r.bound > 0 ? r.lhs / r.bound : 0.0;
    r.params = {{"Q", Q}, {"U", U}, {"N", N}};
    return r;
}

// ---------------------------------------------------------------------------

EnsembleReport classical_ensemble(int trials, std::uint64_t seed, int B_max, int M_max, int jobs) {
    if (trials < 1 || B_max < 1 || M_max < 1) {
        throw std::invalid_argument("classical_ensemble: trials, B_max, M_max must be >= 1");
    }
    EnsembleReport rep;
    rep.seed = seed;
    rep.trials.resize(trials);
    parallel_for(trials, jobs, [&](std::ptrdiff_t i) {
        std::mt19937_64 rng(seed + i);
        const int B = std::uniform_int_distribution<int>(1, B_max)(rng);
        const int M = std::uniform_int_distribution<int>(1, M_max)(rng);
        const std::int64_t N = std::uniform_int_distribution<std::int64_t>(0, 1'000'000)(rng);
        const auto law = (i % 2 == 0) ? CoefficientLaw::rademacher : CoefficientLaw::gaussian;
        auto r = classical_trial(B, N, random_coefficients(M, rng(), law), 1);
        r.seed = seed + i;
        rep.trials[i] = std::move(r);
    });
    for (const auto& t : rep.trials) {
        rep.max_ratio = std::max(rep.max_ratio, t.ratio);
    }
    return rep;
}

EnsembleReport hybrid_ensemble(int trials, std::uint64_t seed, int B, double T, const PhaseSpec& f,
                               std::int64_t N, std::size_t M, double C, int jobs) {
    if (trials < 1 || M < 1) {
        throw std::invalid_argument("hybrid_ensemble: trials and M must be >= 1");
    }
    EnsembleReport rep;
    rep.seed = seed;
    rep.trials.resize(trials);
    parallel_for(trials, jobs, [&](std::ptrdiff_t i) {
        auto r = hybrid_trial(B, T, f, N, random_coefficients(M, seed + i, CoefficientLaw::gaussian), C, 1);
        r.seed = seed + i;
        rep.trials[i] = std::move(r);
    });
    for (const auto& t : rep.trials) {
        rep.max_ratio = std::max(rep.max_ratio, t.ratio);
        for (const auto& [k, v] : t.params) {
            if (k == "empirical_C") {
                rep.empirical_C = std::max(rep.empirical_C, v);
            }
        }
    }
    return rep;
}

EnsembleReport gallagher_ensemble(int trials, std::uint64_t seed, int Q_max, int N_max, double U_max, int jobs) {
    if (trials < 1 || Q_max < 1 || N_max < 100 || !(U_max >= 0.5)) {
        throw std::invalid_argument("gallagher_ensemble: need trials, Q_max >= 1, N_max >= 100, U_max >= 0.5");
    }
    EnsembleReport rep;
    rep.seed = seed;
    rep.trials.resize(trials);
    parallel_for(trials, jobs, [&](std::ptrdiff_t i) {
        std::mt19937_64 rng(seed + i);
        const int Q = std::uniform_int_distribution<int>(1, Q_max)(rng);
        const int N = std::uniform_int_distribution<int>(100, N_max)(rng);
        const double U = std::uniform_real_distribution<double>(0.5, U_max)(rng);
        auto r = gallagher_trial(Q, U, random_coefficients(N, rng(), CoefficientLaw::gaussian), 1);
        r.seed = seed + i;
        rep.trials[i] = std::move(r);
    });
    for (const auto& t : rep.trials) {
        rep.max_ratio = std::max(rep.max_ratio, t.ratio);
    }
    return rep;
}

}
