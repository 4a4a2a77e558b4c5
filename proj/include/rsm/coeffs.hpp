#ifndef RSM_COEFFS_HPP
#define RSM_COEFFS_HPP

// Hecke-normalized coefficient tables: a GL(2) form, a GL(3) form built
// from it (or from random Satake data), and their Rankin-Selberg product.

#include <array>
#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

namespace rsm::coeffs {

using cplx = std::complex<double>;

enum class Source { delta_form, random_model };

const char* source_name(Source s);

/// Exact tau(n) for 1 <= n <= n_max from the q-expansion of Delta.
/// Values are returned as __int128; overflow throws std::overflow_error.
std::vector<__int128> ramanujan_tau(std::int64_t n_max);

class GL2CoefficientTable {
public:
    GL2CoefficientTable(std::vector<double> lambda, Source source);

    std::int64_t n_max() const { return static_cast<std::int64_t>(lambda_.size()) - 1; }
    Source source() const { return source_; }

    /// lambda(n) for 1 <= n <= n_max; std::out_of_range otherwise.
    double operator()(std::int64_t n) const;

private:
    std::vector<double> lambda_;   // index 0 unused
    Source source_;
};

/// lambda(n) = tau(n) / n^{11/2}. n_max <= 10^6.
GL2CoefficientTable build_gl2_delta(std::int64_t n_max);

/// Multiplicative model with lambda(p) = 2 cos(theta_p), theta_p Sato-Tate
/// distributed, and the Hecke recursion on prime powers.
GL2CoefficientTable build_gl2_random(std::int64_t n_max, std::uint64_t seed);

/// A(m, n) for m n <= n_max, stored row by row.
class GL3CoefficientTable {
public:
    using Satake = std::array<cplx, 3>;

    std::int64_t n_max() const { return n_max_; }
    Source source() const { return source_; }

    /// Stored A(m, n); std::out_of_range when m n > n_max or either index < 1.
    cplx operator()(std::int64_t m, std::int64_t n) const;

    /// Satake parameters at prime p (p <= n_max).
    const Satake& satake(std::int64_t p) const;

    /// Number of stored (m, n) pairs.
    std::size_t size() const;

    /// Rows of "m,n,re,im" after a header line, in (m, n) order.
    void write_csv(std::ostream& out) const;

    static GL3CoefficientTable from_satake(std::int64_t n_max, Source source,
                                           const std::vector<std::int64_t>& primes,
                                           const std::vector<Satake>& params);

private:
    std::int64_t n_max_ = 0;
    Source source_ = Source::delta_form;
    std::vector<std::int64_t> prime_index_;   // p -> index into satake_, -1 otherwise
    std::vector<Satake> satake_;
    std::vector<std::vector<cplx>> rows_;     // rows_[m][n] for n <= n_max / m
};

/// Symmetric square: Satake {alpha^2, 1, beta^2} with alpha + beta = lambda(p), alpha beta = 1.
GL3CoefficientTable build_gl3_sym_square(const GL2CoefficientTable& gl2);

/// Satake {e^{i t1}, e^{i t2}, e^{-i(t1+t2)}} per prime, distributed as the
/// eigenvalues of a Haar-random SU(3) matrix; seeded.
GL3CoefficientTable build_gl3_random(std::int64_t n_max, std::uint64_t seed);

/// sum_{d | (l,n)} mu(d) A(l/d, 1) A(1, n/d).
cplx hecke_expand(const GL3CoefficientTable& gl3, std::int64_t l, std::int64_t n);

/// lambda_{u x phi}(N) = sum_{m^2 n = N} lambda(n) A(m, n), N = 1..n_max (index 0 unused).
std::vector<cplx> rankin_coeffs(const GL3CoefficientTable& gl3, const GL2CoefficientTable& gl2, std::int64_t n_max);

struct MeanSquare {
    double sum = 0.0;
    double ratio = 0.0;   ///< sum / x^{1.05}
};
MeanSquare coefficient_mean_square(const GL3CoefficientTable& gl3, double x);

}

#endif
