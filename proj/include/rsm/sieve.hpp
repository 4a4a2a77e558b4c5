#ifndef RSM_SIEVE_HPP
#define RSM_SIEVE_HPP

// Large-sieve inequalities measured on explicit coefficient vectors: the
// classical Farey form, a hybrid form with an extra t-integral against a
// smooth phase, and the multiplicative (Dirichlet character) form.
//
// Every t-integral is done in closed form:
//   int_{-T}^{T} e(t theta) dt = sin(2 pi T theta)/(pi theta)   (2T at theta = 0)
// so each left side is an exact double sum. The *_reference functions are the
// slow direct evaluations kept for testing; the others run in parallel.

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rsm::sieve {

using cplx = std::complex<double>;

struct FareyFraction {
    std::int64_t x;
    std::int64_t b;
};

struct FareySystem {
    int B = 0;
    std::vector<FareyFraction> fractions;   ///< ordered by b, then x

    std::size_t count() const { return fractions.size(); }
};

/// All x/b with b <= B, 0 <= x < b, gcd(x, b) = 1. 1 <= B <= 1000.
FareySystem farey_fractions(int B);

struct TrialReport {
    double lhs = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    std::vector<std::pair<std::string, double>> params;
    std::uint64_t seed = 0;
};

enum class CoefficientLaw { rademacher, gaussian, ones };

/// Seeded coefficient vector (std::mt19937_64). Gaussian draws are complex
/// with independent N(0, 1/2) parts.
std::vector<cplx> random_coefficients(std::size_t M, std::uint64_t seed, CoefficientLaw law);

// ---------------------------------------------------------------------------
// Classical
// ---------------------------------------------------------------------------

/// |sum_m a_m e(x m / b)|^2 for every fraction of farey_fractions(B), in that
/// order; coeffs[i] is a_{N+i}.
std::vector<double> classical_fraction_terms(int B, std::int64_t N, const std::vector<cplx>& coeffs, int jobs = 0);
std::vector<double> classical_fraction_terms_reference(int B, std::int64_t N, const std::vector<cplx>& coeffs);

/// lhs = sum of the fraction terms, bound = (B^2 + M) sum |a|^2.
TrialReport classical_trial(int B, std::int64_t N, const std::vector<cplx>& coeffs, int jobs = 0);

// ---------------------------------------------------------------------------
// Hybrid (Farey fractions with a t-integral)
// ---------------------------------------------------------------------------

enum class PhaseKind { sqrt, log };

/// f(y) = scale sqrt(y) or scale log(y).
struct PhaseSpec {
    PhaseKind kind = PhaseKind::sqrt;
    double scale = 1.0;

    double operator()(double y) const;
    /// f(m) - f(n) without cancellation.
    double difference(double m, double n) const;
    /// sup 1/|f'(y)| over [N, N + M]: 2 sqrt(N + M)/scale or (N + M)/scale.
    double x_sup(double N, double M) const;
};

/// int_{-T}^{T} sum_{b<=B} sum*_x |sum_m c_m e(x m / b) e(t f(m))|^2 dt with
/// coeffs[i] = c_{N+i}, by the sinc kernel and Ramanujan sums.
double hybrid_lhs(int B, double T, const PhaseSpec& f, std::int64_t N, const std::vector<cplx>& coeffs, int jobs = 0);

/// Same quantity by Gauss-Legendre quadrature in t of the direct Farey sum.
double hybrid_lhs_quadrature(int B, double T, const PhaseSpec& f, std::int64_t N, const std::vector<cplx>& coeffs);

/// bound = C (B^2 T + X) sum |c|^2; the report's ratio is lhs/bound and the
/// parameter "empirical_C" is lhs / ((B^2 T + X) sum |c|^2).
TrialReport hybrid_trial(int B, double T, const PhaseSpec& f, std::int64_t N, const std::vector<cplx>& coeffs,
                         double C = 30.0, int jobs = 0);

// ---------------------------------------------------------------------------
// Gallagher
// ---------------------------------------------------------------------------

/// int_{-U}^{U} sum_{q<=Q} (q/phi(q)) sum*_chi |sum_n a_n chi(n) n^{it}|^2 dt,
/// coeffs[i] = a_{i+1}. Kernel 2 sin(U log(m/n))/log(m/n), diagonal 2U.
double gallagher_lhs(int Q, double U, const std::vector<cplx>& coeffs, int jobs = 0);

/// Same, character by character from the Dirichlet character tables.
double gallagher_lhs_reference(int Q, double U, const std::vector<cplx>& coeffs);

/// bound = (N + U Q^2) sum |a|^2, N = coeffs.size(). 1 <= Q <= 100.
TrialReport gallagher_trial(int Q, double U, const std::vector<cplx>& coeffs, int jobs = 0);

// ---------------------------------------------------------------------------
// Seeded ensembles; trial i uses seed + i and reports are in trial order.
// ---------------------------------------------------------------------------

struct EnsembleReport {
    std::vector<TrialReport> trials;
    double max_ratio = 0.0;
    double empirical_C = 0.0;   ///< hybrid only: max lhs / ((B^2 T + X) sum |c|^2)
    std::uint64_t seed = 0;
};

/// B uniform in [1, B_max], M in [1, M_max], N in [0, 1e6], law alternating
/// rademacher / gaussian.
EnsembleReport classical_ensemble(int trials, std::uint64_t seed, int B_max = 30, int M_max = 2000, int jobs = 0);

/// Fixed B, T, f, N, M; gaussian coefficient vectors.
EnsembleReport hybrid_ensemble(int trials, std::uint64_t seed, int B, double T, const PhaseSpec& f,
                               std::int64_t N, std::size_t M, double C = 30.0, int jobs = 0);

/// Q uniform in [1, Q_max], N in [100, N_max], U in [0.5, U_max]; gaussian coefficients.
EnsembleReport gallagher_ensemble(int trials, std::uint64_t seed, int Q_max = 20, int N_max = 1000,
                                  double U_max = 10.0, int jobs = 0);

}

#endif
