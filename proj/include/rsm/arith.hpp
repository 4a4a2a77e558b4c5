#ifndef RSM_ARITH_HPP
#define RSM_ARITH_HPP

// Complete exponential sums over residue classes: Kloosterman and Ramanujan
// sums, and the exact identities they satisfy.
//
// Conventions:
//   e(x) = exp(2 pi i x).
//   Residues are reduced into [0, c) before any trigonometric call, so every
//   summand has unit modulus to machine precision and the rounding error of a
//   sum is bounded by its term count.
//   Modulus c = 1 carries the single residue h = 0, which counts as a unit;
//   every sum mod 1 is therefore the single term e(0) = 1.
//   Residues not coprime to the modulus contribute no term (never an error).

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace rsm::arith {

using cplx = std::complex<double>;

/// A residue class `value mod modulus` with 0 <= value < modulus.
class Residue {
public:
    Residue(std::int64_t value, std::int64_t modulus);

    std::int64_t value() const { return value_; }
    std::int64_t modulus() const { return modulus_; }

private:
    std::int64_t value_;
    std::int64_t modulus_;
};

/// Value of a complete exponential sum, with the number of unit-modulus
/// summands it was built from.
struct ExactSumValue {
    double re = 0.0;
    double im = 0.0;
    std::int64_t modulus = 1;
    std::int64_t term_count = 0;

    cplx value() const { return {re, im}; }
};

// ---------------------------------------------------------------------------
// Elementary number theory
// ---------------------------------------------------------------------------

/// Least nonnegative residue of a mod m (m >= 1).
std::int64_t reduce(std::int64_t a, std::int64_t m);

/// Inverse of a mod m by extended Euclid; empty when gcd(a, m) != 1.
/// For m = 1 the inverse of anything is 0.
std::optional<std::int64_t> mod_inverse(std::int64_t a, std::int64_t m);

/// Prime factorization as (p, e) pairs in increasing p. n >= 1.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);
int moebius(std::int64_t n);

/// e(k / c) with k reduced mod c first.
cplx unit_root(std::int64_t k, std::int64_t c);

/// Table of e(k / c), k = 0..c-1.
std::vector<cplx> unit_roots(std::int64_t c);

// ---------------------------------------------------------------------------
// Sums
// ---------------------------------------------------------------------------

/// S(m, n; c) = sum over units h mod c of e((h m + hbar n) / c).
ExactSumValue kloosterman_sum(std::int64_t m, std::int64_t n, std::int64_t c);

/// Ramanujan sum S(0, n; s), returned as an exact real.
double ramanujan_sum(std::int64_t n, std::int64_t s);

/// Both sides of the twisting identity
///   S(m,n;c) e(-(m+n)/c) = sum_{ab=c} sum_{x mod b, (x(x+a),b)=1} e((xbar m - (x+a)bar n)/b).
struct TwistCheck {
    cplx lhs;
    cplx rhs;
    std::int64_t terms = 0;   ///< number of unit-modulus terms on the right side

    double residual() const { return std::abs(lhs - rhs); }
};
TwistCheck twist_decomposition_check(std::int64_t m, std::int64_t n, std::int64_t c);

/// S(m,n;uv) computed directly and as S(m vbar, n vbar; u) S(m ubar, n ubar; v).
/// Throws std::invalid_argument unless gcd(u, v) = 1.
struct MultiplicativityCheck {
    cplx direct;
    cplx factored;
};
MultiplicativityCheck kloosterman_multiplicativity_check(std::int64_t m, std::int64_t n,
                                                         std::int64_t u, std::int64_t v);

/// Coefficient vectors indexed by integer keys (missing keys are zero).
using Coefficients = std::map<std::int64_t, cplx>;

/// lhs = sum_{x mod b} |sum_m c_m S(rx, m; br)|^2,
/// rhs = b r^2 sum*_{y mod b} |sum_{r|m} c_m e(y (m/r) / b)|^2.
/// Requires every prime factor of r to divide b (std::invalid_argument otherwise).
struct QuadraticPair {
    double lhs = 0.0;
    double rhs = 0.0;
};
QuadraticPair kloosterman_average_identity(std::int64_t b, std::int64_t r, const Coefficients& coeffs);

/// lhs = |sum_l b_l S(0,l;s)|^2, rhs = s sum*_{h mod s} |sum_l b_l e(hl/s)|^2.
QuadraticPair ramanujan_cauchy_check(std::int64_t s, const Coefficients& coeffs);

/// Diophantine identity -2 sqrt(mn) = -m - n + (sqrt m - sqrt n)^2, returning
/// the relative residual between the two sides.
double sqrt_product_identity_residual(double m, double n);

// ---------------------------------------------------------------------------
// Dirichlet characters
// ---------------------------------------------------------------------------

class CharacterGroup;

/// A Dirichlet character mod q, stored as exponents on fixed generators of
/// the prime-power factors of (Z/q)*. For 2^e with e >= 3 the generators are
/// the pair {-1, 5}; for 4 the single generator -1; mod 2 the group is trivial.
class DirichletCharacter {
public:
    DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<std::int64_t> exponents);

    std::int64_t modulus() const;
    const std::vector<std::int64_t>& exponents() const { return exponents_; }
    bool is_primitive() const { return primitive_; }

    /// chi(n); zero when gcd(n, q) > 1.
    cplx operator()(std::int64_t n) const;

    /// chi(n) for n = 0..q-1.
    std::vector<cplx> values() const;

private:
    std::shared_ptr<const CharacterGroup> group_;
    std::vector<std::int64_t> exponents_;
    bool primitive_;
};

/// All phi(q) characters mod q. Throws std::invalid_argument when q is
/// outside [1, max_modulus].
std::vector<DirichletCharacter> dirichlet_characters(std::int64_t q, std::int64_t max_modulus = 10000);

/// Primitivity from the definition: chi is imprimitive iff for some prime
/// p | q it is trivial on units n = 1 mod q/p. Used to cross-check the
/// per-component rule stored in DirichletCharacter.
bool is_primitive_by_descent(const DirichletCharacter& chi);

}

#endif
