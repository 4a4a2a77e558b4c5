#ifndef RSM_AFE_HPP
#define RSM_AFE_HPP

// Gamma factors of the degree-6 Rankin-Selberg L-function, the smooth weight
// of the approximate functional equation, and the analytic conductor.

#include <complex>
#include <vector>

namespace rsm::afe {

using cplx = std::complex<double>;

struct LanglandsParams {
    cplx nu1{1.0 / 3.0, 0.0};
    cplx nu2{1.0 / 3.0, 0.0};

    cplx alpha() const { return -nu1 - 2.0 * nu2 + 1.0; }
    cplx beta() const { return -nu1 + nu2; }
    cplx gamma() const { return 2.0 * nu1 + nu2 - 1.0; }
    /// {alpha, beta, gamma}
    std::vector<cplx> kappas() const { return {alpha(), beta(), gamma()}; }

    /// nu1 = 1/3 + i a, nu2 = 1/3 + i b: all three kappas purely imaginary.
    static LanglandsParams tempered(double a, double b);
};

/// log of pi^{-3s} prod_{kappa} Gamma((s + i tj - kappa)/2) Gamma((s - i tj - kappa)/2).
/// Not the principal branch; only exp of sums/differences is meaningful.
/// Throws std::domain_error when an argument is within 1e-6 of a pole.
cplx log_gamma_factor_product(cplx s, double tj, const LanglandsParams& lp);

/// exp of the above (may underflow to 0 for large tj; use the log form there).
cplx gamma_factor_product(cplx s, double tj, const LanglandsParams& lp);

struct ConductorValue {
    cplx q;
    double magnitude;
};

/// q = prod_kappa (1/2 + it + i tj - kappa)(1/2 + it - i tj - kappa)
ConductorValue conductor_q(double t, double tj, const LanglandsParams& lp);

struct VOptions {
    /// Re s of the contour; a negative value (> -1/2) picks up the residue 1 at
    /// s = 0. For y far below the conductor scale the c = 3 contour cancels
    /// catastrophically (runtime_error); use c <= 1/2 there.
    double abscissa = 3.0;
    double truncation = 30.0;   ///< |Im s| cut-off
    double rel_tol = 1e-8;      ///< trapezoid step halving until successive values agree to this
};

/// V(y) = (1/2 pi i) int_{(c)} y^{-s} gamma(1/2 + it + s)/gamma(1/2 + it) e^{s^2}/s ds.
cplx v_weight_direct(double y, double t, double tj, const LanglandsParams& lp, const VOptions& opts = {});

/// (1/2 pi i) int_{(1)} (8 pi^3 y)^{-s} |q(t, tj)|^{s/2} e^{s^2}/s ds.
/// Requires tj >= 20 and |t| <= tj^{0.9}.
cplx v_weight_stirling(double y, double t, double tj, const LanglandsParams& lp, const VOptions& opts = {1.0, 30.0, 1e-8});

struct VRow {
    double u;
    double y;
    cplx direct;
    cplx stirling;
    double deviation;   ///< |direct - stirling| / |stirling|
};

/// Direct vs Stirling weights on y = |q|^{1/2} u / pi^3, in parallel over u.
std::vector<VRow> v_weight_sweep(const std::vector<double>& us, double t, double tj, const LanglandsParams& lp, int jobs = 0);

struct ConductorBox {
    double c1;   ///< min |q| / T^6
    double c2;   ///< max |q| / T^6
};

/// |q(t, tj)|/T^6 over the grid |t| <= t_max, tj in (tj_lo, tj_hi], n x n points.
ConductorBox conductor_box(double T, double t_max, double tj_lo, double tj_hi, const LanglandsParams& lp, int n = 41);

}

#endif
