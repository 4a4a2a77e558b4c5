#ifndef RSM_STPHASE_HPP
#define RSM_STPHASE_HPP

// Stationary-phase and Airy asymptotics for the phase a sqrt(y) - b y^{1/3},
// the Gaussian/Fresnel transforms, and the cube-root Voronoi weight.

#include "rsm/oscquad.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace rsm::stphase {

using cplx = std::complex<double>;
using oscquad::SmoothWindow;

// ---------------------------------------------------------------------------
// Airy function
// ---------------------------------------------------------------------------

/// Ai(x) for x >= -1000: Maclaurin series (quad precision) for |x| <= 8, the
/// exponentially small expansion for x > 8 and the oscillatory expansion for
/// x < -8. Throws std::domain_error below -1000.
double airy_ai(double x);

/// Coefficient c_k of the large-negative-argument expansion; c_0 = 1.
/// c_{2k} = (-1)^k u_{2k} (3/2)^{2k}, c_{2k+1} = (-1)^k u_{2k+1} (3/2)^{2k+1}
/// with u_k the standard Airy coefficients (DLMF 9.7.2).
double airy_coefficient(int k);

/// (1/(sqrt(pi) x^{1/4})) [cos(z) sum c_{2k} x^{-3k} + sin(z) sum c_{2k+1} x^{-3(2k+1)/2}],
/// z = (2/3) x^{3/2} - pi/4, using c_0 .. c_{terms-1}. x >= 5.
double airy_negative_asymptotic(double x, int terms);

// ---------------------------------------------------------------------------
// Stationary phase for  I = int f(y) e(alpha y^{1/2} - beta y^{1/3}) dy
// ---------------------------------------------------------------------------

struct PhasePair {
    double alpha;
    double beta;

    /// Requires alpha, beta > 0 and beta/alpha in [1/10, 10].
    PhasePair(double alpha, double beta);

    double stationary_point() const;   ///< (2 beta / 3 alpha)^6
    oscquad::Phase phase() const;
};

/// 6 t0^5 / sqrt(2 beta) * e(-4 beta^3/(27 alpha^2) + 1/8) * f(t0^6), t0 = 2 beta/(3 alpha).
cplx stationary_phase_I(const PhasePair& pp, const SmoothWindow& f);

/// The integral itself by oscillatory quadrature.
oscquad::QuadratureResult stationary_phase_oracle(const PhasePair& pp, const SmoothWindow& f, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Gaussian transforms
// ---------------------------------------------------------------------------

struct FresnelCheck {
    cplx integral;                ///< Richardson-extrapolated int e(tz - t^2/4) dt
    double analytic_residual;     ///< |e(z^2) - (e^{i pi/4}/sqrt 2) * closed form|
    double quadrature_residual;   ///< |e(z^2) - (e^{i pi/4}/sqrt 2) * integral|
};

/// Regularized by e^{-eps t^2} at eps, eps/2, eps/4, eps/8 and extrapolated to 0.
FresnelCheck fresnel_check(double z, double eps = 1e-4);

/// quadrature_residual of fresnel_check. |z| <= 50.
double fresnel_identity_residual(double z);

/// oracle = U int e(z^2 - v z) w3(z/Z) dz,
/// leading = U (e^{i pi/4}/sqrt 2) e(-v^2/4) w3(v/(2Z)). Z >= 10; w3 compactly supported.
std::pair<cplx, cplx> y_transform_pair(double v, double U, double Z, const SmoothWindow& w3, double tol = 1e-11);

/// exact = ghat((U/2pi) log(m/n)),
/// expanded = ghat((U/pi) d) - (U/(2 pi)) d^2 ghat'((U/pi) d), d = (sqrt m - sqrt n)/sqrt n.
/// `ghat` is the compactly supported transform itself (bump or gaussian).
/// Requires |m - n| <= 10 n / U.
std::pair<double, double> ghat_log_expansion_check(double m, double n, double U, const SmoothWindow& ghat);

// ---------------------------------------------------------------------------
// Voronoi weight
// ---------------------------------------------------------------------------

struct VoronoiWeightParams {
    double N = 1e4;
    double U = 1.0;
    double A = 1.0;
    double B = 5.0;
    double v = 1.0;
    double y0 = 0.0;
    double b = 1.0;
    double l = 1.0;    ///< carried for reference; does not enter Phi
    double n1 = 1.0;   ///< carried for reference; does not enter Phi
    SmoothWindow w = SmoothWindow::bump(1.0, 2.0);   ///< w_N on the r-scale, support in [1, 2]

    /// v^3 N^2 / (U A B)^3, the localization scale up to an absolute constant.
    double lambda_scale() const;
    /// (b / sqrt N) (lambda N)^{2/3}
    double prefactor(double lambda) const;
};

struct VoronoiPair {
    cplx oracle;
    cplx leading;
    double stationary_point = 0.0;
    bool in_window = false;   ///< stationary point inside the support of w
};

/// oracle = (b/sqrt N)(lambda N)^{2/3} N^{i y0} int w(r) r^{-1/3 + i y0} e(-3 (lambda r N)^{1/3} + v sqrt(r) N/(U A B)) dr;
/// leading = same prefactor times stationary_phase_I(alpha = v N/(U A B), beta = 3 (lambda N)^{1/3}).
/// Outside the window the leading term is 0.
VoronoiPair voronoi_phi_pair(const VoronoiWeightParams& p, double lambda, double tol = 1e-10);

/// lambda on `grid` maximizing |oracle|.
double voronoi_window_center(const VoronoiWeightParams& p, const std::vector<double>& grid);

// ---------------------------------------------------------------------------
// Expansion template
// ---------------------------------------------------------------------------

/// sum_{j=1}^{terms} sum_{+-} c_{j,+-} x int psi(r) e(+-3 (x r)^{1/3}) (x r)^{-j/3} dr.
/// psi is a bump; constants[j-1] = (c_{j,+}, c_{j,-}).
cplx psi0_expansion_evaluate(const std::vector<std::pair<cplx, cplx>>& constants, double x,
                             const SmoothWindow& psi, int terms, double tol = 1e-11);

}

#endif
