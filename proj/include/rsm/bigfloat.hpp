#ifndef RSM_BIGFLOAT_HPP
#define RSM_BIGFLOAT_HPP

// Power series whose terms cancel catastrophically in double precision,
// summed in MPFR at a working precision sized to the cancellation.

#include <complex>

namespace rsm::bigfloat {

/// Ai(x) from the Maclaurin series Ai = Ai(0) f(x) + Ai'(0) g(x).
/// Working precision grows like |x|^{3/2}; intended for |x| <= 200.
double airy_ai_maclaurin(double x);

/// sum_{k>=0} (-x^2/4)^k / (k! (1+nu)_k) for Re nu >= 0 and 0 <= x <= 1000,
/// so that J_nu(x) = (x/2)^nu / Gamma(1+nu) times this sum.
std::complex<double> bessel_0f1(std::complex<double> nu, double x);

}

#endif
