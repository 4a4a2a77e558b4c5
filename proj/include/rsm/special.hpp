#ifndef RSM_SPECIAL_HPP
#define RSM_SPECIAL_HPP

#include <complex>

namespace rsm {

/// log Gamma(z) for complex z by the Lanczos approximation (g = 7, 9 terms),
/// with reflection for Re z < 1/2. The branch is not the principal one in
/// general; only exp() of sums and differences of these values is meaningful.
/// Throws std::domain_error at the poles z = 0, -1, -2, ...
std::complex<double> complex_lgamma(std::complex<double> z);

/// log sin(z), stable for large |Im z|.
std::complex<double> log_sin(std::complex<double> z);

}

#endif
