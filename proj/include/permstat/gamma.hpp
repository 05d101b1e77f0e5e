#pragma once

#include <complex>

namespace permstat {

// Gamma(z) by the Lanczos approximation (g = 7, 9 coefficients), reflection
// formula for Re z < 0.5. Throws std::domain_error at the poles.
std::complex<double> complex_gamma(std::complex<double> z);

// 1/Gamma(z); entire. Returns exactly 0 at z = 0, -1, -2, ...
std::complex<double> recip_gamma(std::complex<double> z);

}  // namespace permstat
