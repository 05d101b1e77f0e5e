#pragma once

#include <complex>
#include <cstddef>
#include <optional>

// Arithmetic inner loops shared by the series engine and the cycle-type
// sampler. Every kernel is defined by its scalar reference implementation,
// which uses a fixed blocked-by-4 summation order; the AVX2 variants perform
// the same floating-point operations in the same order, so scalar and SIMD
// results are bit-identical. Dispatch happens once at startup from CPU
// feature detection and can be pinned for tests.

namespace permstat::kernels {

enum class Isa { Scalar, Avx2 };

Isa active_isa();
const char* isa_name(Isa isa);

// Test hook: pin the implementation. std::nullopt restores auto-detection.
void force_isa(std::optional<Isa> isa);

// sum_{i<n} x[i] * y[n-1-i]
double dot_rev(const double* x, const double* y, std::size_t n);

std::complex<double> cdot_rev(const std::complex<double>* x,
                              const std::complex<double>* y, std::size_t n);

// Inverse-CDF scan over the positive masses w[k]*h[m-k], k = 1..m (w is
// indexed from 1). Returns the smallest k whose running sum reaches target,
// or m if rounding keeps the total below it.
std::size_t weighted_select(const double* w, const double* h, std::size_t m,
                            double target);

}  // namespace permstat::kernels
