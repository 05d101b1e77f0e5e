#pragma once

#include <complex>
#include <cstddef>

// Internal: per-ISA kernel entry points. The scalar versions define the
// reference arithmetic; see kernels.cpp for the blocking contract.

namespace permstat::kernels::detail {

double dot_rev_scalar(const double* x, const double* y, std::size_t n);
std::complex<double> cdot_rev_scalar(const std::complex<double>* x,
                                     const std::complex<double>* y,
                                     std::size_t n);
std::size_t weighted_select_scalar(const double* w, const double* h,
                                   std::size_t m, double target);

#if defined(__x86_64__) || defined(_M_X64)
double dot_rev_avx2(const double* x, const double* y, std::size_t n);
std::complex<double> cdot_rev_avx2(const std::complex<double>* x,
                                   const std::complex<double>* y,
                                   std::size_t n);
std::size_t weighted_select_avx2(const double* w, const double* h,
                                 std::size_t m, double target);
#endif

}  // namespace permstat::kernels::detail
