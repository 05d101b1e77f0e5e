#pragma once

#include <complex>
#include <span>

#include "permstat/theta.hpp"

namespace permstat {

// Leading-order coefficient prediction plus the magnitude of the transfer
// theorem's error term at this N (unit constant; the theorems give none).
struct AsymptoticResult {
  Complex value{0.0, 0.0};
  double error_scale = 0.0;
};

// [t^N] e^{w g(t)} S(t) for g in class F(r, vartheta, K):
//   e^{Kw} N^{w vartheta - 1} r^{-N} (S(r)/Gamma(vartheta w) + O(1/N)).
// rho reports value * rho^N; passing rho = r cancels the r^{-N} factor so
// models with r far from 1 stay inside double range.
AsymptoticResult hwang_coeff_F(const SingularityDescriptor& desc, Complex w,
                               Complex s_at_r, long n, double rho = 1.0);

// Class eF version: value e^{w g0(r)} N^{w vartheta - 1} r^{-N} S(r) /
// Gamma(vartheta w); error R_N = N^{vartheta Re w - 1 - gamma} log N (Re w >= 0)
// or N^{-1-gamma} (Re w < 0), times r^{-N}.
AsymptoticResult hwang_coeff_eF(const SingularityDescriptor& desc, Complex w,
                                Complex s_at_r, long n, double rho = 1.0);

// Multiple singularities xi_i on |t| = r: the branch sum
//   sum_i e^{K_i w} N^{w vartheta_i - 1} xi_i^{-N} (S(xi_i)/Gamma(vartheta_i w) + O(1/N)).
AsymptoticResult hwang_coeff_multi(const SingularityDescriptor& desc, Complex w,
                                   std::span<const Complex> s_at_xi, long n,
                                   double rho = 1.0);

// h_N asymptotics: the transfer theorem at w = 1, S = 1, dispatched on the
// sequence's descriptor class. Throws std::logic_error without a descriptor.
AsymptoticResult h_asym(const ThetaSequence& theta, long n, double rho = 1.0);

}  // namespace permstat
