#pragma once

#include <complex>
#include <string>
#include <vector>

#include "permstat/theta.hpp"

namespace permstat {

// Formal power series mod t^(M+1); coeffs()[n] is the coefficient of t^n.
// Coefficients are complex doubles throughout; truncation order is always an
// explicit parameter of the operations below.
class TruncatedSeries {
 public:
  TruncatedSeries() : coeffs_(1) {}
  explicit TruncatedSeries(std::vector<Complex> coeffs);

  static TruncatedSeries zero(long order);
  static TruncatedSeries one(long order);

  long order() const { return static_cast<long>(coeffs_.size()) - 1; }
  Complex operator[](long n) const {  // 0 beyond the stored order
    return (n >= 0 && n <= order()) ? coeffs_[static_cast<std::size_t>(n)]
                                    : Complex{};
  }
  Complex& at(long n) { return coeffs_.at(static_cast<std::size_t>(n)); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  TruncatedSeries truncated(long order) const;  // pad or cut to the new order

 private:
  std::vector<Complex> coeffs_;
};

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b,
                           long m);
TruncatedSeries series_scale(const TruncatedSeries& a, Complex c);

// Cauchy product mod t^(m+1).
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b,
                           long m);

// exp(a) mod t^(m+1) via n b_n = sum_{k<=n} k a_k b_{n-k}; requires a[0] = 0.
TruncatedSeries series_exp(const TruncatedSeries& a, long m);

// log(a) mod t^(m+1); requires a[0] = 1.
TruncatedSeries series_log(const TruncatedSeries& a, long m);

// a^w = exp(w log a); requires a[0] = 1.
TruncatedSeries series_pow(const TruncatedSeries& a, Complex w, long m);

// g(t) = sum_{k>=1} (theta_k / k) t^k mod t^(m+1).
TruncatedSeries g_theta_series(const ThetaSequence& theta, long m);

// g(c t): coefficient theta_k c^k / k. Used for substituted factors of the
// moment generating functions.
TruncatedSeries g_theta_series_scaled(const ThetaSequence& theta, Complex c,
                                      long m);

// Normalization constants. h[N] stores h_N * rho^N; rho != 1 keeps models
// with singularity radius far from 1 inside double range (downstream
// asymptotic comparisons factor out the same power).
struct HTable {
  std::string theta_label;
  double rho = 1.0;
  std::vector<double> h;

  long order() const { return static_cast<long>(h.size()) - 1; }
  double scaled(long n) const { return h.at(static_cast<std::size_t>(n)); }
};

// h_N via the recursion N h_N = sum_{k=1..N} theta_k h_{N-k} (O(M^2)); equals
// coefficient extraction of exp(g) and is validated against it in tests.
HTable compute_h(const ThetaSequence& theta, long m, double rho = 1.0);

}  // namespace permstat
