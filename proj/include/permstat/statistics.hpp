#pragma once

#include <stdexcept>
#include <vector>

#include "permstat/circle_function.hpp"
#include "permstat/sampler.hpp"

namespace permstat {

// Thrown when an infinite sum cannot be cut off with a certified tail bound.
struct TailNotControlled : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Delta_k(F) = (1/k) sum_{m<=k} F(e^{2 pi i m / k}); exact through the
// Laurent/arc/Fourier structure when present.
Complex delta_k(const CircleFunction& f, long k);

// Delta_k(F, y) = (1/k) sum_{w^k = y} F(w); requires |y| = 1 within 1e-12.
Complex delta_k_marked(const CircleFunction& f, long k, Complex y);

// tr(sigma^d) = sum_{k | d, k <= n} k C_k.
long trace_power(const CycleType& c, long d);

// tr(F) = sum_k k C_k Delta_k(F).
Complex trace_f(const CycleType& c, const CircleFunction& f);

// Wreath-product trace: sum_k sum_{m<=C_k} k Delta_k(F, Z_{k,m}). The mark
// table must cover exactly the (k, m) slots of c.
Complex trace_f_wreath(const CycleType& c, const MarkTable& marks,
                       const CircleFunction& f);

// chi_k(s) = E[e^{i s k Delta_k(F, Z_{k,1})}]. Exact for point-mass and atom
// laws; Gauss-Legendre over the mark angle for the uniform law, with the
// node-doubling difference reported in quad_refinement (0 on exact paths).
struct ChiResult {
  Complex value{1.0, 0.0};
  double quad_refinement = 0.0;
};
ChiResult chi_k(const CircleFunction& f, const ZLaw& z, long k, double s);

// Limit characteristic function of tr(sigma^d):
// exp(sum_{k | d} (theta_k / k)(e^{isk} - 1) r^k).
Complex limit_char_trace_power(const ThetaSequence& theta, double r, long d,
                               double s);

// Limit characteristic function of tr(F) - N c_0(F):
// exp(sum_k (theta_k / k)(chi_k(s) - 1) r^k), truncated at k_max with a
// certified tail bound from |chi_k - 1| <= s k sup|Delta_k|. Requires F with
// finite Laurent/Fourier support (the averages vanish beyond the max degree);
// throws TailNotControlled otherwise or when the bound exceeds 1e-8.
struct LimitChar {
  Complex value{1.0, 0.0};
  double tail_bound = 0.0;
};
LimitChar limit_char_trace_f(const ThetaSequence& theta, double r,
                             const CircleFunction& f, const ZLaw& z, double s,
                             long k_max);

// One draw of Y = sum_k sum_{m<=P_k} k Delta_k(F - c_0, Z_{k,m}), P_k
// Poisson(theta_k r^k / k), truncated at k_max with the tail mean reported.
struct LimitDraw {
  Complex value{0.0, 0.0};
  double tail_bound = 0.0;
};
LimitDraw sample_limit_y(const ThetaSequence& theta, double r,
                         const CircleFunction& f, const ZLaw& z,
                         RandomStream& rng, long k_max);

// c_m(F) = (1/2pi) int e^{-imx} F(e^{ix}) dx by the trapezoidal rule;
// refinement reports the node-doubling difference.
struct FourierCoeff {
  Complex value{0.0, 0.0};
  double refinement = 0.0;
};
FourierCoeff fourier_coeff(const CircleFunction& f, long m, long nodes);

// Report-only checks of the Fourier-side hypotheses: c_0 = 0, |c_m| decay
// against |m|^-(1+delta), and the weighted sum sum |m|^s |c_m| trending
// Cauchy over the last octave.
struct FourierConditionReport {
  bool mean_zero = false;
  double mean_abs = 0.0;
  double fitted_decay_exponent = 0.0;
  bool decay_pass = false;
  double weighted_sum = 0.0;
  double last_octave_increment = 0.0;
  bool weighted_sum_cauchy = false;
  double s_used = 0.0;
};
FourierConditionReport check_fourier_conditions(const CircleFunction& f,
                                                double delta, double s,
                                                double vartheta, long m_max);

// Diverging-variance CLT normalizers for real F under Ewens(theta):
//   V_N = theta sum_{k<=N} k E[Delta_k(F,Z)^2],
//   E_N = theta sum_{k<=N} E[Delta_k(F,Z)],
// and the Lyapunov-style ratio sum k^{p-1} E|Delta_k|^p / V_N^{p/2}.
struct CltQuantities {
  double v_n = 0.0;
  double e_n = 0.0;
  double p_used = 0.0;
  double lyapunov_ratio = 0.0;
};
CltQuantities clt_quantities(double theta, const CircleFunction& f,
                             const ZLaw& z, long n, double p);

// Per-sample (tr(F) - E_N)/sqrt(V_N) under Ewens(theta) with marks from z.
// Sample i draws from rng.substream(i) and lands at index i, so the output is
// identical for every worker count.
std::vector<double> standardized_trace(double theta, const CircleFunction& f,
                                       const ZLaw& z, long n, long samples,
                                       const RandomStream& rng, int workers = 1);

// Limit of (1/N^d) E[(tr F)^d] for bounded-variation F: the value
// (int F dphi)^d and the error scale vartheta log(n)/n.
std::pair<double, double> bounded_variation_moment(const ThetaSequence& theta,
                                                   const CircleFunction& f,
                                                   long n, int d);

// Exact finite-n characteristic function of tr(sigma^d):
// [t^n] exp(sum_{k|d}(theta_k/k)(e^{isk}-1) t^k) G(t) / h_n.
Complex finite_char_trace_power(const ThetaSequence& theta, long n, long d,
                                double s);

}  // namespace permstat
