#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "permstat/series.hpp"

namespace permstat {

// Thrown by the on-circle evaluator when two factor singularities collide
// (the excluded equal-singularities case).
struct NearDegenerateSingularities : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// P(x1, x2) = sum b_{k1,k2} x1^k1 x2^k2 with finite support; zero
// coefficients are never stored.
class BivariatePolynomial {
 public:
  using Key = std::pair<int, int>;

  void set(int k1, int k2, Complex b);
  Complex at(int k1, int k2) const;
  const std::map<Key, Complex>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  static BivariatePolynomial constant(Complex c);

 private:
  std::map<Key, Complex> terms_;
};

// Expansion of (1-x1)^s1 (1-x2)^s2: b_{k1,k2} = (-1)^{k1+k2} C(s1,k1) C(s2,k2).
BivariatePolynomial charpoly_expand(int s1, int s2);

// sum_N t^N h_N E[W^N(P)(x1,x2)] = prod_{k1,k2} G(x1^k1 x2^k2 t)^{b_{k1,k2}},
// truncated at t^m. Requires |x1|, |x2| <= 1.
TruncatedSeries moment_series(const ThetaSequence& theta,
                              const BivariatePolynomial& p, Complex x1,
                              Complex x2, long m);

// E[W^N(P)] = [t^N] moment_series / h_N.
Complex exact_moment(const ThetaSequence& theta, const BivariatePolynomial& p,
                     Complex x1, Complex x2, long n);

// E[W^N(P)] for every N = 0..m in one series pass.
std::vector<Complex> exact_moment_profile(const ThetaSequence& theta,
                                          const BivariatePolynomial& p,
                                          Complex x1, Complex x2, long m);

// Asymptotics of E[W^N(P)]. Inside the disc the prediction is
//   N^{vartheta(b00-1)} e^{K(b00-1)} (E1 + O(1/N));
// on the circle it is the sum over the support of
//   E2(k1,k2) N^{vartheta(b-1)} x1^{N k1} x2^{N k2} (Gamma(vt)/Gamma(vt b) + O(1/N)).
struct MomentAsymptotics {
  struct Term {
    int k1, k2;
    Complex b;           // b_{k1,k2}
    Complex e2;          // E2(k1,k2)
    Complex exponent;    // vartheta (b - 1)
    Complex phase_base;  // x1^k1 x2^k2
    Complex gamma_ratio; // Gamma(vartheta) / Gamma(vartheta b)
  };

  std::vector<Term> terms;        // on-circle path
  std::optional<Complex> e1;      // inside-disc path
  Complex inside_exponent{0.0, 0.0};   // vartheta (b00 - 1)
  Complex inside_constant{1.0, 0.0};   // e^{K (b00 - 1)}

  Complex evaluate(long n) const;
  // On-circle: keep only the terms with maximal Re(b) (the others decay
  // faster by full powers of N^vartheta).
  Complex evaluate_dominant(long n) const;
};

// Inside the unit disc: max(|x1|,|x2|) < 1, class-F descriptor and a closed
// form for g are required.
MomentAsymptotics asym_moment_inside(const ThetaSequence& theta,
                                     const BivariatePolynomial& p, Complex x1,
                                     Complex x2);

// On the unit circle: |x1| = |x2| = 1 and all pairwise factor singularities
// distinct (checked with tolerance 1e-9, rejected otherwise).
MomentAsymptotics asym_moment_circle(const ThetaSequence& theta,
                                     const BivariatePolynomial& p, Complex x1,
                                     Complex x2);

}  // namespace permstat
