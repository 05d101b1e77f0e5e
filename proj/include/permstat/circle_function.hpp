#pragma once

#include <functional>
#include <map>
#include <optional>

#include "permstat/theta.hpp"

namespace permstat {

// Fourier data with the mean kept apart from the oscillating coefficients:
// whether c_0 vanishes is a checkable hypothesis of the limit theorems.
struct FourierData {
  Complex mean{0.0, 0.0};            // c_0
  std::map<long, Complex> coeffs;    // m != 0 only
};

// Arc indicator with an additive shift: F = offset + 1_{angle in [a, b)}.
struct ArcData {
  double a = 0.0;
  double b = 0.0;
  double offset = 0.0;
};

// Test function F on the unit circle, evaluated at angles in [0, 2pi).
// Structural representations (Laurent coefficients, arc bounds, Fourier data)
// ride along when known; root-of-unity averages use them for exact arithmetic.
class CircleFunction {
 public:
  static CircleFunction from_eval(std::function<Complex(double)> eval,
                                  bool is_real = false,
                                  std::optional<double> total_variation = {},
                                  std::optional<double> sobolev_exponent = {});
  // F(x) = sum_d b_d x^d (finite Laurent support, d may be negative).
  static CircleFunction laurent(std::map<long, Complex> b);
  // F = offset + indicator of the angle arc [a, b) (half-open, 0 <= a,b < 2pi;
  // a > b wraps through 0).
  static CircleFunction arc_indicator(double a, double b, double offset = 0.0);
  static CircleFunction cosine();  // cos x = (x + x^-1)/2 as a Laurent function
  static CircleFunction from_fourier(FourierData f, bool is_real = false);

  Complex eval(double angle) const;
  bool is_real() const { return is_real_; }
  const std::optional<std::map<long, Complex>>& laurent_coeffs() const {
    return laurent_;
  }
  const std::optional<ArcData>& arc() const { return arc_; }
  const std::optional<FourierData>& fourier() const { return fourier_; }
  std::optional<double> total_variation() const { return total_variation_; }
  std::optional<double> sobolev_exponent() const { return sobolev_exponent_; }

  // Largest |d| (Laurent) or |m| (Fourier) with a stored coefficient; the
  // root-of-unity averages vanish identically beyond it when the mean is 0.
  std::optional<long> max_degree() const;
  Complex mean() const;  // c_0 where structurally known, else quadrature

  CircleFunction plus_constant(Complex c) const;

 private:
  CircleFunction() = default;

  std::function<Complex(double)> eval_;
  bool is_real_ = false;
  std::optional<std::map<long, Complex>> laurent_;
  std::optional<ArcData> arc_;
  std::optional<FourierData> fourier_;
  std::optional<double> total_variation_;
  std::optional<double> sobolev_exponent_;
};

// Number of j in [0, k) with angle 2 pi j / k + base inside the arc [a, b);
// exact integer counting, no floating evaluation of F.
long arc_root_count(const ArcData& arc, long k, double base_angle = 0.0);

}  // namespace permstat
