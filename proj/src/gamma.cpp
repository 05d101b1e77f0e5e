#include "permstat/gamma.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace permstat {
namespace {

using Complex = std::complex<double>;

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Core approximation, valid for Re z >= 0.5.
Complex lanczos_gamma(Complex z) {
  z -= 1.0;
  Complex x{kLanczos[0], 0.0};
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) *
         std::exp(-t) * x;
}

}  // namespace

Complex complex_gamma(Complex z) {
  if (is_nonpositive_integer(z))
    throw std::domain_error("complex_gamma: pole at nonpositive integer");
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    const Complex s = std::sin(std::numbers::pi * z);
    return std::numbers::pi / (s * lanczos_gamma(1.0 - z));
  }
  return lanczos_gamma(z);
}

Complex recip_gamma(Complex z) {
  if (is_nonpositive_integer(z)) return Complex{0.0, 0.0};
  if (z.real() < 0.5) {
    const Complex s = std::sin(std::numbers::pi * z);
    return s * lanczos_gamma(1.0 - z) / std::numbers::pi;
  }
  return 1.0 / lanczos_gamma(z);
}

}  // namespace permstat
