#include "permstat/hwang.hpp"

#include <cmath>
#include <stdexcept>

#include "permstat/gamma.hpp"

namespace permstat {
namespace {

// N^e for complex e, and (rho/r)^N, both through logs to dodge overflow.
Complex n_power(long n, Complex e) {
  return std::exp(e * std::log(static_cast<double>(n)));
}

double scale_power(double rho, double r, long n) {
  return std::exp(static_cast<double>(n) * std::log(rho / r));
}

}  // namespace

AsymptoticResult hwang_coeff_F(const SingularityDescriptor& desc, Complex w,
                               Complex s_at_r, long n, double rho) {
  if (desc.cls != SingularityClass::F)
    throw std::invalid_argument("hwang_coeff_F: descriptor is not class F");
  if (n < 1) throw std::invalid_argument("hwang_coeff_F: N >= 1 required");
  const Complex prefactor = std::exp(desc.bigk * w) *
                            n_power(n, w * desc.vartheta - 1.0) *
                            scale_power(rho, desc.r, n);
  AsymptoticResult res;
  res.value = prefactor * s_at_r * recip_gamma(desc.vartheta * w);
  res.error_scale = std::abs(prefactor) / static_cast<double>(n);
  return res;
}

AsymptoticResult hwang_coeff_eF(const SingularityDescriptor& desc, Complex w,
                                Complex s_at_r, long n, double rho) {
  if (desc.cls != SingularityClass::EF)
    throw std::invalid_argument("hwang_coeff_eF: descriptor is not class eF");
  if (n < 2) throw std::invalid_argument("hwang_coeff_eF: N >= 2 required");
  const double nn = static_cast<double>(n);
  const double scale = scale_power(rho, desc.r, n);
  AsymptoticResult res;
  res.value = std::exp(w * desc.g0_at_r) * n_power(n, w * desc.vartheta - 1.0) *
              scale * s_at_r * recip_gamma(desc.vartheta * w);
  if (w.real() >= 0.0) {
    res.error_scale = std::pow(nn, desc.vartheta * w.real() - 1.0 - desc.gamma) *
                      std::log(nn) * scale;
  } else {
    res.error_scale = std::pow(nn, -1.0 - desc.gamma) * scale;
  }
  return res;
}

AsymptoticResult hwang_coeff_multi(const SingularityDescriptor& desc, Complex w,
                                   std::span<const Complex> s_at_xi, long n,
                                   double rho) {
  if (desc.cls != SingularityClass::Multi)
    throw std::invalid_argument("hwang_coeff_multi: descriptor is not multi");
  if (s_at_xi.size() != desc.branches.size())
    throw std::invalid_argument(
        "hwang_coeff_multi: one S(xi_i) value per branch required");
  if (n < 1) throw std::invalid_argument("hwang_coeff_multi: N >= 1 required");
  AsymptoticResult res;
  const double radial = scale_power(rho, desc.r, n);
  for (std::size_t i = 0; i < desc.branches.size(); ++i) {
    const auto& br = desc.branches[i];
    // xi^{-N} = r^{-N} e^{-i N arg xi}; the radial part carries the scaling.
    const double phase = -static_cast<double>(n) * std::arg(br.xi);
    const Complex xi_pow = radial * Complex{std::cos(phase), std::sin(phase)};
    const Complex prefactor =
        std::exp(br.bigk * w) * n_power(n, w * br.vartheta - 1.0) * xi_pow;
    res.value += prefactor * s_at_xi[i] * recip_gamma(br.vartheta * w);
    res.error_scale += std::abs(prefactor) / static_cast<double>(n);
  }
  return res;
}

AsymptoticResult h_asym(const ThetaSequence& theta, long n, double rho) {
  const auto& desc = theta.descriptor();
  if (!desc)
    throw std::logic_error("h_asym: '" + theta.label() +
                           "' carries no singularity descriptor");
  const Complex one{1.0, 0.0};
  switch (desc->cls) {
    case SingularityClass::F:
      return hwang_coeff_F(*desc, one, one, n, rho);
    case SingularityClass::EF:
      return hwang_coeff_eF(*desc, one, one, n, rho);
    case SingularityClass::Multi: {
      std::vector<Complex> ones(desc->branches.size(), one);
      return hwang_coeff_multi(*desc, one, ones, n, rho);
    }
  }
  throw std::logic_error("h_asym: unknown descriptor class");
}

}  // namespace permstat
