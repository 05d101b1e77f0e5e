#include "permstat/moments.hpp"

#include <cmath>
#include <sstream>

#include "permstat/gamma.hpp"

namespace permstat {
namespace {

Complex pow_int(Complex x, int k) {
  Complex out{1.0, 0.0};
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

void require_in_disc(Complex x1, Complex x2) {
  if (std::abs(x1) > 1.0 + 1e-12 || std::abs(x2) > 1.0 + 1e-12)
    throw std::invalid_argument("moment_series: |x1|, |x2| <= 1 required");
}

const SingularityDescriptor& class_f_descriptor(const ThetaSequence& theta) {
  const auto& desc = theta.descriptor();
  if (!desc || desc->cls != SingularityClass::F)
    throw std::logic_error("moment asymptotics: '" + theta.label() +
                           "' needs a class-F descriptor");
  if (!theta.has_closed_form())
    throw std::logic_error("moment asymptotics: '" + theta.label() +
                           "' needs a closed form for g");
  return *desc;
}

// G(z)^b = exp(b g(z)) via the closed form.
Complex g_power(const ThetaSequence& theta, Complex z, Complex b) {
  return std::exp(b * theta.g_closed(z));
}

}  // namespace

void BivariatePolynomial::set(int k1, int k2, Complex b) {
  if (k1 < 0 || k2 < 0)
    throw std::invalid_argument("BivariatePolynomial: exponents must be >= 0");
  if (b == Complex{0.0, 0.0})
    terms_.erase({k1, k2});
  else
    terms_[{k1, k2}] = b;
}

Complex BivariatePolynomial::at(int k1, int k2) const {
  const auto it = terms_.find({k1, k2});
  return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

BivariatePolynomial BivariatePolynomial::constant(Complex c) {
  BivariatePolynomial p;
  p.set(0, 0, c);
  return p;
}

BivariatePolynomial charpoly_expand(int s1, int s2) {
  if (s1 < 0 || s2 < 0)
    throw std::invalid_argument("charpoly_expand: s1, s2 >= 0 required");
  auto binom_row = [](int s) {
    std::vector<double> row(static_cast<std::size_t>(s) + 1, 1.0);
    for (int k = 1; k <= s; ++k)
      row[static_cast<std::size_t>(k)] =
          row[static_cast<std::size_t>(k - 1)] * (s - k + 1) / k;
    return row;
  };
  const auto r1 = binom_row(s1);
  const auto r2 = binom_row(s2);
  BivariatePolynomial p;
  for (int k1 = 0; k1 <= s1; ++k1)
    for (int k2 = 0; k2 <= s2; ++k2) {
      const double sign = ((k1 + k2) % 2 == 0) ? 1.0 : -1.0;
      p.set(k1, k2,
            Complex{sign * r1[static_cast<std::size_t>(k1)] *
                        r2[static_cast<std::size_t>(k2)],
                    0.0});
    }
  return p;
}

TruncatedSeries moment_series(const ThetaSequence& theta,
                              const BivariatePolynomial& p, Complex x1,
                              Complex x2, long m) {
  require_in_disc(x1, x2);
  // log of the product: sum_{k1,k2} b * g(x1^k1 x2^k2 t), then one exp.
  TruncatedSeries log_sum = TruncatedSeries::zero(m);
  for (const auto& [key, b] : p.terms()) {
    const Complex c = pow_int(x1, key.first) * pow_int(x2, key.second);
    log_sum = series_add(log_sum,
                         series_scale(g_theta_series_scaled(theta, c, m), b), m);
  }
  return series_exp(log_sum, m);
}

Complex exact_moment(const ThetaSequence& theta, const BivariatePolynomial& p,
                     Complex x1, Complex x2, long n) {
  const TruncatedSeries s = moment_series(theta, p, x1, x2, n);
  const HTable h = compute_h(theta, n);
  return s[n] / h.scaled(n);
}

std::vector<Complex> exact_moment_profile(const ThetaSequence& theta,
                                          const BivariatePolynomial& p,
                                          Complex x1, Complex x2, long m) {
  const TruncatedSeries s = moment_series(theta, p, x1, x2, m);
  const HTable h = compute_h(theta, m);
  std::vector<Complex> out(static_cast<std::size_t>(m) + 1);
  for (long n = 0; n <= m; ++n)
    out[static_cast<std::size_t>(n)] = s[n] / h.scaled(n);
  return out;
}

Complex MomentAsymptotics::evaluate(long n) const {
  const double logn = std::log(static_cast<double>(n));
  if (e1) return std::exp(inside_exponent * logn) * inside_constant * *e1;
  Complex sum{0.0, 0.0};
  for (const auto& t : terms) {
    const double phase = static_cast<double>(n) * std::arg(t.phase_base);
    sum += t.e2 * t.gamma_ratio * std::exp(t.exponent * logn) *
           Complex{std::cos(phase), std::sin(phase)};
  }
  return sum;
}

Complex MomentAsymptotics::evaluate_dominant(long n) const {
  if (e1) return evaluate(n);
  double max_re = -1e300;
  for (const auto& t : terms) max_re = std::max(max_re, t.b.real());
  const double logn = std::log(static_cast<double>(n));
  Complex sum{0.0, 0.0};
  for (const auto& t : terms) {
    if (t.b.real() < max_re - 1e-12) continue;
    const double phase = static_cast<double>(n) * std::arg(t.phase_base);
    sum += t.e2 * t.gamma_ratio * std::exp(t.exponent * logn) *
           Complex{std::cos(phase), std::sin(phase)};
  }
  return sum;
}

MomentAsymptotics asym_moment_inside(const ThetaSequence& theta,
                                     const BivariatePolynomial& p, Complex x1,
                                     Complex x2) {
  if (std::max(std::abs(x1), std::abs(x2)) >= 1.0)
    throw std::invalid_argument(
        "asym_moment_inside: max(|x1|,|x2|) < 1 required");
  const auto& desc = class_f_descriptor(theta);
  const Complex b00 = p.at(0, 0);
  Complex e1 = complex_gamma(Complex{desc.vartheta, 0.0}) *
               recip_gamma(desc.vartheta * b00);
  for (const auto& [key, b] : p.terms()) {
    if (key.first == 0 && key.second == 0) continue;
    const Complex z = desc.r * pow_int(x1, key.first) * pow_int(x2, key.second);
    e1 *= g_power(theta, z, b);
  }
  MomentAsymptotics out;
  out.e1 = e1;
  out.inside_exponent = desc.vartheta * (b00 - 1.0);
  out.inside_constant = std::exp(desc.bigk * (b00 - 1.0));
  return out;
}

MomentAsymptotics asym_moment_circle(const ThetaSequence& theta,
                                     const BivariatePolynomial& p, Complex x1,
                                     Complex x2) {
  if (std::abs(std::abs(x1) - 1.0) > 1e-12 ||
      std::abs(std::abs(x2) - 1.0) > 1e-12)
    throw std::invalid_argument("asym_moment_circle: |x1| = |x2| = 1 required");
  const auto& desc = class_f_descriptor(theta);

  // Factor singularities r x1^{-k1} x2^{-k2} must be pairwise distinct:
  // x1^d1 x2^d2 != 1 over the difference set of the support.
  const auto& terms = p.terms();
  for (auto it = terms.begin(); it != terms.end(); ++it)
    for (auto jt = terms.begin(); jt != terms.end(); ++jt) {
      if (it == jt) continue;
      const int d1 = it->first.first - jt->first.first;
      const int d2 = it->first.second - jt->first.second;
      Complex ratio = pow_int(x1, std::abs(d1)) ;
      // handle negative exponents through conjugation on the unit circle
      ratio = (d1 >= 0) ? ratio : std::conj(ratio);
      Complex r2 = pow_int(x2, std::abs(d2));
      r2 = (d2 >= 0) ? r2 : std::conj(r2);
      if (std::abs(ratio * r2 - 1.0) <= 1e-9) {
        std::ostringstream os;
        os << "asym_moment_circle: singularities of terms (" << it->first.first
           << "," << it->first.second << ") and (" << jt->first.first << ","
           << jt->first.second << ") coincide within 1e-9";
        throw NearDegenerateSingularities(os.str());
      }
    }

  const Complex vt{desc.vartheta, 0.0};
  const Complex gamma_vt = complex_gamma(vt);
  MomentAsymptotics out;
  for (const auto& [key, b] : terms) {
    MomentAsymptotics::Term t;
    t.k1 = key.first;
    t.k2 = key.second;
    t.b = b;
    t.exponent = desc.vartheta * (b - 1.0);
    t.phase_base = pow_int(x1, key.first) * pow_int(x2, key.second);
    t.gamma_ratio = gamma_vt * recip_gamma(vt * b);
    t.e2 = std::exp(desc.bigk * (b - 1.0));
    for (const auto& [mkey, mb] : terms) {
      if (mkey == key) continue;
      const int d1 = mkey.first - key.first;
      const int d2 = mkey.second - key.second;
      Complex f1 = pow_int(x1, std::abs(d1));
      f1 = (d1 >= 0) ? f1 : std::conj(f1);
      Complex f2 = pow_int(x2, std::abs(d2));
      f2 = (d2 >= 0) ? f2 : std::conj(f2);
      t.e2 *= g_power(theta, desc.r * f1 * f2, mb);
    }
    out.terms.push_back(t);
  }
  return out;
}

}  // namespace permstat
