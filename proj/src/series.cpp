#include "permstat/series.hpp"

#include <cmath>
#include <stdexcept>

#include "permstat/kernels.hpp"

namespace permstat {
namespace {

void require_finite(const std::vector<Complex>& c) {
  for (const auto& v : c)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("TruncatedSeries: non-finite coefficient");
}

std::vector<Complex> padded(const TruncatedSeries& a, long m) {
  std::vector<Complex> out(static_cast<std::size_t>(m) + 1);
  const long upto = std::min(m, a.order());
  for (long n = 0; n <= upto; ++n) out[static_cast<std::size_t>(n)] = a[n];
  return out;
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw std::invalid_argument("TruncatedSeries: need at least one coefficient");
  require_finite(coeffs_);
}

TruncatedSeries TruncatedSeries::zero(long order) {
  return TruncatedSeries(std::vector<Complex>(static_cast<std::size_t>(order) + 1));
}

TruncatedSeries TruncatedSeries::one(long order) {
  auto s = zero(order);
  s.at(0) = Complex{1.0, 0.0};
  return s;
}

TruncatedSeries TruncatedSeries::truncated(long order) const {
  return TruncatedSeries(padded(*this, order));
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b,
                           long m) {
  auto out = padded(a, m);
  for (long n = 0; n <= m; ++n) out[static_cast<std::size_t>(n)] += b[n];
  return TruncatedSeries(std::move(out));
}

TruncatedSeries series_scale(const TruncatedSeries& a, Complex c) {
  auto out = a.coeffs();
  for (auto& v : out) v *= c;
  return TruncatedSeries(std::move(out));
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b,
                           long m) {
  const auto pa = padded(a, m);
  const auto pb = padded(b, m);
  std::vector<Complex> out(static_cast<std::size_t>(m) + 1);
  for (long n = 0; n <= m; ++n)
    out[static_cast<std::size_t>(n)] =
        kernels::cdot_rev(pa.data(), pb.data(), static_cast<std::size_t>(n) + 1);
  return TruncatedSeries(std::move(out));
}

TruncatedSeries series_exp(const TruncatedSeries& a, long m) {
  if (a[0] != Complex{0.0, 0.0})
    throw std::invalid_argument("series_exp: constant term must be 0");
  const auto pa = padded(a, m);
  std::vector<Complex> ka(static_cast<std::size_t>(m) + 1);  // ka[i] = (i+1) a_{i+1}
  for (long i = 0; i + 1 <= m; ++i)
    ka[static_cast<std::size_t>(i)] =
        static_cast<double>(i + 1) * pa[static_cast<std::size_t>(i) + 1];
  std::vector<Complex> b(static_cast<std::size_t>(m) + 1);
  b[0] = Complex{1.0, 0.0};
  for (long n = 1; n <= m; ++n)
    b[static_cast<std::size_t>(n)] =
        kernels::cdot_rev(ka.data(), b.data(), static_cast<std::size_t>(n)) /
        static_cast<double>(n);
  return TruncatedSeries(std::move(b));
}

TruncatedSeries series_log(const TruncatedSeries& a, long m) {
  if (a[0] != Complex{1.0, 0.0})
    throw std::invalid_argument("series_log: constant term must be 1");
  const auto pa = padded(a, m);
  std::vector<Complex> g(static_cast<std::size_t>(m) + 1);
  std::vector<Complex> kg(static_cast<std::size_t>(m) + 1);  // kg[i] = (i+1) g_{i+1}
  for (long n = 1; n <= m; ++n) {
    // n g_n = n a_n - sum_{k=1..n-1} k g_k a_{n-k}
    const Complex inner =
        kernels::cdot_rev(kg.data(), pa.data() + 1, static_cast<std::size_t>(n) - 1);
    g[static_cast<std::size_t>(n)] =
        pa[static_cast<std::size_t>(n)] - inner / static_cast<double>(n);
    kg[static_cast<std::size_t>(n) - 1] =
        static_cast<double>(n) * g[static_cast<std::size_t>(n)];
  }
  return TruncatedSeries(std::move(g));
}

TruncatedSeries series_pow(const TruncatedSeries& a, Complex w, long m) {
  return series_exp(series_scale(series_log(a, m), w), m);
}

TruncatedSeries g_theta_series(const ThetaSequence& theta, long m) {
  if (m < 1) throw std::invalid_argument("g_theta_series: m >= 1 required");
  std::vector<Complex> c(static_cast<std::size_t>(m) + 1);
  for (long k = 1; k <= m; ++k)
    c[static_cast<std::size_t>(k)] =
        Complex{theta.weight_scaled(k, 1.0) / static_cast<double>(k), 0.0};
  return TruncatedSeries(std::move(c));
}

TruncatedSeries g_theta_series_scaled(const ThetaSequence& theta, Complex c,
                                      long m) {
  std::vector<Complex> out(static_cast<std::size_t>(m) + 1);
  const double rho = std::abs(c);
  if (rho == 0.0) return TruncatedSeries(std::move(out));
  const Complex phase = c / rho;
  Complex pk{1.0, 0.0};
  for (long k = 1; k <= m; ++k) {
    pk *= phase;
    out[static_cast<std::size_t>(k)] =
        theta.weight_scaled(k, rho) * pk / static_cast<double>(k);
  }
  return TruncatedSeries(std::move(out));
}

HTable compute_h(const ThetaSequence& theta, long m, double rho) {
  if (m < 0) throw std::invalid_argument("compute_h: m >= 0 required");
  if (!(rho > 0.0)) throw std::invalid_argument("compute_h: rho > 0 required");
  std::vector<double> w(static_cast<std::size_t>(m) + 1);  // w[k] = theta_k rho^k
  for (long k = 1; k <= m; ++k)
    w[static_cast<std::size_t>(k)] = theta.weight_scaled(k, rho);
  std::vector<double> h(static_cast<std::size_t>(m) + 1);
  h[0] = 1.0;
  for (long n = 1; n <= m; ++n) {
    h[static_cast<std::size_t>(n)] =
        kernels::dot_rev(w.data() + 1, h.data(), static_cast<std::size_t>(n)) /
        static_cast<double>(n);
    const double v = h[static_cast<std::size_t>(n)];
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::overflow_error(
          "compute_h: h left double range at N = " + std::to_string(n) +
          "; pass a scaling rho near the singularity radius");
  }
  HTable table;
  table.theta_label = theta.label();
  table.rho = rho;
  table.h = std::move(h);
  return table;
}

}  // namespace permstat
