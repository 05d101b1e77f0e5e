#include "permstat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace permstat {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

// Series form of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction form of Q(a, x) (modified Lentz), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw std::invalid_argument("gamma_q: a > 0, x >= 0 required");
  if (x == 0.0) return 1.0;
  return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi2_sf(double stat, double df) { return gamma_q(df / 2.0, stat / 2.0); }

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

KsTest two_sample_ks(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("two_sample_ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  return {d, kolmogorov_sf(lambda)};
}

Chi2Test chi2_gof(const std::vector<long>& observed,
                  const std::vector<double>& probs) {
  if (observed.size() != probs.size() || observed.empty())
    throw std::invalid_argument("chi2_gof: size mismatch");
  long total = 0;
  for (long o : observed) total += o;
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = static_cast<double>(total) * probs[i];
    if (expected <= 0.0)
      throw std::invalid_argument("chi2_gof: zero expected count");
    const double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
  }
  const double df = static_cast<double>(observed.size()) - 1.0;
  return {stat, df, chi2_sf(stat, df)};
}

Chi2Test chi2_two_sample(const std::vector<long>& a,
                         const std::vector<long>& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("chi2_two_sample: size mismatch");
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]);
  }
  const double k1 = std::sqrt(nb / na);
  const double k2 = std::sqrt(na / nb);
  double stat = 0.0;
  double cells = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double sum = static_cast<double>(a[i] + b[i]);
    if (sum == 0.0) continue;
    const double diff = k1 * static_cast<double>(a[i]) - k2 * static_cast<double>(b[i]);
    stat += diff * diff / sum;
    cells += 1.0;
  }
  const double df = cells - 1.0;
  return {stat, df, chi2_sf(stat, df)};
}

double poisson_pmf(double lambda, long j) {
  if (j < 0) return 0.0;
  return std::exp(-lambda + static_cast<double>(j) * std::log(lambda) -
                  std::lgamma(static_cast<double>(j) + 1.0));
}

std::vector<double> pmf_p1_plus_2p2(double m1, double m2, long j_max) {
  std::vector<double> pmf(static_cast<std::size_t>(j_max) + 1, 0.0);
  for (long b = 0; 2 * b <= j_max; ++b) {
    const double pb = poisson_pmf(m2, b);
    for (long j = 2 * b; j <= j_max; ++j)
      pmf[static_cast<std::size_t>(j)] += pb * poisson_pmf(m1, j - 2 * b);
  }
  return pmf;
}

double tv_distance(const std::map<long, long>& counts, long total,
                   const std::vector<double>& pmf) {
  if (total <= 0) throw std::invalid_argument("tv_distance: empty sample");
  double tv = 0.0;
  double pmf_covered = 0.0;
  for (long j = 0; j < static_cast<long>(pmf.size()); ++j) {
    const auto it = counts.find(j);
    const double emp =
        it == counts.end()
            ? 0.0
            : static_cast<double>(it->second) / static_cast<double>(total);
    tv += std::abs(emp - pmf[static_cast<std::size_t>(j)]);
    pmf_covered += pmf[static_cast<std::size_t>(j)];
  }
  for (const auto& [j, c] : counts)
    if (j < 0 || j >= static_cast<long>(pmf.size()))
      tv += static_cast<double>(c) / static_cast<double>(total);
  tv += std::max(0.0, 1.0 - pmf_covered);
  return 0.5 * tv;
}

}  // namespace permstat
