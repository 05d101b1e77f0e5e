#include "permstat/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "permstat/kernels.hpp"

namespace permstat {

long CycleType::total_cycles() const {
  long t = 0;
  for (const auto& [k, c] : counts) t += c;
  return t;
}

void CycleType::add(long k, long c) {
  if (k < 1 || c < 1) throw std::invalid_argument("CycleType::add: k, c >= 1");
  counts[k] += c;
  n += k * c;
}

CycleSampler::CycleSampler(const ThetaSequence& theta, const HTable& h, long n)
    : capacity_(n) {
  if (n < 0) throw std::invalid_argument("CycleSampler: n >= 0 required");
  if (h.order() < n)
    throw std::invalid_argument("CycleSampler: HTable covers fewer than n+1 values");
  w_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (long k = 1; k <= n; ++k)
    w_[static_cast<std::size_t>(k)] = theta.weight_scaled(k, h.rho);
  h_.assign(h.h.begin(), h.h.begin() + n + 1);
}

CycleType CycleSampler::sample(long n, RandomStream& rng) const {
  if (n < 0 || n > capacity_)
    throw std::invalid_argument("CycleSampler::sample: n exceeds capacity");
  CycleType out;
  long m = n;
  while (m > 0) {
    // total mass over k is exactly m * h_m by the h recursion
    const double target =
        rng.uniform() * (static_cast<double>(m) * h_[static_cast<std::size_t>(m)]);
    const long k = static_cast<long>(kernels::weighted_select(
        w_.data(), h_.data(), static_cast<std::size_t>(m), target));
    out.add(k);
    m -= k;
  }
  return out;
}

CycleType sample_cycle_type(const ThetaSequence& theta, const HTable& h, long n,
                            RandomStream& rng) {
  return CycleSampler(theta, h, n).sample(n, rng);
}

double expected_cycle_count(const ThetaSequence& theta, const HTable& h, long n,
                            long k) {
  if (k < 1) throw std::invalid_argument("expected_cycle_count: k >= 1");
  if (k > n) return 0.0;
  if (h.order() < n)
    throw std::invalid_argument("expected_cycle_count: HTable too short");
  // scaled: (theta_k rho^k / k) * h~_{n-k} / h~_n restores the true ratio
  return theta.weight_scaled(k, h.rho) / static_cast<double>(k) *
         h.scaled(n - k) / h.scaled(n);
}

FellerSample feller_coupling(double theta, long n, RandomStream& rng) {
  if (!(theta > 0.0))
    throw std::invalid_argument("feller_coupling: constant theta > 0 required "
                                "(no such coupling exists otherwise)");
  if (n < 1) throw std::invalid_argument("feller_coupling: n >= 1 required");
  const long tail = 50 * static_cast<long>(std::ceil(theta));
  const long len = n + tail;
  std::vector<unsigned char> xi(static_cast<std::size_t>(len) + 1, 0);
  xi[1] = 1;  // P[xi_1 = 1] = theta/theta
  for (long i = 2; i <= len; ++i)
    xi[static_cast<std::size_t>(i)] =
        rng.bernoulli(theta / (theta + static_cast<double>(i) - 1.0)) ? 1 : 0;

  FellerSample out;
  // C_k(n): spacings of the first n indicators, final incomplete spacing
  // counted as a cycle. P_k: complete spacings of the extended sequence.
  long last = 1;
  for (long i = 2; i <= len; ++i) {
    if (!xi[static_cast<std::size_t>(i)]) continue;
    const long gap = i - last;
    if (i <= n) out.c.add(gap);
    ++out.p[gap];
    last = i;
  }
  if (last <= n) out.c.add(n + 1 - last);  // boundary spacing
  else if (out.c.n < n) {
    // last 1 within [1, n] sits before a run of zeros crossing n
    long last_in = 1;
    for (long i = n; i >= 1; --i)
      if (xi[static_cast<std::size_t>(i)]) { last_in = i; break; }
    out.c.add(n + 1 - last_in);
  }
  out.tail_bound_k1 = theta * theta / (theta + static_cast<double>(len) - 1.0);
  return out;
}

double psi_n(double theta, long n, long k) {
  if (!(theta > 0.0) || k < 1 || k > n)
    throw std::invalid_argument("psi_n: need theta > 0 and 1 <= k <= n");
  // C(N-k+theta-1, N-k) / C(N+theta-1, N) through log-gamma
  const double a = std::lgamma(static_cast<double>(n - k) + theta) -
                   std::lgamma(static_cast<double>(n - k) + 1.0);
  const double b = std::lgamma(static_cast<double>(n) + theta) -
                   std::lgamma(static_cast<double>(n) + 1.0);
  return std::exp(a - b);
}

std::vector<long> sample_poisson_field(const ThetaSequence& theta, double r,
                                       long k_max, RandomStream& rng) {
  if (k_max < 1) throw std::invalid_argument("sample_poisson_field: k_max >= 1");
  std::vector<long> p(static_cast<std::size_t>(k_max) + 1, 0);
  double rk = 1.0;
  for (long k = 1; k <= k_max; ++k) {
    rk *= r;
    p[static_cast<std::size_t>(k)] =
        rng.poisson(theta.theta(k) * rk / static_cast<double>(k));
  }
  return p;
}

ZLaw ZLaw::point_mass_one() { return ZLaw{}; }

ZLaw ZLaw::uniform_circle() {
  ZLaw z;
  z.kind_ = Kind::UniformCircle;
  return z;
}

ZLaw ZLaw::discrete_atoms(std::vector<std::pair<double, double>> atoms) {
  if (atoms.empty()) throw std::invalid_argument("ZLaw: no atoms");
  double total = 0.0;
  for (auto& [angle, prob] : atoms) {
    if (!(prob >= 0.0)) throw std::invalid_argument("ZLaw: negative probability");
    angle = std::fmod(angle, 2.0 * std::numbers::pi);
    if (angle < 0.0) angle += 2.0 * std::numbers::pi;
    total += prob;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("ZLaw: atom probabilities must sum to 1");
  ZLaw z;
  z.kind_ = Kind::DiscreteAtoms;
  z.atoms_ = std::move(atoms);
  return z;
}

Complex ZLaw::sample(RandomStream& rng) const {
  switch (kind_) {
    case Kind::PointMassOne:
      return Complex{1.0, 0.0};
    case Kind::UniformCircle: {
      const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
      return Complex{std::cos(phi), std::sin(phi)};
    }
    case Kind::DiscreteAtoms: {
      const double u = rng.uniform();
      double cdf = 0.0;
      for (const auto& [angle, prob] : atoms_) {
        cdf += prob;
        if (u < cdf) return Complex{std::cos(angle), std::sin(angle)};
      }
      const double angle = atoms_.back().first;
      return Complex{std::cos(angle), std::sin(angle)};
    }
  }
  return Complex{1.0, 0.0};
}

Complex ZLaw::sample_product(long k, RandomStream& rng) const {
  if (k < 1) throw std::invalid_argument("ZLaw::sample_product: k >= 1");
  switch (kind_) {
    case Kind::PointMassOne:
      return Complex{1.0, 0.0};
    case Kind::UniformCircle:
      return sample(rng);  // rotation invariance: the k-fold product is uniform
    case Kind::DiscreteAtoms: {
      if (atoms_.size() == 1) {
        const double angle = static_cast<double>(k) * atoms_[0].first;
        return Complex{std::cos(angle), std::sin(angle)};
      }
      double angle = 0.0;
      for (long j = 0; j < k; ++j) {
        const double u = rng.uniform();
        double cdf = 0.0;
        double picked = atoms_.back().first;
        for (const auto& [a, prob] : atoms_) {
          cdf += prob;
          if (u < cdf) { picked = a; break; }
        }
        angle += picked;
      }
      return Complex{std::cos(angle), std::sin(angle)};
    }
  }
  return Complex{1.0, 0.0};
}

std::vector<std::pair<double, double>> ZLaw::product_law(long k) const {
  if (k < 1) throw std::invalid_argument("ZLaw::product_law: k >= 1");
  constexpr std::size_t kSupportCap = 200000;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  switch (kind_) {
    case Kind::PointMassOne:
      return {{0.0, 1.0}};
    case Kind::UniformCircle:
      throw std::domain_error("ZLaw::product_law: uniform law has no atoms");
    case Kind::DiscreteAtoms:
      break;
  }
  auto normalize = [&](std::vector<std::pair<double, double>> m) {
    std::sort(m.begin(), m.end());
    std::vector<std::pair<double, double>> out;
    for (const auto& [a, p] : m) {
      if (!out.empty() && a - out.back().first <= 1e-12)
        out.back().second += p;
      else
        out.emplace_back(a, p);
    }
    // merge the wrap-around pair 0 / 2pi
    if (out.size() > 1 && (kTwoPi - out.back().first) + out.front().first <= 1e-12) {
      out.front().second += out.back().second;
      out.pop_back();
    }
    return out;
  };
  auto convolve = [&](const std::vector<std::pair<double, double>>& a,
                      const std::vector<std::pair<double, double>>& b) {
    std::vector<std::pair<double, double>> m;
    m.reserve(a.size() * b.size());
    for (const auto& [aa, pa] : a)
      for (const auto& [ab, pb] : b) {
        double s = aa + ab;
        if (s >= kTwoPi) s -= kTwoPi;
        m.emplace_back(s, pa * pb);
      }
    auto out = normalize(std::move(m));
    if (out.size() > kSupportCap)
      throw std::domain_error("ZLaw::product_law: support too large");
    return out;
  };
  // binary exponentiation of the convolution power
  std::vector<std::pair<double, double>> result{{0.0, 1.0}};
  std::vector<std::pair<double, double>> base = normalize(atoms_);
  long e = k;
  while (e > 0) {
    if (e & 1) result = convolve(result, base);
    e >>= 1;
    if (e > 0) base = convolve(base, base);
  }
  return result;
}

MarkTable sample_wreath_marks(const CycleType& c, const ZLaw& z,
                              RandomStream& rng) {
  MarkTable marks;
  for (const auto& [k, ck] : c.counts)
    for (long m = 1; m <= ck; ++m)
      marks[{k, m}] = z.sample_product(k, rng);
  return marks;
}

}  // namespace permstat
