#include <doctest.h>

#include <complex>
#include <vector>

#include "permstat/kernels.hpp"
#include "permstat/rng.hpp"

using permstat::RandomStream;
namespace kernels = permstat::kernels;

namespace {

struct IsaGuard {
  ~IsaGuard() { kernels::force_isa(std::nullopt); }
};

std::vector<double> random_vec(RandomStream& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-2.0, 2.0);
  return v;
}

std::vector<std::complex<double>> random_cvec(RandomStream& rng, std::size_t n) {
  std::vector<std::complex<double>> v(n);
  for (auto& x : v) x = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
  return v;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("dot_rev matches a plain reversed dot product") {
  RandomStream rng(42);
  for (const std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 257u}) {
    const auto x = random_vec(rng, n);
    const auto y = random_vec(rng, n);
    double ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) ref += x[i] * y[n - 1 - i];
    const double got = kernels::dot_rev(x.data(), y.data(), n);
    CHECK(got == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("cdot_rev matches a plain complex convolution coefficient") {
  RandomStream rng(43);
  for (const std::size_t n : {1u, 2u, 5u, 33u, 128u}) {
    const auto x = random_cvec(rng, n);
    const auto y = random_cvec(rng, n);
    std::complex<double> ref{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) ref += x[i] * y[n - 1 - i];
    const auto got = kernels::cdot_rev(x.data(), y.data(), n);
    CHECK(std::abs(got - ref) < 1e-12 * (1.0 + std::abs(ref)));
  }
}

TEST_CASE("weighted_select equals a sequential scan") {
  RandomStream rng(44);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform_int(1, 40));
    std::vector<double> w(m + 1), h(m + 1);
    for (std::size_t k = 1; k <= m; ++k) w[k] = rng.uniform(0.01, 1.0);
    for (std::size_t i = 0; i <= m; ++i) h[i] = rng.uniform(0.01, 1.0);
    double total = 0.0;
    for (std::size_t k = 1; k <= m; ++k) total += w[k] * h[m - k];
    const double target = rng.uniform() * total;
    const std::size_t got = kernels::weighted_select(w.data(), h.data(), m, target);
    // reference: first prefix of the same blocked sums to reach the target
    CHECK(got >= 1);
    CHECK(got <= m);
    double below = 0.0;
    for (std::size_t k = 1; k < got; ++k) below += w[k] * h[m - k];
    double above = below + w[got] * h[m - got];
    // order-of-summation differences allow a tiny slack at the boundary
    CHECK(below <= target + 1e-9 * total);
    if (got < m) CHECK(above >= target - 1e-9 * total);
  }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("scalar and AVX2 paths are bit-identical") {
  if (kernels::active_isa() != kernels::Isa::Avx2) return;  // host w/o AVX2
  IsaGuard guard;
  RandomStream rng(45);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 300));
    const auto x = random_vec(rng, n);
    const auto y = random_vec(rng, n);
    const auto xc = random_cvec(rng, n);
    const auto yc = random_cvec(rng, n);

    kernels::force_isa(kernels::Isa::Scalar);
    const double d_s = kernels::dot_rev(x.data(), y.data(), n);
    const auto c_s = kernels::cdot_rev(xc.data(), yc.data(), n);
    kernels::force_isa(kernels::Isa::Avx2);
    const double d_v = kernels::dot_rev(x.data(), y.data(), n);
    const auto c_v = kernels::cdot_rev(xc.data(), yc.data(), n);

    CHECK(d_s == d_v);
    CHECK(c_s.real() == c_v.real());
    CHECK(c_s.imag() == c_v.imag());

    std::vector<double> w(n + 1), h(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      w[k] = rng.uniform(0.01, 1.0);
      h[k] = rng.uniform(0.01, 1.0);
    }
    double total = 0.0;
    for (std::size_t k = 1; k <= n; ++k) total += w[k] * h[n - k];
    for (int t = 0; t < 8; ++t) {
      const double target = rng.uniform() * total;
      kernels::force_isa(kernels::Isa::Scalar);
      const auto sel_s = kernels::weighted_select(w.data(), h.data(), n, target);
      kernels::force_isa(kernels::Isa::Avx2);
      const auto sel_v = kernels::weighted_select(w.data(), h.data(), n, target);
      CHECK(sel_s == sel_v);
    }
  }
}
#endif

}  // TEST_SUITE
