#include "permstat/kernels.hpp"

#include <atomic>
#include <cmath>

#include "kernels_impl.hpp"

namespace permstat::kernels {
namespace detail {

// Blocking contract: four independent accumulator lanes, lane j taking the
// elements with i % 4 == j of the main run, the tail appended lane by lane,
// and the final combine ((l0+l1)+(l2+l3)). dot_rev fuses each multiply-add
// (std::fma); cdot_rev keeps multiplies and adds separate. The AVX2 TU
// mirrors this exactly, so both paths round identically.

double dot_rev_scalar(const double* x, const double* y, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc[0] = std::fma(x[i], y[n - 1 - i], acc[0]);
    acc[1] = std::fma(x[i + 1], y[n - 2 - i], acc[1]);
    acc[2] = std::fma(x[i + 2], y[n - 3 - i], acc[2]);
    acc[3] = std::fma(x[i + 3], y[n - 4 - i], acc[3]);
  }
  for (std::size_t t = 0; i < n; ++i, ++t)
    acc[t] = std::fma(x[i], y[n - 1 - i], acc[t]);
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

std::complex<double> cdot_rev_scalar(const std::complex<double>* x,
                                     const std::complex<double>* y,
                                     std::size_t n) {
  // Lane layout matches one __m256d holding two complex values.
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  auto step = [&](std::size_t idx, int lane) {
    const double ar = x[idx].real(), ai = x[idx].imag();
    const double br = y[n - 1 - idx].real(), bi = y[n - 1 - idx].imag();
    const double t1r = ar * br, t1i = ai * br;
    const double t2r = ai * bi, t2i = ar * bi;
    acc[2 * lane] += (t1r - t2r);
    acc[2 * lane + 1] += (t1i + t2i);
  };
  for (; i + 2 <= n; i += 2) {
    step(i, 0);
    step(i + 1, 1);
  }
  if (i < n) step(i, 0);
  return {acc[0] + acc[2], acc[1] + acc[3]};
}

std::size_t weighted_select_scalar(const double* w, const double* h,
                                   std::size_t m, double target) {
  double acc = 0.0;
  std::size_t k = 1;
  for (; k + 3 <= m; k += 4) {
    const double p0 = w[k] * h[m - k];
    const double p1 = w[k + 1] * h[m - k - 1];
    const double p2 = w[k + 2] * h[m - k - 2];
    const double p3 = w[k + 3] * h[m - k - 3];
    const double bs = (p0 + p1) + (p2 + p3);
    if (acc + bs >= target) {
      if ((acc += p0) >= target) return k;
      if ((acc += p1) >= target) return k + 1;
      if ((acc += p2) >= target) return k + 2;
      if ((acc += p3) >= target) return k + 3;
      continue;  // block sum crossed only through its own rounding
    }
    acc += bs;
  }
  for (; k <= m; ++k) {
    acc += w[k] * h[m - k];
    if (acc >= target) return k;
  }
  return m;
}

}  // namespace detail

namespace {

struct Table {
  double (*dot_rev)(const double*, const double*, std::size_t);
  std::complex<double> (*cdot_rev)(const std::complex<double>*,
                                   const std::complex<double>*, std::size_t);
  std::size_t (*weighted_select)(const double*, const double*, std::size_t,
                                 double);
  Isa isa;
};

constexpr Table kScalar{detail::dot_rev_scalar, detail::cdot_rev_scalar,
                        detail::weighted_select_scalar, Isa::Scalar};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Table kAvx2{detail::dot_rev_avx2, detail::cdot_rev_avx2,
                      detail::weighted_select_avx2, Isa::Avx2};
#endif

const Table* detect() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return &kAvx2;
#endif
  return &kScalar;
}

std::atomic<const Table*> g_table{nullptr};

const Table* table() {
  const Table* t = g_table.load(std::memory_order_acquire);
  if (!t) {
    t = detect();
    g_table.store(t, std::memory_order_release);
  }
  return t;
}

}  // namespace

Isa active_isa() { return table()->isa; }

const char* isa_name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

void force_isa(std::optional<Isa> isa) {
  if (!isa) {
    g_table.store(detect(), std::memory_order_release);
    return;
  }
#if defined(__x86_64__) || defined(_M_X64)
  g_table.store(*isa == Isa::Avx2 ? &kAvx2 : &kScalar,
                std::memory_order_release);
#else
  g_table.store(&kScalar, std::memory_order_release);
#endif
}

double dot_rev(const double* x, const double* y, std::size_t n) {
  return table()->dot_rev(x, y, n);
}

std::complex<double> cdot_rev(const std::complex<double>* x,
                              const std::complex<double>* y, std::size_t n) {
  return table()->cdot_rev(x, y, n);
}

std::size_t weighted_select(const double* w, const double* h, std::size_t m,
                            double target) {
  return table()->weighted_select(w, h, m, target);
}

}  // namespace permstat::kernels
