// AVX2/FMA kernel variants. Compiled with -mavx2 -mfma; only reached when
// runtime detection reports both features. Each function reproduces the
// scalar reference arithmetic operation for operation (see kernels.cpp).

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace permstat::kernels::detail {

double dot_rev_avx2(const double* x, const double* y, std::size_t n) {
  __m256d accv = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    __m256d yv = _mm256_loadu_pd(y + (n - 4 - i));
    yv = _mm256_permute4x64_pd(yv, 0x1B);  // lane j <- y[n-1-i-j]
    accv = _mm256_fmadd_pd(xv, yv, accv);
  }
  alignas(32) double acc[4];
  _mm256_store_pd(acc, accv);
  for (std::size_t t = 0; i < n; ++i, ++t)
    acc[t] = std::fma(x[i], y[n - 1 - i], acc[t]);
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

std::complex<double> cdot_rev_avx2(const std::complex<double>* xc,
                                   const std::complex<double>* yc,
                                   std::size_t n) {
  const double* x = reinterpret_cast<const double*>(xc);
  const double* y = reinterpret_cast<const double*>(yc);
  __m256d accv = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(x + 2 * i);  // [ar0 ai0 ar1 ai1]
    // y[n-1-i] and y[n-2-i] as adjacent pairs, then swap the 128-bit halves.
    __m256d b = _mm256_loadu_pd(y + 2 * (n - 2 - i));
    b = _mm256_permute2f128_pd(b, b, 0x01);
    const __m256d bre = _mm256_movedup_pd(b);         // [br br ...]
    const __m256d bim = _mm256_permute_pd(b, 0xF);    // [bi bi ...]
    const __m256d asw = _mm256_permute_pd(a, 0x5);    // [ai ar ...]
    const __m256d t1 = _mm256_mul_pd(a, bre);
    const __m256d t2 = _mm256_mul_pd(asw, bim);
    accv = _mm256_add_pd(accv, _mm256_addsub_pd(t1, t2));
  }
  alignas(32) double acc[4];
  _mm256_store_pd(acc, accv);
  if (i < n) {
    const double ar = x[2 * i], ai = x[2 * i + 1];
    const double br = y[2 * (n - 1 - i)], bi = y[2 * (n - 1 - i) + 1];
    const double t1r = ar * br, t1i = ai * br;
    const double t2r = ai * bi, t2i = ar * bi;
    acc[0] += (t1r - t2r);
    acc[1] += (t1i + t2i);
  }
  return {acc[0] + acc[2], acc[1] + acc[3]};
}

std::size_t weighted_select_avx2(const double* w, const double* h,
                                 std::size_t m, double target) {
  double acc = 0.0;
  std::size_t k = 1;
  alignas(32) double p[4];
  for (; k + 3 <= m; k += 4) {
    const __m256d wv = _mm256_loadu_pd(w + k);
    __m256d hv = _mm256_loadu_pd(h + (m - k - 3));
    hv = _mm256_permute4x64_pd(hv, 0x1B);  // lane j <- h[m-k-j]
    _mm256_store_pd(p, _mm256_mul_pd(wv, hv));
    const double bs = (p[0] + p[1]) + (p[2] + p[3]);
    if (acc + bs >= target) {
      if ((acc += p[0]) >= target) return k;
      if ((acc += p[1]) >= target) return k + 1;
      if ((acc += p[2]) >= target) return k + 2;
      if ((acc += p[3]) >= target) return k + 3;
      continue;
    }
    acc += bs;
  }
  for (; k <= m; ++k) {
    acc += w[k] * h[m - k];
    if (acc >= target) return k;
  }
  return m;
}

}  // namespace permstat::kernels::detail

#endif  // x86_64
