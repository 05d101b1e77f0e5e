#include "permstat/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace permstat {
namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t st = seed ^ (0xA3EC647659359ACDULL * (stream_id + 1));
  s_[0] = splitmix64(st);
  s_[1] = splitmix64(st);
  s_[2] = splitmix64(st);
  s_[3] = splitmix64(st);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double a, double b) {
  return a + (b - a) * uniform();
}

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

bool RandomStream::bernoulli(double p) { return uniform() < p; }

std::int64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson: negative mean");
  if (mean == 0.0) return 0;
  // Additivity split keeps the inversion loop short and stays deterministic.
  if (mean > 30.0) return poisson(mean / 2) + poisson(mean - mean / 2);
  const double u = uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::int64_t k = 0;
  while (u >= cdf && k < 400) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

RandomStream RandomStream::substream(std::uint64_t i) const {
  std::uint64_t st = stream_id_ ^ (i * 0x9E3779B97F4A7C15ULL);
  return RandomStream(seed_, splitmix64(st));
}

}  // namespace permstat
