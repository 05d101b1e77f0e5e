#pragma once

#include <cstdint>

namespace permstat {

// Deterministic random stream: xoshiro256++ seeded through splitmix64 from a
// (seed, stream_id) pair. The integer stream is bit-exact across platforms;
// disjoint stream_ids give statistically independent streams, which is how
// samples are parallelized.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t next_u64();
  double uniform();                      // [0, 1), 53-bit
  double uniform(double a, double b);    // [a, b)
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive
  bool bernoulli(double p);
  std::int64_t poisson(double mean);

  // Derived stream for replica i; deterministic in (seed, stream_id, i).
  RandomStream substream(std::uint64_t i) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t s_[4];
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

}  // namespace permstat
