#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "permstat/partition.hpp"
#include "permstat/sampler.hpp"
#include "permstat/stats.hpp"

using permstat::Complex;
using permstat::CycleSampler;
using permstat::CycleType;
using permstat::RandomStream;
using permstat::ZLaw;

namespace {

std::vector<int> sorted_parts(const CycleType& c) {
  std::vector<int> parts;
  for (auto it = c.counts.rbegin(); it != c.counts.rend(); ++it)
    for (long m = 0; m < it->second; ++m)
      parts.push_back(static_cast<int>(it->first));
  return parts;
}

}  // namespace

TEST_SUITE("sampler") {

TEST_CASE("n = 1 always yields a fixed point; sum k C_k = n") {
  const auto theta = permstat::ewens(0.7);
  const auto h = permstat::compute_h(theta, 64);
  const CycleSampler sampler(theta, h, 64);
  RandomStream rng(31);
  for (int i = 0; i < 20; ++i) {
    const CycleType one = sampler.sample(1, rng);
    CHECK(one.n == 1);
    CHECK(one.counts.at(1) == 1);
    const CycleType c = sampler.sample(64, rng);
    long total = 0;
    for (const auto& [k, ck] : c.counts) total += k * ck;
    CHECK(total == 64);
    CHECK(c.n == 64);
    CHECK(c.total_cycles() >= 1);
  }
}

TEST_CASE("determinism: identical streams give identical samples") {
  const auto theta = permstat::geometric_ewens(1.0, 0.5);
  const auto h = permstat::compute_h(theta, 40, 2.0);
  const CycleSampler sampler(theta, h, 40);
  RandomStream a(99, 5), b(99, 5);
  for (int i = 0; i < 50; ++i) CHECK(sampler.sample(40, a) == sampler.sample(40, b));
  RandomStream c(99, 6);
  bool all_equal = true;
  RandomStream a2(99, 5);
  for (int i = 0; i < 50; ++i)
    all_equal = all_equal && (sampler.sample(40, a2) == sampler.sample(40, c));
  CHECK(!all_equal);
}

TEST_CASE("small-n laws: P[(1,1)] = theta/(theta+1), P[5-cycle] = 1/5") {
  {
    const double tv = 1.7;
    const auto theta = permstat::ewens(tv);
    const auto h = permstat::compute_h(theta, 2);
    const CycleSampler sampler(theta, h, 2);
    RandomStream rng(32);
    long fixed2 = 0;
    const long draws = 200000;
    for (long i = 0; i < draws; ++i)
      if (sampler.sample(2, rng).counts.count(1)) ++fixed2;
    const double p = tv / (tv + 1.0);
    const double se = std::sqrt(p * (1 - p) / static_cast<double>(draws));
    CHECK(std::abs(static_cast<double>(fixed2) / draws - p) < 4 * se);
  }
  {
    const auto theta = permstat::ewens(1.0);
    const auto h = permstat::compute_h(theta, 5);
    const CycleSampler sampler(theta, h, 5);
    RandomStream rng(33);
    long five = 0;
    const long draws = 200000;
    for (long i = 0; i < draws; ++i)
      if (sampler.sample(5, rng).counts.count(5)) ++five;
    const double se = std::sqrt(0.2 * 0.8 / static_cast<double>(draws));
    CHECK(std::abs(static_cast<double>(five) / draws - 0.2) < 4 * se);
  }
}

TEST_CASE("cycle-type law matches the oracle for each built-in (chi-square)") {
  for (const auto& theta :
       {permstat::ewens(1.0), permstat::ewens(1.5),
        permstat::geometric_ewens(1.0, 0.5), permstat::perturbed_ewens(1.0, 1.0, 1.0)}) {
    const int n = 8;
    std::map<std::vector<int>, std::size_t> index;
    std::vector<double> probs;
    {
      double hsum = 0.0;
      std::vector<double> weights;
      permstat::for_each_partition(n, [&](const permstat::Partition& la) {
        double w = 1.0;
        for (int part : la.parts) w *= theta.theta(part);
        w /= permstat::z_of(la);
        index[la.parts] = weights.size();
        weights.push_back(w);
        hsum += w;
      });
      for (double w : weights) probs.push_back(w / hsum);
    }
    const auto h = permstat::compute_h(theta, n, theta.descriptor()->r);
    const CycleSampler sampler(theta, h, n);
    std::vector<long> counts(probs.size(), 0);
    RandomStream rng(34);
    const long draws = 200000;
    for (long i = 0; i < draws; ++i)
      ++counts[index.at(sorted_parts(sampler.sample(n, rng)))];
    const auto test = permstat::chi2_gof(counts, probs);
    CHECK(test.p_value > 1e-3);
  }
}

TEST_CASE("expected_cycle_count: boundary, uniform case, Monte Carlo") {
  const auto theta = permstat::ewens(1.0);
  const auto h = permstat::compute_h(theta, 50);
  CHECK(permstat::expected_cycle_count(theta, h, 10, 11) == 0.0);
  for (long k = 1; k <= 50; ++k)
    CHECK(permstat::expected_cycle_count(theta, h, 50, k) ==
          doctest::Approx(1.0 / static_cast<double>(k)).epsilon(1e-12));

  const auto theta2 = permstat::ewens(1.5);
  const auto h2 = permstat::compute_h(theta2, 50);
  const CycleSampler sampler(theta2, h2, 50);
  RandomStream rng(35);
  const long draws = 100000;
  std::map<long, double> mean;
  for (long i = 0; i < draws; ++i) {
    const CycleType c = sampler.sample(50, rng);
    for (const auto& [k, ck] : c.counts) mean[k] += static_cast<double>(ck);
  }
  for (const long k : {1L, 2L, 5L, 10L}) {
    const double expect = permstat::expected_cycle_count(theta2, h2, 50, k);
    const double got = mean[k] / static_cast<double>(draws);
    // C_k is roughly Poisson(theta/k): var ~ mean
    const double se = std::sqrt(expect / static_cast<double>(draws));
    CHECK(std::abs(got - expect) < 4 * se + 1e-9);
  }
}

TEST_CASE("expected_cycle_count works on scaled tables") {
  const auto theta = permstat::geometric_ewens(1.0, 0.5);
  const auto h = permstat::compute_h(theta, 30, 2.0);
  // closed form: h_N = q^N, so E[C_k] = (theta_k/k) q^{N-k}/q^N = 2^k q^k / k...
  // with theta_k = q^k: E[C_k] = q^k/k * q^{-k} = 1/k
  for (long k = 1; k <= 30; ++k)
    CHECK(permstat::expected_cycle_count(theta, h, 30, k) ==
          doctest::Approx(1.0 / static_cast<double>(k)).epsilon(1e-10));
}

TEST_CASE("feller_coupling: rejects bad input, psi values, P_k means") {
  RandomStream rng(36);
  CHECK_THROWS_AS(permstat::feller_coupling(0.0, 10, rng),
                  std::invalid_argument);

  // theta = 1: Psi_N(k) = 1
  for (const long k : {1L, 5L, 10L})
    CHECK(permstat::psi_n(1.0, 10, k) == doctest::Approx(1.0).epsilon(1e-12));
  // theta = 2: Psi is <= 1 and decreasing in k
  double prev = 1.5;
  for (long k = 1; k <= 20; ++k) {
    const double v = permstat::psi_n(2.0, 20, k);
    CHECK(v <= 1.0 + 1e-12);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  // theta = 1/2, k = N: Psi_N(N) = 1/C(N - 1/2, N)
  const double psi = permstat::psi_n(0.5, 40, 40);
  const double binom = std::exp(std::lgamma(40.0 + 0.5) -
                                std::lgamma(41.0) - std::lgamma(0.5));
  CHECK(psi == doctest::Approx(1.0 / binom).epsilon(1e-10));

  // empirical mean of p[2] ~ theta/2
  const double theta = 1.0;
  double p2 = 0.0;
  const long runs = 50000;
  for (long i = 0; i < runs; ++i) {
    const auto fs = permstat::feller_coupling(theta, 200, rng);
    const auto it = fs.p.find(2);
    p2 += it == fs.p.end() ? 0.0 : static_cast<double>(it->second);
  }
  p2 /= static_cast<double>(runs);
  const double se = std::sqrt(0.5 / static_cast<double>(runs));
  CHECK(std::abs(p2 - 0.5) < 4 * se + 0.01);
}

TEST_CASE("feller_coupling marginal equals the sampler law at n = 6") {
  const int n = 6;
  const auto theta = permstat::ewens(1.0);
  std::map<std::vector<int>, std::size_t> index;
  std::size_t count = 0;
  permstat::for_each_partition(
      n, [&](const permstat::Partition& la) { index[la.parts] = count++; });
  const auto h = permstat::compute_h(theta, n);
  const CycleSampler sampler(theta, h, n);
  std::vector<long> a(count, 0), b(count, 0);
  RandomStream rng(37);
  for (long i = 0; i < 100000; ++i) {
    ++a[index.at(sorted_parts(permstat::feller_coupling(1.0, n, rng).c))];
    ++b[index.at(sorted_parts(sampler.sample(n, rng)))];
  }
  CHECK(permstat::chi2_two_sample(a, b).p_value > 1e-3);
}

TEST_CASE("poisson field: means and variances") {
  const auto theta = permstat::ewens(1.0);
  RandomStream rng(38);
  const long runs = 100000;
  std::vector<double> sum(6, 0.0), sumsq(6, 0.0);
  for (long i = 0; i < runs; ++i) {
    const auto p = permstat::sample_poisson_field(theta, 0.5, 5, rng);
    for (long k = 1; k <= 5; ++k) {
      sum[static_cast<std::size_t>(k)] += static_cast<double>(p[k]);
      sumsq[static_cast<std::size_t>(k)] +=
          static_cast<double>(p[k]) * static_cast<double>(p[k]);
    }
  }
  for (long k = 1; k <= 5; ++k) {
    const double mean = std::pow(0.5, static_cast<double>(k)) /
                        static_cast<double>(k);
    const double got_mean = sum[static_cast<std::size_t>(k)] / runs;
    const double got_var =
        sumsq[static_cast<std::size_t>(k)] / runs - got_mean * got_mean;
    const double se = std::sqrt(mean / runs);
    CHECK(std::abs(got_mean - mean) < 5 * se + 1e-9);
    CHECK(std::abs(got_var - mean) < 10 * se + 1e-3);
  }
  // k = 4, r = 1/2: mean 2^-4/4
  CHECK(std::abs(sum[4] / runs - 0.015625) < 0.002);
}

TEST_CASE("zlaw: validation, marks, product laws") {
  CHECK_THROWS_AS(ZLaw::discrete_atoms({{0.0, 0.7}, {1.0, 0.4}}),
                  std::invalid_argument);

  RandomStream rng(39);
  const ZLaw point = ZLaw::point_mass_one();
  CycleType c;
  c.add(3, 2);
  c.add(1, 1);
  const auto marks = permstat::sample_wreath_marks(c, point, rng);
  CHECK(marks.size() == 3);
  for (const auto& [slot, mark] : marks) CHECK(mark == Complex{1.0, 0.0});

  // atom at pi: the k-cycle mark is (-1)^k
  const ZLaw minus = ZLaw::discrete_atoms({{std::numbers::pi, 1.0}});
  CHECK(std::abs(minus.sample_product(3, rng) - Complex{-1.0, 0.0}) < 1e-12);
  CHECK(std::abs(minus.sample_product(4, rng) - Complex{1.0, 0.0}) < 1e-12);

  // uniform marks stay on the circle
  const ZLaw uniform = ZLaw::uniform_circle();
  for (int i = 0; i < 100; ++i)
    CHECK(std::abs(std::abs(uniform.sample_product(7, rng)) - 1.0) < 1e-12);

  // two-atom product law: binomial weights on angle sums
  const ZLaw two = ZLaw::discrete_atoms({{0.0, 0.25}, {1.0, 0.75}});
  const auto law = two.product_law(3);
  REQUIRE(law.size() == 4);
  double total = 0.0;
  for (const auto& [angle, prob] : law) total += prob;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(law[0].second == doctest::Approx(0.25 * 0.25 * 0.25));
  CHECK(law[3].second == doctest::Approx(0.75 * 0.75 * 0.75));
  CHECK_THROWS_AS(ZLaw::uniform_circle().product_law(2), std::domain_error);
}

TEST_CASE("rng: poisson sampler matches its law") {
  RandomStream rng(40);
  for (const double mean : {0.3, 2.0, 45.0}) {
    const long runs = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < runs; ++i) {
      const double v = static_cast<double>(rng.poisson(mean));
      sum += v;
      sumsq += v * v;
    }
    const double got_mean = sum / runs;
    const double got_var = sumsq / runs - got_mean * got_mean;
    const double se = std::sqrt(mean / runs);
    CHECK(std::abs(got_mean - mean) < 5 * se);
    CHECK(std::abs(got_var - mean) < 0.05 * mean + 10 * se);
  }
}

}  // TEST_SUITE
