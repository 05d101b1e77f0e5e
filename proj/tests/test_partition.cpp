#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "permstat/partition.hpp"
#include "permstat/rng.hpp"
#include "permstat/series.hpp"

using permstat::Complex;
using permstat::Partition;

namespace {

// Euler's pentagonal-number recurrence, independent of the enumerator.
std::vector<long> partition_counts_pentagonal(int n_max) {
  std::vector<long> p(static_cast<std::size_t>(n_max) + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    long total = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > n && g2 > n) break;
      const long sign = (k % 2 == 1) ? 1 : -1;
      if (g1 <= n) total += sign * p[static_cast<std::size_t>(n - g1)];
      if (g2 <= n) total += sign * p[static_cast<std::size_t>(n - g2)];
    }
    p[static_cast<std::size_t>(n)] = total;
  }
  return p;
}

}  // namespace

TEST_SUITE("partition") {

TEST_CASE("enumeration counts: p(0)=1, p(5)=7, p(20)=627, pentagonal check") {
  CHECK(permstat::partition_count(0) == 1);
  CHECK(permstat::partition_count(5) == 7);
  CHECK(permstat::partition_count(20) == 627);
  const auto ref = partition_counts_pentagonal(30);
  for (int n = 0; n <= 30; ++n)
    CHECK(permstat::partition_count(n) == ref[static_cast<std::size_t>(n)]);
}

TEST_CASE("enumeration order is reverse-lexicographic and well formed") {
  std::vector<std::vector<int>> seen;
  permstat::for_each_partition(6, [&](const Partition& la) {
    CHECK(la.n() == 6);
    CHECK(std::is_sorted(la.parts.rbegin(), la.parts.rend()));
    seen.push_back(la.parts);
  });
  CHECK(seen.front() == std::vector<int>{6});
  CHECK(seen.back() == std::vector<int>{1, 1, 1, 1, 1, 1});
  for (std::size_t i = 1; i < seen.size(); ++i)
    CHECK(std::lexicographical_compare(seen[i].begin(), seen[i].end(),
                                       seen[i - 1].begin(), seen[i - 1].end()));
}

TEST_CASE("enumeration cap is enforced") {
  CHECK_THROWS_AS(permstat::PartitionEnumerator(46), std::invalid_argument);
  CHECK_THROWS_AS(permstat::PartitionEnumerator(-1), std::invalid_argument);
}

TEST_CASE("z_of: direct values and the conjugacy-class identity") {
  Partition ones;
  ones.parts = {1, 1, 1};
  CHECK(permstat::z_of(ones) == doctest::Approx(6.0));
  Partition two;
  two.parts = {2};
  CHECK(permstat::z_of(two) == doctest::Approx(2.0));

  // sum over lambda |- n of n!/z_lambda = n!  <=>  sum 1/z = 1
  for (int n = 1; n <= 10; ++n) {
    double total = 0.0;
    permstat::for_each_partition(
        n, [&](const Partition& la) { total += 1.0 / permstat::z_of(la); });
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("expect_class_function: normalization and fixed points") {
  const auto theta = permstat::ewens(1.0);
  for (int n = 0; n <= 8; ++n) {
    const Complex one = permstat::expect_class_function(
        theta, n, [](const Partition&) { return Complex{1.0, 0.0}; });
    CHECK(std::abs(one - Complex{1.0, 0.0}) < 1e-12);
  }

  // expected fixed points of a uniform permutation of S_4 is 1; cross-check
  // against the direct average over all 24 permutations
  const Complex via_oracle = permstat::expect_class_function(
      theta, 4, [](const Partition& la) {
        const long c1 = std::count(la.parts.begin(), la.parts.end(), 1);
        return Complex{static_cast<double>(c1), 0.0};
      });
  std::vector<int> perm{0, 1, 2, 3};
  long fixed_total = 0, count = 0;
  do {
    for (int i = 0; i < 4; ++i) fixed_total += (perm[static_cast<std::size_t>(i)] == i);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(count == 24);
  const double direct = static_cast<double>(fixed_total) / 24.0;
  CHECK(via_oracle.real() == doctest::Approx(direct).epsilon(1e-12));
  CHECK(via_oracle.real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("expect_class_function: P[(1,1)] = theta/(theta+1) at n = 2") {
  for (const double tv : {0.5, 1.0, 2.5}) {
    const auto theta = permstat::ewens(tv);
    const Complex p = permstat::expect_class_function(
        theta, 2, [](const Partition& la) {
          return la.parts == std::vector<int>{1, 1} ? Complex{1.0, 0.0}
                                                    : Complex{0.0, 0.0};
        });
    CHECK(p.real() == doctest::Approx(tv / (tv + 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("oracle h agrees with compute_h for random weights (property)") {
  permstat::RandomStream rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> table(20);
    for (auto& t : table) t = rng.uniform(0.2, 2.0);
    const auto theta = permstat::theta_from_table("rand", table);
    const auto h = permstat::compute_h(theta, 20);
    for (int n = 0; n <= 20; ++n) {
      const double oracle = permstat::oracle_h(theta, n);
      CHECK(std::abs(h.scaled(n) / oracle - 1.0) < 1e-10);
    }
  }
}

}  // TEST_SUITE
