#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "permstat/theta.hpp"

namespace permstat {

// Partition of n, parts non-increasing. The multiplicity profile C_k (number
// of parts equal to k) is what the weighted measures see.
struct Partition {
  std::vector<int> parts;

  int n() const;
  int length() const { return static_cast<int>(parts.size()); }
  std::vector<std::pair<int, int>> multiplicities() const;  // (k, C_k), C_k > 0
};

// Exhaustive enumeration is for desk-scale ground truth only.
inline constexpr int kPartitionCap = 45;  // p(45) = 89134

// Enumerates partitions of n in reverse-lexicographic order:
// (n), (n-1,1), ..., (1^n). n = 0 yields the single empty partition.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(int n);
  bool next(Partition& out);  // false once exhausted

 private:
  int n_;
  bool first_;
  bool done_;
  std::vector<int> x_;
  int m_, h_;
};

void for_each_partition(int n, const std::function<void(const Partition&)>& fn);

long partition_count(int n);

// z_lambda = prod_k k^{C_k} C_k!; the conjugacy class of type lambda has
// n!/z_lambda elements.
double z_of(const Partition& lambda);

// sum over lambda |- n of (1/z_lambda) prod_m theta_{lambda_m}; the brute
// force route to the normalization constant.
double oracle_h(const ThetaSequence& theta, int n);

// E_Theta[u] = (1/h_n) sum_lambda (1/z_lambda) (prod_m theta_{lambda_m}) u(lambda),
// with h_n computed by the same sum at u = 1.
Complex expect_class_function(const ThetaSequence& theta, int n,
                              const std::function<Complex(const Partition&)>& u);

}  // namespace permstat
