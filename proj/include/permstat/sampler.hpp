#pragma once

#include <map>
#include <utility>
#include <vector>

#include "permstat/rng.hpp"
#include "permstat/series.hpp"

namespace permstat {

// Multiplicity record of a permutation's cycle lengths: sum_k k C_k = n.
struct CycleType {
  long n = 0;
  std::map<long, long> counts;  // k -> C_k, positive entries only

  long total_cycles() const;
  void add(long k, long c = 1);
  bool operator==(const CycleType&) const = default;
};

// Sequential cycle-length sampler for P_Theta. The first cycle length at
// remaining size m has mass theta_k h_{m-k} / (m h_m); removing it leaves an
// independent copy of the measure on S_{m-k}. Weight and h tables are
// precomputed once (scaled by the HTable's rho; the law only sees ratios) and
// shared across samples, the per-draw scan runs through the SIMD kernels.
class CycleSampler {
 public:
  CycleSampler(const ThetaSequence& theta, const HTable& h, long n);

  long capacity() const { return capacity_; }
  CycleType sample(long n, RandomStream& rng) const;

 private:
  long capacity_;
  std::vector<double> w_;  // w[k] = theta_k rho^k, k = 1..capacity
  std::vector<double> h_;  // scaled h_0..h_capacity
};

CycleType sample_cycle_type(const ThetaSequence& theta, const HTable& h, long n,
                            RandomStream& rng);

// E[C_k] = (theta_k / k) h_{n-k} / h_n for k <= n, else 0.
double expected_cycle_count(const ThetaSequence& theta, const HTable& h, long n,
                            long k);

// Feller coupling for the classical Ewens measure: independent indicators
// xi_i ~ Bernoulli(theta/(theta+i-1)) read off as spacings. c is the exact
// ESF(theta) cycle type of S_n; p[k] counts the complete k-spacings of the
// indicator sequence extended to n + 50*ceil(theta), approximating the
// independent Poisson(theta/k) limits on the same probability space.
struct FellerSample {
  CycleType c;
  std::map<long, long> p;
  double tail_bound_k1;  // expected k=1 spacings lost to truncation
};

FellerSample feller_coupling(double theta, long n, RandomStream& rng);

// Psi_N(k) = C(N-k+theta-1, N-k) / C(N+theta-1, N), via log-gamma.
double psi_n(double theta, long n, long k);

// Independent P_k ~ Poisson(theta_k r^k / k), k = 1..k_max (index k).
std::vector<long> sample_poisson_field(const ThetaSequence& theta, double r,
                                       long k_max, RandomStream& rng);

// Law of the i.i.d. unit-circle marks z_j. Each k-cycle of the wreath product
// carries a mark distributed as the k-fold product of z draws.
class ZLaw {
 public:
  enum class Kind { PointMassOne, UniformCircle, DiscreteAtoms };

  static ZLaw point_mass_one();
  static ZLaw uniform_circle();
  static ZLaw discrete_atoms(std::vector<std::pair<double, double>> atoms);

  Kind kind() const { return kind_; }
  const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }

  Complex sample(RandomStream& rng) const;
  // One draw of Z_{k,m} = prod_{j<=k} z_j; uses the closed product law where
  // one exists (point mass, uniform, a single atom).
  Complex sample_product(long k, RandomStream& rng) const;

  // Exact law of the k-fold product for atom laws, as (angle, prob) pairs.
  // Throws std::domain_error for the uniform law and when the support blows up.
  std::vector<std::pair<double, double>> product_law(long k) const;

 private:
  Kind kind_ = Kind::PointMassOne;
  std::vector<std::pair<double, double>> atoms_;
};

using MarkTable = std::map<std::pair<long, long>, Complex>;  // (k, m) -> Z_{k,m}

MarkTable sample_wreath_marks(const CycleType& c, const ZLaw& z,
                              RandomStream& rng);

}  // namespace permstat
