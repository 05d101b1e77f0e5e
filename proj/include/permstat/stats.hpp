#pragma once

#include <functional>
#include <map>
#include <vector>

namespace permstat {

double normal_cdf(double x);

// Regularized incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a), a > 0, x >= 0.
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with df degrees of freedom.
double chi2_sf(double stat, double df);

// Asymptotic Kolmogorov survival: P[sup |B(t)| > lambda] = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_sf(double lambda);

// One-sample KS statistic of samples against a continuous CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

struct KsTest {
  double statistic = 0.0;
  double p_value = 0.0;
};

// Two-sample KS with the Stephens small-sample adjustment; with heavily tied
// (lattice) data the p-value is conservative.
KsTest two_sample_ks(std::vector<double> a, std::vector<double> b);

struct Chi2Test {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 0.0;
};

// Pearson goodness of fit of observed counts against category probabilities.
Chi2Test chi2_gof(const std::vector<long>& observed,
                  const std::vector<double>& probs);

// Two-sample chi-square homogeneity test over shared categories.
Chi2Test chi2_two_sample(const std::vector<long>& a, const std::vector<long>& b);

double poisson_pmf(double lambda, long j);

// pmf of P_1 + 2 P_2 (P_k independent Poisson with means m1, m2) on 0..j_max.
std::vector<double> pmf_p1_plus_2p2(double m1, double m2, long j_max);

// Total variation distance between empirical integer counts and a pmf; mass
// of the pmf beyond the table contributes in full.
double tv_distance(const std::map<long, long>& counts, long total,
                   const std::vector<double>& pmf);

}  // namespace permstat
