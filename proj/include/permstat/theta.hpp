#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace permstat {

using Complex = std::complex<double>;

enum class SingularityClass { F, EF, Multi };

struct SingularityBranch {
  Complex xi;       // singular point, |xi| = r
  double vartheta;
  Complex bigk;
};

// Certified singular behaviour of g at its radius of convergence r:
//   class F:  g(t) = vartheta*log(1/(1-t/r)) + K + O(t-r)
//   class eF: g(t) = vartheta*log(1/(1-t/r)) + g0(t), [t^N] g0 = O(r^-N N^-1-gamma)
//   Multi:    one (vartheta_i, K_i) expansion per point xi_i on |t| = r
struct SingularityDescriptor {
  SingularityClass cls = SingularityClass::F;
  double r = 1.0;
  double vartheta = 0.0;
  Complex bigk{0.0, 0.0};                  // class F
  double gamma = 1.0;                      // class eF
  Complex g0_at_r{0.0, 0.0};               // class eF
  std::vector<SingularityBranch> branches;  // class Multi

  static SingularityDescriptor class_f(double r, double vartheta, Complex k);
  static SingularityDescriptor class_ef(double r, double vartheta,
                                        double gamma, Complex g0_at_r);
  static SingularityDescriptor multi(double r,
                                     std::vector<SingularityBranch> branches);
};

// A weight sequence theta_k > 0 together with optional certified singularity
// metadata and, when available, a closed form for g(z) = sum theta_k z^k / k.
// Descriptors are supplied by the model constructors, never inferred from
// coefficients; asymptotic operations refuse to run without one.
class ThetaSequence {
 public:
  ThetaSequence(std::string label, std::function<double(long)> evaluator,
                std::optional<SingularityDescriptor> descriptor = std::nullopt,
                std::function<Complex(Complex)> g_closed_form = nullptr,
                std::function<double(long)> log_evaluator = nullptr);

  double theta(long k) const;  // validates theta_k > 0

  // theta_k * rho^k without intermediate under/overflow (log route when the
  // model provides one). Weights below double range come back as 0.
  double weight_scaled(long k, double rho) const;

  const std::string& label() const { return label_; }
  const std::optional<SingularityDescriptor>& descriptor() const {
    return descriptor_;
  }
  bool has_closed_form() const { return static_cast<bool>(g_closed_); }
  Complex g_closed(Complex z) const;

  // max over k <= 10^4 of theta_k * r^k; recorded when a descriptor exists.
  std::optional<double> theta_rk_bound() const { return theta_rk_bound_; }

 private:
  std::string label_;
  std::function<double(long)> eval_;
  std::optional<SingularityDescriptor> descriptor_;
  std::function<Complex(Complex)> g_closed_;
  std::function<double(long)> log_eval_;
  std::optional<double> theta_rk_bound_;
};

// theta_k = theta; G(t) = (1-t)^-theta, class F(1, theta, 0).
ThetaSequence ewens(double theta);

// theta_k = theta * q^k; G(t) = (1-qt)^-theta, class F(1/q, theta, 0).
ThetaSequence geometric_ewens(double theta, double q);

// theta_k = theta * (1 + c k^-gamma); class eF(1, theta, gamma) with
// g0(1) = theta*c*sum_k k^(-1-gamma) evaluated to 1e-10.
ThetaSequence perturbed_ewens(double theta, double c, double gamma);

// Custom sequence from an explicit table (theta_k for k = 1..table.size());
// carries no descriptor, so only exact operations apply.
ThetaSequence theta_from_table(std::string label, std::vector<double> table);

// CLI model strings: "ewens:t", "geom:t,q", "perturbed:t,c,g".
ThetaSequence parse_model(const std::string& spec);

}  // namespace permstat
