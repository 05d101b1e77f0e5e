#include "permstat/theta.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace permstat {

SingularityDescriptor SingularityDescriptor::class_f(double r, double vartheta,
                                                     Complex k) {
  if (!(r > 0.0) || !(vartheta >= 0.0))
    throw std::invalid_argument("SingularityDescriptor: need r > 0, vartheta >= 0");
  SingularityDescriptor d;
  d.cls = SingularityClass::F;
  d.r = r;
  d.vartheta = vartheta;
  d.bigk = k;
  return d;
}

SingularityDescriptor SingularityDescriptor::class_ef(double r, double vartheta,
                                                      double gamma,
                                                      Complex g0_at_r) {
  if (!(r > 0.0) || !(vartheta >= 0.0) || !(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument(
        "SingularityDescriptor: need r > 0, vartheta >= 0, gamma in (0,1]");
  SingularityDescriptor d;
  d.cls = SingularityClass::EF;
  d.r = r;
  d.vartheta = vartheta;
  d.gamma = gamma;
  d.g0_at_r = g0_at_r;
  return d;
}

SingularityDescriptor SingularityDescriptor::multi(
    double r, std::vector<SingularityBranch> branches) {
  if (!(r > 0.0) || branches.empty())
    throw std::invalid_argument("SingularityDescriptor: need r > 0 and branches");
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (std::abs(std::abs(branches[i].xi) - r) > 1e-9 * r)
      throw std::invalid_argument("SingularityDescriptor: |xi_i| != r");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(branches[i].xi - branches[j].xi) <= 1e-12 * r)
        throw std::invalid_argument("SingularityDescriptor: xi_i not distinct");
  }
  SingularityDescriptor d;
  d.cls = SingularityClass::Multi;
  d.r = r;
  d.branches = std::move(branches);
  return d;
}

ThetaSequence::ThetaSequence(std::string label,
                             std::function<double(long)> evaluator,
                             std::optional<SingularityDescriptor> descriptor,
                             std::function<Complex(Complex)> g_closed_form,
                             std::function<double(long)> log_evaluator)
    : label_(std::move(label)),
      eval_(std::move(evaluator)),
      descriptor_(std::move(descriptor)),
      g_closed_(std::move(g_closed_form)),
      log_eval_(std::move(log_evaluator)) {
  if (!eval_) throw std::invalid_argument("ThetaSequence: null evaluator");
  if (descriptor_) {
    double bound = 0.0;
    for (long k = 1; k <= 10000; ++k)
      bound = std::max(bound, weight_scaled(k, descriptor_->r));
    theta_rk_bound_ = bound;
  }
}

double ThetaSequence::theta(long k) const {
  if (k < 1) throw std::invalid_argument("theta_k: k >= 1 required");
  const double v = eval_(k);
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "ThetaSequence '" << label_ << "': theta_" << k
       << " = " << v << " is not strictly positive";
    throw std::domain_error(os.str());
  }
  return v;
}

double ThetaSequence::weight_scaled(long k, double rho) const {
  if (k < 1) throw std::invalid_argument("weight_scaled: k >= 1 required");
  if (!(rho > 0.0)) throw std::invalid_argument("weight_scaled: rho > 0");
  double v;
  if (log_eval_) {
    v = std::exp(log_eval_(k) +
                 static_cast<double>(k) * std::log(rho));
  } else {
    v = theta(k) * std::pow(rho, static_cast<double>(k));
  }
  if (!std::isfinite(v) || v < 0.0) {
    std::ostringstream os;
    os << "ThetaSequence '" << label_ << "': theta_" << k << " * rho^k at rho="
       << rho << " left double range";
    throw std::overflow_error(os.str());
  }
  return v;
}

Complex ThetaSequence::g_closed(Complex z) const {
  if (!g_closed_)
    throw std::logic_error("ThetaSequence '" + label_ + "' has no closed form");
  return g_closed_(z);
}

ThetaSequence ewens(double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("ewens: theta > 0 required");
  std::ostringstream label;
  label << "ewens:" << theta;
  return ThetaSequence(
      label.str(), [theta](long) { return theta; },
      SingularityDescriptor::class_f(1.0, theta, Complex{0.0, 0.0}),
      [theta](Complex z) { return -theta * std::log(1.0 - z); },
      [lt = std::log(theta)](long) { return lt; });
}

ThetaSequence geometric_ewens(double theta, double q) {
  if (!(theta > 0.0) || !(q > 0.0 && q < 1.0))
    throw std::invalid_argument("geometric_ewens: theta > 0, q in (0,1)");
  std::ostringstream label;
  label << "geom:" << theta << "," << q;
  return ThetaSequence(
      label.str(), [theta, q](long k) { return theta * std::pow(q, k); },
      SingularityDescriptor::class_f(1.0 / q, theta, Complex{0.0, 0.0}),
      [theta, q](Complex z) { return -theta * std::log(1.0 - q * z); },
      [lt = std::log(theta), lq = std::log(q)](long k) {
        return lt + static_cast<double>(k) * lq;
      });
}

ThetaSequence perturbed_ewens(double theta, double c, double gamma) {
  if (!(theta > 0.0)) throw std::invalid_argument("perturbed_ewens: theta > 0");
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("perturbed_ewens: gamma in (0,1]");
  if (!(c > -1.0))
    throw std::invalid_argument("perturbed_ewens: c > -1 required (theta_k > 0)");

  // g0(1) = theta*c*zeta(1+gamma): partial sum plus midpoint tail, absolute
  // error below 1e-10 (tail correction error ~ K^(-2-gamma)).
  const long big_k = 20000;
  double zeta = 0.0;
  for (long k = big_k; k >= 1; --k)
    zeta += std::pow(static_cast<double>(k), -1.0 - gamma);
  zeta += std::pow(big_k + 0.5, -gamma) / gamma;

  std::ostringstream label;
  label << "perturbed:" << theta << "," << c << "," << gamma;
  return ThetaSequence(
      label.str(),
      [theta, c, gamma](long k) {
        return theta * (1.0 + c * std::pow(static_cast<double>(k), -gamma));
      },
      SingularityDescriptor::class_ef(1.0, theta, gamma,
                                      Complex{theta * c * zeta, 0.0}),
      nullptr,
      [lt = std::log(theta), c, gamma](long k) {
        return lt + std::log1p(c * std::pow(static_cast<double>(k), -gamma));
      });
}

ThetaSequence theta_from_table(std::string label, std::vector<double> table) {
  auto shared = std::make_shared<std::vector<double>>(std::move(table));
  return ThetaSequence(std::move(label), [shared](long k) {
    if (k < 1 || static_cast<std::size_t>(k) > shared->size())
      throw std::out_of_range("theta table: index beyond stored range");
    return (*shared)[static_cast<std::size_t>(k - 1)];
  });
}

ThetaSequence parse_model(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("model spec '" + spec +
                                "': expected name:params");
  const std::string name = spec.substr(0, colon);
  std::vector<double> args;
  {
    std::string rest = spec.substr(colon + 1);
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("model spec '" + spec +
                                    "': bad number '" + tok + "'");
      }
      if (used != tok.size())
        throw std::invalid_argument("model spec '" + spec +
                                    "': bad number '" + tok + "'");
      args.push_back(v);
    }
  }
  if (name == "ewens" && args.size() == 1) return ewens(args[0]);
  if (name == "geom" && args.size() == 2) return geometric_ewens(args[0], args[1]);
  if (name == "perturbed" && args.size() == 3)
    return perturbed_ewens(args[0], args[1], args[2]);
  throw std::invalid_argument(
      "model spec '" + spec +
      "': expected ewens:t | geom:t,q | perturbed:t,c,g");
}

}  // namespace permstat
