#include "permstat/circle_function.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace permstat {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double normalize_angle(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  return y;
}

bool in_arc(const ArcData& arc, double angle) {
  const double x = normalize_angle(angle);
  if (arc.a <= arc.b) return x >= arc.a && x < arc.b;
  return x >= arc.a || x < arc.b;  // wrapped arc
}

}  // namespace

CircleFunction CircleFunction::from_eval(std::function<Complex(double)> eval,
                                         bool is_real,
                                         std::optional<double> total_variation,
                                         std::optional<double> sobolev_exponent) {
  if (!eval) throw std::invalid_argument("CircleFunction: null evaluator");
  CircleFunction f;
  f.eval_ = std::move(eval);
  f.is_real_ = is_real;
  f.total_variation_ = total_variation;
  f.sobolev_exponent_ = sobolev_exponent;
  return f;
}

CircleFunction CircleFunction::laurent(std::map<long, Complex> b) {
  for (auto it = b.begin(); it != b.end();)
    it = (it->second == Complex{0.0, 0.0}) ? b.erase(it) : std::next(it);
  CircleFunction f;
  // real iff b_{-d} = conj(b_d) for all d
  bool real = true;
  for (const auto& [d, c] : b) {
    const auto jt = b.find(-d);
    const Complex mirror = (jt == b.end()) ? Complex{0.0, 0.0} : jt->second;
    if (std::abs(mirror - std::conj(c)) > 1e-15 * (1.0 + std::abs(c)))
      real = false;
  }
  f.is_real_ = real;
  f.laurent_ = std::move(b);
  f.eval_ = [coeffs = *f.laurent_](double angle) {
    Complex s{0.0, 0.0};
    for (const auto& [d, c] : coeffs) {
      const double ph = static_cast<double>(d) * angle;
      s += c * Complex{std::cos(ph), std::sin(ph)};
    }
    return s;
  };
  return f;
}

CircleFunction CircleFunction::arc_indicator(double a, double b, double offset) {
  ArcData arc{normalize_angle(a), normalize_angle(b), offset};
  CircleFunction f;
  f.arc_ = arc;
  f.is_real_ = true;
  f.total_variation_ = 2.0;
  f.eval_ = [arc](double angle) {
    return Complex{arc.offset + (in_arc(arc, angle) ? 1.0 : 0.0), 0.0};
  };
  return f;
}

CircleFunction CircleFunction::cosine() {
  return laurent({{1, Complex{0.5, 0.0}}, {-1, Complex{0.5, 0.0}}});
}

CircleFunction CircleFunction::from_fourier(FourierData data, bool is_real) {
  if (data.coeffs.count(0))
    throw std::invalid_argument(
        "CircleFunction::from_fourier: store the mean separately, not as m = 0");
  CircleFunction f;
  f.fourier_ = std::move(data);
  f.is_real_ = is_real;
  f.eval_ = [fd = *f.fourier_](double angle) {
    Complex s = fd.mean;
    for (const auto& [m, c] : fd.coeffs) {
      const double ph = static_cast<double>(m) * angle;
      s += c * Complex{std::cos(ph), std::sin(ph)};
    }
    return s;
  };
  return f;
}

Complex CircleFunction::eval(double angle) const { return eval_(angle); }

std::optional<long> CircleFunction::max_degree() const {
  long deg = 0;
  if (laurent_) {
    for (const auto& [d, c] : *laurent_) deg = std::max(deg, std::labs(d));
    return deg;
  }
  if (fourier_) {
    for (const auto& [m, c] : fourier_->coeffs) deg = std::max(deg, std::labs(m));
    return deg;
  }
  return std::nullopt;
}

Complex CircleFunction::mean() const {
  if (laurent_) {
    const auto it = laurent_->find(0);
    return it == laurent_->end() ? Complex{0.0, 0.0} : it->second;
  }
  if (arc_) {
    double len = arc_->b - arc_->a;
    if (arc_->a > arc_->b) len += kTwoPi;
    return Complex{arc_->offset + len / kTwoPi, 0.0};
  }
  if (fourier_) return fourier_->mean;
  // trapezoid; spectrally accurate for smooth periodic F
  const long nodes = 1024;
  Complex s{0.0, 0.0};
  for (long j = 0; j < nodes; ++j)
    s += eval_(kTwoPi * static_cast<double>(j) / static_cast<double>(nodes));
  return s / static_cast<double>(nodes);
}

CircleFunction CircleFunction::plus_constant(Complex c) const {
  if (laurent_) {
    auto b = *laurent_;
    b[0] += c;
    auto out = laurent(std::move(b));
    out.is_real_ = is_real_ && c.imag() == 0.0;
    return out;
  }
  if (arc_) {
    if (c.imag() != 0.0)
      throw std::invalid_argument("plus_constant: arc shift must be real");
    return arc_indicator(arc_->a, arc_->b, arc_->offset + c.real());
  }
  if (fourier_) {
    auto fd = *fourier_;
    fd.mean += c;
    return from_fourier(std::move(fd), is_real_ && c.imag() == 0.0);
  }
  CircleFunction out = *this;
  out.eval_ = [base = eval_, c](double angle) { return base(angle) + c; };
  out.is_real_ = is_real_ && c.imag() == 0.0;
  return out;
}

long arc_root_count(const ArcData& arc, long k, double base_angle) {
  // j in [0, k): (base/2pi + j)/k in [alpha, beta) mod 1.
  const double alpha = arc.a / kTwoPi;
  const double beta = arc.b / kTwoPi;
  const double c = normalize_angle(base_angle) / kTwoPi;  // in [0, 1)
  const double kk = static_cast<double>(k);
  // #{j in [0,k): j >= k*alpha - c && j < k*beta - c}, plus the wrapped copy
  // shifted by k (angles (c+j)/k sweep [c/k, (c+k-1)/k] subset [0,1)).
  auto count_below = [&](double bound) {
    // #{j in [0,k): j < bound}
    const double cl = std::ceil(bound);
    long v = static_cast<long>(cl);
    if (bound <= 0.0) return 0L;
    return std::min(v, k);
  };
  if (alpha <= beta)
    return count_below(kk * beta - c) - count_below(kk * alpha - c);
  // wrapped arc [alpha, 1) u [0, beta)
  return (k - count_below(kk * alpha - c)) + count_below(kk * beta - c);
}

}  // namespace permstat
