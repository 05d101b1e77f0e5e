#include "permstat/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

namespace permstat {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2 * j - 1) * xi * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double dx = p1 / pp;
        xi -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      x[i] = xi;
      w[i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
    }
  }
};

const GaussLegendre& gl256() {
  static const GaussLegendre g(256);
  return g;
}
const GaussLegendre& gl512() {
  static const GaussLegendre g(512);
  return g;
}

// E over the uniform mark angle of fn(phi) by Gauss-Legendre on [0, 2pi].
template <typename Fn>
Complex uniform_mark_mean(const Fn& fn, const GaussLegendre& g) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const double phi = std::numbers::pi * (g.x[i] + 1.0);
    acc += g.w[i] * fn(phi);
  }
  return acc * (std::numbers::pi / kTwoPi);  // divide the Jacobian by 2pi
}

}  // namespace

Complex delta_k(const CircleFunction& f, long k) {
  if (k < 1) throw std::invalid_argument("delta_k: k >= 1 required");
  if (const auto& b = f.laurent_coeffs()) {
    Complex s{0.0, 0.0};
    for (const auto& [d, c] : *b)
      if (d % k == 0) s += c;
    return s;
  }
  if (const auto& arc = f.arc())
    return Complex{arc->offset + static_cast<double>(arc_root_count(*arc, k)) /
                                     static_cast<double>(k),
                   0.0};
  if (const auto& fd = f.fourier()) {
    Complex s = fd->mean;
    for (const auto& [m, c] : fd->coeffs)
      if (m % k == 0) s += c;
    return s;
  }
  Complex s{0.0, 0.0};
  for (long m = 1; m <= k; ++m)
    s += f.eval(kTwoPi * static_cast<double>(m) / static_cast<double>(k));
  return s / static_cast<double>(k);
}

Complex delta_k_marked(const CircleFunction& f, long k, Complex y) {
  if (k < 1) throw std::invalid_argument("delta_k_marked: k >= 1 required");
  if (std::abs(std::abs(y) - 1.0) > 1e-12)
    throw std::invalid_argument("delta_k_marked: |y| = 1 required");
  double phi = std::arg(y);
  if (phi < 0.0) phi += kTwoPi;
  if (const auto& b = f.laurent_coeffs()) {
    // Delta_k(x^d, y) = y^{d/k} for k | d, else 0 (root-of-unity orthogonality)
    Complex s{0.0, 0.0};
    for (const auto& [d, c] : *b)
      if (d % k == 0)
        s += c * unit(phi * static_cast<double>(d) / static_cast<double>(k));
    return s;
  }
  if (const auto& arc = f.arc())
    return Complex{arc->offset +
                       static_cast<double>(arc_root_count(*arc, k, phi)) /
                           static_cast<double>(k),
                   0.0};
  if (const auto& fd = f.fourier()) {
    Complex s = fd->mean;
    for (const auto& [m, c] : fd->coeffs)
      if (m % k == 0)
        s += c * unit(phi * static_cast<double>(m) / static_cast<double>(k));
    return s;
  }
  Complex s{0.0, 0.0};
  for (long j = 0; j < k; ++j)
    s += f.eval((phi + kTwoPi * static_cast<double>(j)) / static_cast<double>(k));
  return s / static_cast<double>(k);
}

long trace_power(const CycleType& c, long d) {
  if (d < 1) throw std::invalid_argument("trace_power: d >= 1 required");
  long t = 0;
  for (const auto& [k, ck] : c.counts)
    if (d % k == 0) t += k * ck;
  return t;
}

Complex trace_f(const CycleType& c, const CircleFunction& f) {
  Complex t{0.0, 0.0};
  for (const auto& [k, ck] : c.counts)
    t += static_cast<double>(k * ck) * delta_k(f, k);
  return t;
}

Complex trace_f_wreath(const CycleType& c, const MarkTable& marks,
                       const CircleFunction& f) {
  std::size_t used = 0;
  Complex t{0.0, 0.0};
  for (const auto& [k, ck] : c.counts)
    for (long m = 1; m <= ck; ++m) {
      const auto it = marks.find({k, m});
      if (it == marks.end())
        throw std::invalid_argument("trace_f_wreath: missing mark for slot");
      t += static_cast<double>(k) * delta_k_marked(f, k, it->second);
      ++used;
    }
  if (used != marks.size())
    throw std::invalid_argument("trace_f_wreath: marks outside the cycle slots");
  return t;
}

ChiResult chi_k(const CircleFunction& f, const ZLaw& z, long k, double s) {
  if (k < 1) throw std::invalid_argument("chi_k: k >= 1 required");
  auto integrand = [&](Complex y) {
    const Complex d = delta_k_marked(f, k, y);
    // e^{i s k Delta}; Delta may be complex for complex-valued F
    const Complex e = Complex{0.0, 1.0} * (s * static_cast<double>(k)) * d;
    return std::exp(e);
  };
  switch (z.kind()) {
    case ZLaw::Kind::PointMassOne:
      return {integrand(Complex{1.0, 0.0}), 0.0};
    case ZLaw::Kind::DiscreteAtoms: {
      Complex acc{0.0, 0.0};
      for (const auto& [angle, prob] : z.product_law(k))
        acc += prob * integrand(unit(angle));
      return {acc, 0.0};
    }
    case ZLaw::Kind::UniformCircle: {
      auto fn = [&](double phi) { return integrand(unit(phi)); };
      const Complex coarse = uniform_mark_mean(fn, gl256());
      const Complex fine = uniform_mark_mean(fn, gl512());
      return {fine, std::abs(fine - coarse)};
    }
  }
  return {Complex{1.0, 0.0}, 0.0};
}

Complex limit_char_trace_power(const ThetaSequence& theta, double r, long d,
                               double s) {
  if (d < 1) throw std::invalid_argument("limit_char_trace_power: d >= 1");
  Complex expo{0.0, 0.0};
  for (long k = 1; k <= d; ++k) {
    if (d % k != 0) continue;
    expo += theta.theta(k) / static_cast<double>(k) *
            (unit(s * static_cast<double>(k)) - 1.0) *
            std::pow(r, static_cast<double>(k));
  }
  return std::exp(expo);
}

namespace {

// sup_y |Delta_k(F - c0, y)| from finite Laurent/Fourier data; nullopt when
// the structure gives no handle on the decay.
std::optional<double> sup_delta_bound(const CircleFunction& f, long k) {
  if (const auto& b = f.laurent_coeffs()) {
    double s = 0.0;
    for (const auto& [d, c] : *b)
      if (d != 0 && d % k == 0) s += std::abs(c);
    return s;
  }
  if (const auto& fd = f.fourier()) {
    double s = 0.0;
    for (const auto& [m, c] : fd->coeffs)
      if (m % k == 0) s += std::abs(c);
    return s;
  }
  return std::nullopt;
}

struct TailSetup {
  long cutoff;        // largest k that can contribute
  double tail_bound;  // certified bound on the dropped part
};

TailSetup certified_cutoff(const ThetaSequence& theta, double r,
                           const CircleFunction& f, double s, long k_max,
                           double weight) {
  const auto deg = f.max_degree();
  if (!deg)
    throw TailNotControlled(
        "tail bound needs finite Laurent or Fourier support for F");
  const long cutoff = std::min(k_max, *deg);
  double bound = 0.0;
  for (long k = cutoff + 1; k <= *deg; ++k) {
    const auto sup = sup_delta_bound(f, k);
    const double chi_dev =
        std::min(2.0, std::abs(s) * static_cast<double>(k) * *sup);
    bound += theta.theta(k) / std::pow(static_cast<double>(k), weight) *
             std::pow(r, static_cast<double>(k)) * chi_dev;
  }
  if (bound > 1e-8)
    throw TailNotControlled("certified tail bound " + std::to_string(bound) +
                            " exceeds 1e-8 at the requested k_max");
  return {cutoff, bound};
}

}  // namespace

LimitChar limit_char_trace_f(const ThetaSequence& theta, double r,
                             const CircleFunction& f, const ZLaw& z, double s,
                             long k_max) {
  if (k_max < 1) throw std::invalid_argument("limit_char_trace_f: k_max >= 1");
  const CircleFunction centered = f.plus_constant(-f.mean());
  const auto tail = certified_cutoff(theta, r, centered, s, k_max, 1.0);
  Complex expo{0.0, 0.0};
  for (long k = 1; k <= tail.cutoff; ++k) {
    const Complex chi = chi_k(centered, z, k, s).value;
    expo += theta.theta(k) / static_cast<double>(k) * (chi - 1.0) *
            std::pow(r, static_cast<double>(k));
  }
  return {std::exp(expo), tail.tail_bound};
}

LimitDraw sample_limit_y(const ThetaSequence& theta, double r,
                         const CircleFunction& f, const ZLaw& z,
                         RandomStream& rng, long k_max) {
  if (k_max < 1) throw std::invalid_argument("sample_limit_y: k_max >= 1");
  const CircleFunction centered = f.plus_constant(-f.mean());
  // tail mean: sum_{k>cutoff} theta_k r^k E|Delta_k| (weight k^0)
  const auto tail = certified_cutoff(theta, r, centered, 1.0, k_max, 0.0);
  Complex y{0.0, 0.0};
  for (long k = 1; k <= tail.cutoff; ++k) {
    const long pk = rng.poisson(theta.theta(k) *
                                std::pow(r, static_cast<double>(k)) /
                                static_cast<double>(k));
    for (long m = 0; m < pk; ++m) {
      const Complex mark = z.sample_product(k, rng);
      y += static_cast<double>(k) * delta_k_marked(centered, k, mark);
    }
  }
  return {y, tail.tail_bound};
}

FourierCoeff fourier_coeff(const CircleFunction& f, long m, long nodes) {
  if (nodes < 4 * std::labs(m) + 16)
    throw std::invalid_argument("fourier_coeff: nodes >= 4|m| + 16 required");
  auto trap = [&](long nn) {
    Complex s{0.0, 0.0};
    for (long j = 0; j < nn; ++j) {
      const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(nn);
      s += f.eval(x) * unit(-static_cast<double>(m) * x);
    }
    return s / static_cast<double>(nn);
  };
  const Complex coarse = trap(nodes);
  const Complex fine = trap(2 * nodes);
  return {fine, std::abs(fine - coarse)};
}

FourierConditionReport check_fourier_conditions(const CircleFunction& f,
                                                double delta, double s,
                                                double vartheta, long m_max) {
  FourierConditionReport rep;
  rep.s_used = s;
  if (s <= std::max(0.0, 1.0 - vartheta))
    throw std::invalid_argument(
        "check_fourier_conditions: s > (1 - vartheta)_+ required");

  auto coeff = [&](long m) -> Complex {
    if (const auto& b = f.laurent_coeffs()) {
      const auto it = b->find(m);
      return it == b->end() ? Complex{0.0, 0.0} : it->second;
    }
    if (const auto& fd = f.fourier()) {
      if (m == 0) return fd->mean;
      const auto it = fd->coeffs.find(m);
      return it == fd->coeffs.end() ? Complex{0.0, 0.0} : it->second;
    }
    const long nodes = std::max<long>(4 * std::labs(m) + 16, 256);
    return fourier_coeff(f, m, nodes).value;
  };

  rep.mean_abs = std::abs(coeff(0));
  rep.mean_zero = rep.mean_abs <= 1e-10;

  // (b) least-squares fit of log|c_m| against -log|m| over nonzero coeffs
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long pts = 0;
  for (long m = 1; m <= m_max; ++m) {
    const double cm = std::max(std::abs(coeff(m)), std::abs(coeff(-m)));
    if (cm < 1e-14) continue;
    const double lx = std::log(static_cast<double>(m));
    const double ly = std::log(cm);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++pts;
  }
  if (pts >= 3) {
    const double denom = pts * sxx - sx * sx;
    rep.fitted_decay_exponent = denom != 0.0 ? -(pts * sxy - sx * sy) / denom : 0.0;
  } else {
    // finitely many nonzero coefficients: any polynomial decay holds
    rep.fitted_decay_exponent = std::numeric_limits<double>::infinity();
  }
  rep.decay_pass = rep.fitted_decay_exponent >= 1.0 + delta - 1e-9;

  // (c) partial sums of sum |m|^s |c_m|, Cauchy check over the last octave
  double total = 0.0, half_total = 0.0;
  for (long m = 1; m <= m_max; ++m) {
    const double term = std::pow(static_cast<double>(m), s) *
                        (std::abs(coeff(m)) + std::abs(coeff(-m)));
    total += term;
    if (m <= m_max / 2) half_total += term;
  }
  rep.weighted_sum = total;
  rep.last_octave_increment = total - half_total;
  rep.weighted_sum_cauchy =
      rep.last_octave_increment <= 1e-3 * std::max(1.0, total);
  return rep;
}

namespace {

struct DeltaMoments {
  double mean;    // E[Delta_k]
  double second;  // E[Delta_k^2]
  double p_abs;   // E[|Delta_k|^p]
};

DeltaMoments delta_moments(const CircleFunction& f, const ZLaw& z, long k,
                           double p) {
  auto from_value = [&](double d) {
    return DeltaMoments{d, d * d, std::pow(std::abs(d), p)};
  };
  switch (z.kind()) {
    case ZLaw::Kind::PointMassOne:
      return from_value(delta_k(f, k).real());
    case ZLaw::Kind::DiscreteAtoms: {
      DeltaMoments m{0.0, 0.0, 0.0};
      for (const auto& [angle, prob] : z.product_law(k)) {
        const double d = delta_k_marked(f, k, unit(angle)).real();
        m.mean += prob * d;
        m.second += prob * d * d;
        m.p_abs += prob * std::pow(std::abs(d), p);
      }
      return m;
    }
    case ZLaw::Kind::UniformCircle: {
      DeltaMoments m{0.0, 0.0, 0.0};
      const auto& g = gl256();
      double wsum = 0.0;
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double phi = std::numbers::pi * (g.x[i] + 1.0);
        const double d = delta_k_marked(f, k, unit(phi)).real();
        m.mean += g.w[i] * d;
        m.second += g.w[i] * d * d;
        m.p_abs += g.w[i] * std::pow(std::abs(d), p);
        wsum += g.w[i];
      }
      m.mean /= wsum;
      m.second /= wsum;
      m.p_abs /= wsum;
      return m;
    }
  }
  return {0.0, 0.0, 0.0};
}

}  // namespace

CltQuantities clt_quantities(double theta, const CircleFunction& f,
                             const ZLaw& z, long n, double p) {
  if (!f.is_real())
    throw std::invalid_argument("clt_quantities: real-valued F required");
  if (!(theta > 0.0)) throw std::invalid_argument("clt_quantities: theta > 0");
  if (!(p > std::max(1.0 / theta, 2.0)))
    throw std::invalid_argument("clt_quantities: p > max(1/theta, 2) required");
  CltQuantities q;
  q.p_used = p;
  double lyap = 0.0;
  for (long k = 1; k <= n; ++k) {
    const DeltaMoments m = delta_moments(f, z, k, p);
    q.v_n += static_cast<double>(k) * m.second;
    q.e_n += m.mean;
    lyap += std::pow(static_cast<double>(k), p - 1.0) * m.p_abs;
  }
  q.v_n *= theta;
  q.e_n *= theta;
  q.lyapunov_ratio = q.v_n > 0.0 ? lyap / std::pow(q.v_n, p / 2.0)
                                 : std::numeric_limits<double>::infinity();
  return q;
}

std::vector<double> standardized_trace(double theta, const CircleFunction& f,
                                       const ZLaw& z, long n, long samples,
                                       const RandomStream& rng, int workers) {
  const double p = std::max(1.0 / theta, 2.0) + 1.0;
  const CltQuantities q = clt_quantities(theta, f, z, n, p);
  if (!(q.v_n > 0.0))
    throw std::invalid_argument("standardized_trace: V_N = 0 (degenerate)");
  const double scale = 1.0 / std::sqrt(q.v_n);

  const ThetaSequence model = ewens(theta);
  const HTable h = compute_h(model, n);
  const CycleSampler sampler(model, h, n);

  std::vector<double> out(static_cast<std::size_t>(samples));
  auto one = [&](long i) {
    RandomStream local = rng.substream(static_cast<std::uint64_t>(i));
    const CycleType c = sampler.sample(n, local);
    double tr;
    if (z.kind() == ZLaw::Kind::PointMassOne) {
      tr = trace_f(c, f).real();
    } else {
      const MarkTable marks = sample_wreath_marks(c, z, local);
      tr = trace_f_wreath(c, marks, f).real();
    }
    out[static_cast<std::size_t>(i)] = (tr - q.e_n) * scale;
  };
  workers = std::max(1, static_cast<int>(std::min<long>(workers, samples)));
  if (workers == 1) {
    for (long i = 0; i < samples; ++i) one(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  const long chunk = (samples + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long lo = static_cast<long>(w) * chunk;
    const long hi = std::min(samples, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (long i = lo; i < hi; ++i) one(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

std::pair<double, double> bounded_variation_moment(const ThetaSequence& theta,
                                                   const CircleFunction& f,
                                                   long n, int d) {
  if (!f.is_real() || !f.total_variation())
    throw std::invalid_argument(
        "bounded_variation_moment: real F with known total variation required");
  if (d < 1) throw std::invalid_argument("bounded_variation_moment: d >= 1");
  const auto& desc = theta.descriptor();
  if (!desc)
    throw std::logic_error(
        "bounded_variation_moment: descriptor needed for the T(sigma) scale");
  const double integral = f.mean().real();
  const double value = std::pow(integral, d);
  const double bound =
      desc->vartheta * std::log(static_cast<double>(n)) / static_cast<double>(n);
  return {value, bound};
}

Complex finite_char_trace_power(const ThetaSequence& theta, long n, long d,
                                double s) {
  if (n < 0 || d < 1)
    throw std::invalid_argument("finite_char_trace_power: n >= 0, d >= 1");
  // log of the generating function: g(t) + sum_{k|d}(theta_k/k)(e^{isk}-1)t^k
  TruncatedSeries logs = g_theta_series(theta, std::max<long>(n, 1));
  for (long k = 1; k <= std::min(d, n); ++k) {
    if (d % k != 0) continue;
    logs.at(k) += theta.theta(k) / static_cast<double>(k) *
                  (unit(s * static_cast<double>(k)) - 1.0);
  }
  const TruncatedSeries gen = series_exp(logs, n);
  const HTable h = compute_h(theta, n);
  return gen[n] / h.scaled(n);
}

}  // namespace permstat
