#include "permstat/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "permstat/acceptance.hpp"
#include "permstat/hwang.hpp"
#include "permstat/moments.hpp"
#include "permstat/statistics.hpp"
#include "permstat/stats.hpp"

namespace permstat {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// "0.5", "pi", "-pi", "0.25pi"
double parse_angle(const std::string& tok) {
  if (tok == "pi") return std::numbers::pi;
  if (tok == "-pi") return -std::numbers::pi;
  if (tok.size() > 2 && tok.ends_with("pi")) {
    const std::string head = tok.substr(0, tok.size() - 2);
    std::size_t used = 0;
    const double v = std::stod(head, &used);
    if (used != head.size())
      throw std::invalid_argument("bad angle token '" + tok + "'");
    return v * std::numbers::pi;
  }
  std::size_t used = 0;
  const double v = std::stod(tok, &used);
  if (used != tok.size())
    throw std::invalid_argument("bad angle token '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, sep)) out.push_back(tok);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void echo_common(const ExperimentConfig& cfg, ExperimentResult& r) {
  r.command = cfg.command;
  r.config.emplace_back("model", cfg.model);
  r.config.emplace_back("n", std::to_string(cfg.n));
  r.config.emplace_back("samples", std::to_string(cfg.samples));
  r.config.emplace_back("seed", std::to_string(cfg.seed));
  r.config.emplace_back("workers", std::to_string(cfg.workers));
}

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

// Log-spaced N sweep from 1 to n, all values when n is small.
std::vector<long> n_sweep(long n) {
  std::vector<long> out;
  if (n <= 256) {
    for (long i = 1; i <= n; ++i) out.push_back(i);
    return out;
  }
  double x = 1.0;
  const double step = std::pow(static_cast<double>(n), 1.0 / 255.0);
  long last = 0;
  for (int i = 0; i < 256; ++i) {
    const long v = std::min<long>(n, std::max<long>(last + 1, std::llround(x)));
    out.push_back(v);
    last = v;
    x *= step;
    if (v >= n) break;
  }
  if (out.back() != n) out.push_back(n);
  return out;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// fn(i) for i in [0, count) over contiguous chunks; fn writes by index only.
template <typename Fn>
void parallel_indexed(long count, int workers, const Fn& fn) {
  workers = std::max(1, static_cast<int>(std::min<long>(workers, count)));
  if (workers == 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  const long chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long lo = static_cast<long>(w) * chunk;
    const long hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (long i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<double> replicate_indexed(
    long count, int workers, const std::function<double(long)>& fn) {
  std::vector<double> out(static_cast<std::size_t>(count));
  parallel_indexed(count, workers,
                   [&](long i) { out[static_cast<std::size_t>(i)] = fn(i); });
  return out;
}

CircleFunction parse_function(const std::string& spec) {
  if (spec == "cos") return CircleFunction::cosine();
  if (spec.starts_with("laurent:")) {
    std::map<long, Complex> coeffs;
    for (const auto& item : split(spec.substr(8), ',')) {
      const auto eq = item.find('=');
      require(eq != std::string::npos,
              "function spec '" + spec + "': expected d=coeff entries");
      const long d = std::stol(item.substr(0, eq));
      const double c = std::stod(item.substr(eq + 1));
      coeffs[d] += Complex{c, 0.0};
    }
    require(!coeffs.empty(), "function spec '" + spec + "': no coefficients");
    return CircleFunction::laurent(std::move(coeffs));
  }
  if (spec.starts_with("arc:")) {
    const auto parts = split(spec.substr(4), ',');
    require(parts.size() == 2 || parts.size() == 3,
            "function spec '" + spec + "': expected arc:a,b[,offset]");
    const double a = parse_angle(parts[0]);
    const double b = parse_angle(parts[1]);
    const double offset = parts.size() == 3 ? parse_angle(parts[2]) : 0.0;
    return CircleFunction::arc_indicator(a, b, offset);
  }
  if (spec.starts_with("fourier:")) {
    const std::string path = spec.substr(8);
    std::ifstream in(path);
    require(static_cast<bool>(in), "function spec: cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    FourierData data;
    data.mean = Complex{j.value("mean_re", 0.0), j.value("mean_im", 0.0)};
    for (const auto& row : j.at("coeffs")) {
      require(row.is_array() && (row.size() == 2 || row.size() == 3),
              "fourier file: coeffs rows are [m, re] or [m, re, im]");
      const long m = row[0].get<long>();
      require(m != 0, "fourier file: store the mean separately, not as m = 0");
      const double re = row[1].get<double>();
      const double im = row.size() == 3 ? row[2].get<double>() : 0.0;
      data.coeffs[m] = Complex{re, im};
    }
    return CircleFunction::from_fourier(std::move(data),
                                        j.value("real", false));
  }
  throw std::invalid_argument("function spec '" + spec +
                              "': expected laurent:... | arc:a,b | "
                              "fourier:file.json | cos");
}

ZLaw parse_zlaw(const std::string& spec) {
  if (spec == "point") return ZLaw::point_mass_one();
  if (spec == "uniform") return ZLaw::uniform_circle();
  if (spec.starts_with("atoms:")) {
    std::vector<std::pair<double, double>> atoms;
    for (const auto& item : split(spec.substr(6), ',')) {
      const auto eq = item.find('=');
      require(eq != std::string::npos,
              "zlaw spec '" + spec + "': expected angle=prob entries");
      atoms.emplace_back(parse_angle(item.substr(0, eq)),
                         std::stod(item.substr(eq + 1)));
    }
    return ZLaw::discrete_atoms(std::move(atoms));
  }
  throw std::invalid_argument("zlaw spec '" + spec +
                              "': expected point | uniform | atoms:a=p,...");
}

std::vector<double> parse_sgrid(const std::string& spec) {
  const auto parts = split(spec, ':');
  require(parts.size() == 3, "s-grid '" + spec + "': expected a:b:count");
  const double a = std::stod(parts[0]);
  const double b = std::stod(parts[1]);
  const long count = std::stol(parts[2]);
  require(count >= 1 && count <= 100000, "s-grid: count in [1, 1e5]");
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] =
        count == 1 ? a
                   : a + (b - a) * static_cast<double>(i) /
                         static_cast<double>(count - 1);
  return grid;
}

ExperimentResult cmd_hn(const ExperimentConfig& cfg) {
  Timer timer;
  const ThetaSequence theta = parse_model(cfg.model);
  require(cfg.n >= 1, "hn: --n >= 1 required");
  if (cfg.asym && !theta.descriptor())
    throw std::invalid_argument(
        "hn: model '" + cfg.model +
        "' carries no singularity descriptor; rerun with --exact-only");
  ExperimentResult r;
  echo_common(cfg, r);
  const double rho = theta.descriptor() ? theta.descriptor()->r : 1.0;
  r.config.emplace_back("rho", fmt(rho));
  const HTable h = compute_h(theta, cfg.n, rho);
  if (cfg.asym) {
    r.columns = {"N", "h_exact_scaled", "h_asym_scaled", "ratio", "n_abs_err"};
    for (const long n : n_sweep(cfg.n)) {
      const double exact = h.scaled(n);
      const double pred = h_asym(theta, n, rho).value.real();
      const double ratio = pred / exact;
      r.rows.push_back({static_cast<double>(n), exact, pred, ratio,
                        static_cast<double>(n) * std::abs(ratio - 1.0)});
    }
  } else {
    r.columns = {"N", "h_exact_scaled"};
    for (const long n : n_sweep(cfg.n))
      r.rows.push_back({static_cast<double>(n), h.scaled(n)});
  }
  r.wall_seconds = timer.seconds();
  return r;
}

ExperimentResult cmd_sample(const ExperimentConfig& cfg) {
  Timer timer;
  const ThetaSequence theta = parse_model(cfg.model);
  const ZLaw z = parse_zlaw(cfg.zlaw_spec);
  require(cfg.n >= 1 && cfg.samples >= 1, "sample: n >= 1, samples >= 1");
  require(cfg.emit == "cycles" || cfg.emit == "angles",
          "sample: --emit cycles|angles");
  if (cfg.emit == "angles")
    require(cfg.n * cfg.samples <= 10000000,
            "sample: angle emission capped at 1e7 eigenvalues");
  ExperimentResult r;
  echo_common(cfg, r);
  r.config.emplace_back("zlaw", cfg.zlaw_spec);
  r.config.emplace_back("emit", cfg.emit);
  const HTable h = compute_h(theta, cfg.n);
  const CycleSampler sampler(theta, h, cfg.n);
  const RandomStream base(cfg.seed, 0);
  if (cfg.emit == "cycles") {
    r.columns = {"sample", "k", "count"};
    for (long i = 0; i < cfg.samples; ++i) {
      RandomStream local = base.substream(static_cast<std::uint64_t>(i));
      const CycleType c = sampler.sample(cfg.n, local);
      for (const auto& [k, ck] : c.counts)
        r.rows.push_back({static_cast<double>(i), static_cast<double>(k),
                          static_cast<double>(ck)});
    }
  } else {
    r.columns = {"sample", "angle"};
    for (long i = 0; i < cfg.samples; ++i) {
      RandomStream local = base.substream(static_cast<std::uint64_t>(i));
      const CycleType c = sampler.sample(cfg.n, local);
      const MarkTable marks = sample_wreath_marks(c, z, local);
      for (const auto& [k, ck] : c.counts)
        for (long m = 1; m <= ck; ++m) {
          double phi = std::arg(marks.at({k, m}));
          if (phi < 0.0) phi += kTwoPi;
          for (long j = 0; j < k; ++j)
            r.rows.push_back(
                {static_cast<double>(i),
                 (phi + kTwoPi * static_cast<double>(j)) / static_cast<double>(k)});
        }
    }
  }
  r.wall_seconds = timer.seconds();
  return r;
}

namespace {

// pmf of sum over components k of k * Poisson(mean_k); truncated at j_max.
std::vector<double> pmf_weighted_poisson_sum(
    const std::vector<std::pair<long, double>>& comps, long j_max) {
  std::vector<double> pmf(static_cast<std::size_t>(j_max) + 1, 0.0);
  pmf[0] = 1.0;
  for (const auto& [k, mean] : comps) {
    std::vector<double> next(pmf.size(), 0.0);
    for (long j = 0; k * j <= j_max; ++j) {
      const double pj = poisson_pmf(mean, j);
      if (pj < 1e-16 && j > mean) break;
      for (long i = 0; i + k * j <= j_max; ++i)
        next[static_cast<std::size_t>(i + k * j)] +=
            pmf[static_cast<std::size_t>(i)] * pj;
    }
    pmf.swap(next);
  }
  return pmf;
}

}  // namespace

ExperimentResult cmd_trace_dist(const ExperimentConfig& cfg) {
  Timer timer;
  const ThetaSequence theta = parse_model(cfg.model);
  const ZLaw z = parse_zlaw(cfg.zlaw_spec);
  const std::vector<double> grid = parse_sgrid(cfg.s_grid);
  require(cfg.n >= 1 && cfg.samples >= 1, "trace-dist: n >= 1, samples >= 1");
  require(cfg.d > 0 || !cfg.function_spec.empty(),
          "trace-dist: pass --d or --function");
  const auto& desc = theta.descriptor();
  require(static_cast<bool>(desc),
          "trace-dist: the limit law needs a model with a descriptor");
  const double radius = desc->r;

  ExperimentResult r;
  echo_common(cfg, r);
  r.config.emplace_back("zlaw", cfg.zlaw_spec);
  r.config.emplace_back("s_grid", cfg.s_grid);

  const HTable h = compute_h(theta, cfg.n);
  const CycleSampler sampler(theta, h, cfg.n);
  const RandomStream base(cfg.seed, 0);

  if (cfg.d > 0) {
    r.config.emplace_back("d", std::to_string(cfg.d));
    require(cfg.zlaw_spec == "point",
            "trace-dist: --d path is the permutation case; use --zlaw point");
    std::vector<long> values(static_cast<std::size_t>(cfg.samples));
    parallel_indexed(cfg.samples, cfg.workers, [&](long i) {
      RandomStream local = base.substream(static_cast<std::uint64_t>(i));
      values[static_cast<std::size_t>(i)] =
          trace_power(sampler.sample(cfg.n, local), cfg.d);
    });
    std::map<long, long> counts;
    double sum = 0.0, sumsq = 0.0;
    for (const long t : values) {
      ++counts[t];
      sum += static_cast<double>(t);
      sumsq += static_cast<double>(t) * static_cast<double>(t);
    }
    r.columns = {"s", "ecf_re", "ecf_im", "limit_re", "limit_im", "abs_diff"};
    double sup = 0.0;
    for (const double sv : grid) {
      Complex ecf{0.0, 0.0};
      for (const long t : values) {
        const double ph = sv * static_cast<double>(t);
        ecf += Complex{std::cos(ph), std::sin(ph)};
      }
      ecf /= static_cast<double>(cfg.samples);
      const Complex limit = limit_char_trace_power(theta, radius, cfg.d, sv);
      sup = std::max(sup, std::abs(ecf - limit));
      r.rows.push_back({sv, ecf.real(), ecf.imag(), limit.real(), limit.imag(),
                        std::abs(ecf - limit)});
    }
    // exact limit law by convolution
    std::vector<std::pair<long, double>> comps;
    double limit_mean = 0.0;
    for (long k = 1; k <= cfg.d; ++k) {
      if (cfg.d % k != 0) continue;
      const double mean = theta.theta(k) / static_cast<double>(k) *
                          std::pow(radius, static_cast<double>(k));
      comps.emplace_back(k, mean);
      limit_mean += static_cast<double>(k) * mean;
    }
    long j_max = 50;
    for (const auto& [j, c] : counts) j_max = std::max(j_max, j);
    const auto pmf = pmf_weighted_poisson_sum(comps, j_max);
    const double tv = tv_distance(counts, cfg.samples, pmf);
    const double mean = sum / static_cast<double>(cfg.samples);
    const double var = sumsq / static_cast<double>(cfg.samples) - mean * mean;
    const double se = std::sqrt(var / static_cast<double>(cfg.samples));
    r.metrics.emplace_back("tv_distance", tv);
    r.metrics.emplace_back("empirical_mean", mean);
    r.metrics.emplace_back("limit_mean", limit_mean);
    r.verdicts.push_back({"sup_ecf_distance", sup <= 0.02, sup, 0.02, ""});
    r.verdicts.push_back({"tv_to_limit", tv <= 0.02, tv, 0.02, ""});
    r.verdicts.push_back({"mean_within_3se", std::abs(mean - limit_mean) <= 3 * se,
                          std::abs(mean - limit_mean), 3 * se, ""});
  } else {
    const CircleFunction f = parse_function(cfg.function_spec);
    r.config.emplace_back("function", cfg.function_spec);
    const Complex c0 = f.mean();
    std::vector<Complex> traces(static_cast<std::size_t>(cfg.samples));
    parallel_indexed(cfg.samples, cfg.workers, [&](long i) {
      RandomStream local = base.substream(static_cast<std::uint64_t>(i));
      const CycleType c = sampler.sample(cfg.n, local);
      Complex t;
      if (z.kind() == ZLaw::Kind::PointMassOne) {
        t = trace_f(c, f);
      } else {
        const MarkTable marks = sample_wreath_marks(c, z, local);
        t = trace_f_wreath(c, marks, f);
      }
      traces[static_cast<std::size_t>(i)] =
          t - static_cast<double>(cfg.n) * c0;  // center by N c_0
    });
    r.columns = {"s", "ecf_re", "ecf_im", "limit_re", "limit_im", "abs_diff"};
    double sup = 0.0;
    double tail = 0.0;
    for (const double sv : grid) {
      Complex ecf{0.0, 0.0};
      for (const Complex& t : traces) {
        const double damp = std::exp(-sv * t.imag());
        ecf += damp * Complex{std::cos(sv * t.real()), std::sin(sv * t.real())};
      }
      ecf /= static_cast<double>(cfg.samples);
      const LimitChar limit =
          limit_char_trace_f(theta, radius, f, z, sv, cfg.k_max);
      tail = std::max(tail, limit.tail_bound);
      sup = std::max(sup, std::abs(ecf - limit.value));
      r.rows.push_back({sv, ecf.real(), ecf.imag(), limit.value.real(),
                        limit.value.imag(), std::abs(ecf - limit.value)});
    }
    r.metrics.emplace_back("tail_bound", tail);
    r.verdicts.push_back({"sup_ecf_distance", sup <= 0.02, sup, 0.02, ""});
  }
  r.wall_seconds = timer.seconds();
  return r;
}

ExperimentResult cmd_clt(const ExperimentConfig& cfg) {
  Timer timer;
  const ThetaSequence theta = parse_model(cfg.model);
  const auto& desc = theta.descriptor();
  require(static_cast<bool>(desc) && desc->cls == SingularityClass::F &&
              std::abs(desc->r - 1.0) < 1e-12 && !cfg.model.starts_with("geom"),
          "clt: classical Ewens model required (ewens:theta)");
  const double theta_const = desc->vartheta;
  const CircleFunction f = parse_function(cfg.function_spec);
  require(f.is_real(), "clt: real-valued F required");
  const ZLaw z = parse_zlaw(cfg.zlaw_spec);
  require(cfg.p > std::max(1.0 / theta_const, 2.0),
          "clt: --p > max(1/theta, 2) required");

  ExperimentResult r;
  echo_common(cfg, r);
  r.config.emplace_back("function", cfg.function_spec);
  r.config.emplace_back("zlaw", cfg.zlaw_spec);
  r.config.emplace_back("p", fmt(cfg.p));

  const CltQuantities q = clt_quantities(theta_const, f, z, cfg.n, cfg.p);
  require(q.v_n > 0.0, "clt: degenerate variance (V_N = 0)");
  const auto samples =
      standardized_trace(theta_const, f, z, cfg.n, cfg.samples,
                         RandomStream(cfg.seed, 0), cfg.workers);
  const double ks = ks_statistic(samples, normal_cdf);

  r.metrics.emplace_back("v_n", q.v_n);
  r.metrics.emplace_back("e_n", q.e_n);
  r.metrics.emplace_back("lyapunov_ratio", q.lyapunov_ratio);
  for (const long nn : {cfg.n / 16, cfg.n / 4, cfg.n}) {
    if (nn < 4) continue;
    const CltQuantities qq = clt_quantities(theta_const, f, z, nn, cfg.p);
    r.metrics.emplace_back("lyapunov_ratio_n" + std::to_string(nn),
                           qq.lyapunov_ratio);
  }
  r.metrics.emplace_back("ks_normal", ks);
  r.verdicts.push_back({"ks_normal", ks <= 0.03, ks, 0.03,
                        "fails by design for Laurent F (non-Gaussian limit)"});
  r.columns = {"index", "standardized_trace"};
  for (std::size_t i = 0; i < samples.size(); ++i)
    r.rows.push_back({static_cast<double>(i), samples[i]});
  r.wall_seconds = timer.seconds();
  return r;
}

namespace {

ExperimentResult moments_impl(const ExperimentConfig& cfg, bool autocorr) {
  Timer timer;
  const ThetaSequence theta = parse_model(cfg.model);
  const int s1 = autocorr ? 1 : cfg.s1;
  const int s2 = autocorr ? 1 : cfg.s2;
  require(s1 >= 0 && s2 >= 0, "moments: s1, s2 >= 0");
  require(cfg.n >= 1, "moments: --n >= 1");
  const Complex x1 = cfg.x1;
  const Complex x2 = cfg.x2;
  const BivariatePolynomial p = charpoly_expand(s1, s2);

  const bool x1_on_circle = std::abs(std::abs(x1) - 1.0) <= 1e-9;
  const bool x2_on_circle = std::abs(std::abs(x2) - 1.0) <= 1e-9;
  const bool on_circle = x1_on_circle && (s2 == 0 || x2_on_circle);
  const bool inside = std::abs(x1) < 1.0 && (s2 == 0 || std::abs(x2) < 1.0);
  require(on_circle || inside,
          "moments: points must be inside the disc or both on the circle");

  ExperimentResult r;
  echo_common(cfg, r);
  r.config.emplace_back("s1", std::to_string(s1));
  r.config.emplace_back("s2", std::to_string(s2));
  r.config.emplace_back("x1", fmt(x1.real()) + "," + fmt(x1.imag()));
  r.config.emplace_back("x2", fmt(x2.real()) + "," + fmt(x2.imag()));
  r.config.emplace_back("regime", on_circle ? "circle" : "inside");

  const auto exact = exact_moment_profile(theta, p, x1, x2, cfg.n);
  MomentAsymptotics asym;
  if (on_circle) {
    const Complex cx2 = (s2 == 0) ? Complex{1.0, 0.0} : x2;
    asym = asym_moment_circle(theta, p, x1, cx2);
  } else {
    asym = asym_moment_inside(theta, p, x1, x2);
  }

  r.columns = {"N",       "exact_re", "exact_im", "asym_re",
               "asym_im", "abs_diff", "n_abs_diff"};
  for (const long n : n_sweep(cfg.n)) {
    const Complex ex = exact[static_cast<std::size_t>(n)];
    const Complex pred =
        on_circle ? asym.evaluate_dominant(n) : asym.evaluate(n);
    const double diff = std::abs(ex - pred);
    r.rows.push_back({static_cast<double>(n), ex.real(), ex.imag(),
                      pred.real(), pred.imag(), diff,
                      static_cast<double>(n) * diff});
  }
  if (r.rows.size() >= 2) {
    const double first = r.rows.front()[5];
    const double last = r.rows.back()[5];
    r.metrics.emplace_back("abs_diff_first", first);
    r.metrics.emplace_back("abs_diff_last", last);
    r.verdicts.push_back({"error_decays", last <= first || last < 1e-12, last,
                          first, "abs err at largest N vs smallest N"});
  }
  r.wall_seconds = timer.seconds();
  return r;
}

}  // namespace

ExperimentResult cmd_moments(const ExperimentConfig& cfg) {
  return moments_impl(cfg, false);
}

ExperimentResult cmd_autocorr(const ExperimentConfig& cfg) {
  return moments_impl(cfg, true);
}

ExperimentResult cmd_selftest(const ExperimentConfig& cfg) {
  Timer timer;
  const auto verdicts = run_acceptance(cfg.seed);
  ExperimentResult r;
  echo_common(cfg, r);
  r.columns = {"criterion", "pass", "observed", "threshold", "seconds"};
  long idx = 0;
  for (const auto& v : verdicts) {
    r.rows.push_back({static_cast<double>(idx++), v.pass ? 1.0 : 0.0,
                      v.observed, v.threshold, v.seconds});
    r.verdicts.push_back(
        {v.id + " " + v.name, v.pass, v.observed, v.threshold, v.note});
  }
  r.wall_seconds = timer.seconds();
  return r;
}

ExperimentResult run_command(const ExperimentConfig& cfg) {
  if (cfg.command == "hn") return cmd_hn(cfg);
  if (cfg.command == "sample") return cmd_sample(cfg);
  if (cfg.command == "trace-dist") return cmd_trace_dist(cfg);
  if (cfg.command == "clt") return cmd_clt(cfg);
  if (cfg.command == "moments") return cmd_moments(cfg);
  if (cfg.command == "autocorr") return cmd_autocorr(cfg);
  if (cfg.command == "selftest") return cmd_selftest(cfg);
  throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

void write_csv(const ExperimentResult& r, std::ostream& os) {
  os << "# permstat " << r.command << "\n";
  for (const auto& [k, v] : r.config) os << "# " << k << "=" << v << "\n";
  for (const auto& [k, v] : r.metrics) os << "# metric " << k << "=" << fmt(v)
                                          << "\n";
  for (const auto& v : r.verdicts)
    os << "# verdict " << (v.pass ? "pass" : "fail") << " observed="
       << fmt(v.observed) << " threshold=" << fmt(v.threshold) << " " << v.name
       << "\n";
  os << "# columns: ";
  for (std::size_t i = 0; i < r.columns.size(); ++i)
    os << (i ? "," : "") << r.columns[i];
  os << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << fmt(row[i]);
    os << "\n";
  }
}

void write_json(const ExperimentResult& r, std::ostream& os) {
  nlohmann::json j;
  j["command"] = r.command;
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [k, v] : r.config) config[k] = v;
  j["config"] = config;
  nlohmann::json metrics = nlohmann::json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  j["metrics"] = metrics;
  j["columns"] = r.columns;
  j["rows"] = r.rows;
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back({{"name", v.name},
                        {"pass", v.pass},
                        {"observed", v.observed},
                        {"threshold", v.threshold},
                        {"note", v.note}});
  j["verdicts"] = verdicts;
  os << j.dump(2) << "\n";
}

void write_result(const ExperimentResult& r, const ExperimentConfig& cfg) {
  const auto emit = [&](std::ostream& os) {
    if (cfg.format == "json")
      write_json(r, os);
    else
      write_csv(r, os);
  };
  if (cfg.out.empty()) {
    emit(std::cout);
    return;
  }
  std::ofstream out(cfg.out);
  if (!out)
    throw std::runtime_error("cannot open output file '" + cfg.out + "'");
  emit(out);
}

}  // namespace permstat
