// permstat: reproducible experiments over random permutation matrices under
// weighted cycle measures. See README.md for the column schemas.

#include <complex>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "permstat/acceptance.hpp"
#include "permstat/experiment.hpp"

namespace {

std::complex<double> parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("point", "expected re,im");
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statistics of random permutation matrices under weighted "
               "cycle measures"};
  app.require_subcommand(1);

  permstat::ExperimentConfig cfg;
  if (const char* env = std::getenv("PERMSTAT_SEED"))
    cfg.seed = std::strtoull(env, nullptr, 10);

  std::string x1_spec, x2_spec;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "model spec: ewens:t | geom:t,q | "
                                          "perturbed:t,c,g");
    sub->add_option("--n", cfg.n, "matrix dimension N");
    sub->add_option("--samples", cfg.samples, "Monte Carlo sample count");
    sub->add_option("--seed", cfg.seed, "base RNG seed (PERMSTAT_SEED default)");
    sub->add_option("--workers", cfg.workers, "worker threads (replica split)");
    sub->add_option("--format", cfg.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  };

  auto* hn = app.add_subcommand("hn", "normalization constants, exact vs "
                                      "asymptotic");
  add_common(hn);
  hn->add_flag("--asym,!--exact-only", cfg.asym,
               "include the asymptotic column (default on)");

  auto* sample = app.add_subcommand("sample", "draw cycle types or eigenangles");
  add_common(sample);
  sample->add_option("--zlaw", cfg.zlaw_spec, "point | uniform | atoms:a=p,...");
  sample->add_option("--emit", cfg.emit, "cycles | angles");

  auto* trace = app.add_subcommand("trace-dist", "trace statistics vs their "
                                                 "limit laws");
  add_common(trace);
  trace->add_option("--d", cfg.d, "power: statistic tr(sigma^d)");
  trace->add_option("--function", cfg.function_spec,
                    "laurent:d=c,... | arc:a,b | fourier:file.json | cos");
  trace->add_option("--zlaw", cfg.zlaw_spec, "mark law");
  trace->add_option("--s-grid", cfg.s_grid, "characteristic-function grid a:b:count");
  trace->add_option("--kmax", cfg.k_max, "cutoff for the limit series");

  auto* clt = app.add_subcommand("clt", "diverging-variance standardized traces");
  add_common(clt);
  clt->add_option("--function", cfg.function_spec, "real test function")
      ->required();
  clt->add_option("--zlaw", cfg.zlaw_spec, "mark law");
  clt->add_option("--p", cfg.p, "moment exponent p > max(1/theta, 2)");

  auto* moments = app.add_subcommand("moments", "characteristic-polynomial "
                                                "moments, exact vs asymptotic");
  add_common(moments);
  moments->add_option("--s1", cfg.s1, "exponent of Z_N(x1)");
  moments->add_option("--s2", cfg.s2, "exponent of Z_N(x2)");
  moments->add_option("--x1", x1_spec, "first point re,im")->required();
  moments->add_option("--x2", x2_spec, "second point re,im");

  auto* autocorr = app.add_subcommand("autocorr", "two-point autocorrelation "
                                                  "on the unit circle");
  add_common(autocorr);
  autocorr->add_option("--x1", x1_spec, "first point re,im")->required();
  autocorr->add_option("--x2", x2_spec, "second point re,im")->required();

  auto* selftest = app.add_subcommand("selftest", "run the built-in "
                                                  "verification suite");
  add_common(selftest);

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!x1_spec.empty()) cfg.x1 = parse_point(x1_spec);
    if (!x2_spec.empty()) cfg.x2 = parse_point(x2_spec);
    const permstat::ExperimentResult result = permstat::run_command(cfg);
    permstat::write_result(result, cfg);
    if (cfg.command == "selftest") {
      bool ok = true;
      for (const auto& v : result.verdicts) ok = ok && v.pass;
      if (!ok) {
        std::cerr << "selftest: failures reported above\n";
        return 1;
      }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "permstat: " << e.what() << "\n";
    return 2;
  }
}
