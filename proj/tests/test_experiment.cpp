#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "permstat/experiment.hpp"
#include "permstat/moments.hpp"

using permstat::ExperimentConfig;
using permstat::ExperimentResult;

namespace {

double metric(const ExperimentResult& r, const std::string& name) {
  for (const auto& [k, v] : r.metrics)
    if (k == name) return v;
  REQUIRE_MESSAGE(false, "missing metric ", name);
  return 0.0;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("function specs parse exactly and reject garbage") {
  const auto cosf = permstat::parse_function("cos");
  CHECK(cosf.laurent_coeffs().has_value());

  const auto laur = permstat::parse_function("laurent:1=1,-1=0.5");
  CHECK(laur.laurent_coeffs()->size() == 2);

  const auto arc = permstat::parse_function("arc:0,pi");
  REQUIRE(arc.arc().has_value());
  CHECK(arc.arc()->b == doctest::Approx(std::numbers::pi));

  const auto shifted = permstat::parse_function("arc:0,pi,-0.5");
  CHECK(shifted.arc()->offset == doctest::Approx(-0.5));

  CHECK_THROWS_AS(permstat::parse_function("sin"), std::invalid_argument);
  CHECK_THROWS_AS(permstat::parse_function("laurent:"), std::invalid_argument);
  CHECK_THROWS_AS(permstat::parse_function("arc:1"), std::invalid_argument);
  CHECK_THROWS_AS(permstat::parse_function("laurent:a=b"), std::exception);
}

TEST_CASE("zlaw and s-grid specs") {
  CHECK(permstat::parse_zlaw("point").kind() ==
        permstat::ZLaw::Kind::PointMassOne);
  CHECK(permstat::parse_zlaw("uniform").kind() ==
        permstat::ZLaw::Kind::UniformCircle);
  const auto atoms = permstat::parse_zlaw("atoms:0=0.25,pi=0.75");
  CHECK(atoms.atoms().size() == 2);
  CHECK_THROWS_AS(permstat::parse_zlaw("atoms:0=0.5"), std::invalid_argument);
  CHECK_THROWS_AS(permstat::parse_zlaw("circle"), std::invalid_argument);

  const auto grid = permstat::parse_sgrid("0:1:11");
  REQUIRE(grid.size() == 11);
  CHECK(grid.front() == doctest::Approx(0.0));
  CHECK(grid.back() == doctest::Approx(1.0));
  CHECK(grid[5] == doctest::Approx(0.5));
  CHECK_THROWS_AS(permstat::parse_sgrid("0:1"), std::invalid_argument);
}

TEST_CASE("cmd_hn: uniform model has ratio exactly 1") {
  ExperimentConfig cfg;
  cfg.command = "hn";
  cfg.model = "ewens:1";
  cfg.n = 64;
  const auto r = permstat::cmd_hn(cfg);
  REQUIRE(r.columns.size() == 5);
  for (const auto& row : r.rows) {
    CHECK(row[3] == doctest::Approx(1.0).epsilon(1e-12));  // ratio
    CHECK(std::isfinite(row[4]));
  }
}

TEST_CASE("cmd_hn: ewens:2 ratio has the N/(N+1) shape") {
  ExperimentConfig cfg;
  cfg.command = "hn";
  cfg.model = "ewens:2";
  cfg.n = 50;
  const auto r = permstat::cmd_hn(cfg);
  for (const auto& row : r.rows) {
    const double n = row[0];
    CHECK(row[3] == doctest::Approx(n / (n + 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("cmd_hn: no descriptor means no asym column only with --exact-only") {
  ExperimentConfig cfg;
  cfg.command = "hn";
  cfg.model = "ewens:1";
  cfg.n = 8;
  cfg.asym = false;
  const auto r = permstat::cmd_hn(cfg);
  CHECK(r.columns.size() == 2);
}

TEST_CASE("cmd_sample: n = 1 rows are all fixed points; deterministic") {
  ExperimentConfig cfg;
  cfg.command = "sample";
  cfg.model = "ewens:1";
  cfg.n = 1;
  cfg.samples = 20;
  const auto r = permstat::cmd_sample(cfg);
  REQUIRE(r.rows.size() == 20);
  for (const auto& row : r.rows) {
    CHECK(row[1] == 1.0);
    CHECK(row[2] == 1.0);
  }
  const auto r2 = permstat::cmd_sample(cfg);
  CHECK(r.rows == r2.rows);
}

TEST_CASE("cmd_sample: 5-cycle frequency near 1/5") {
  ExperimentConfig cfg;
  cfg.command = "sample";
  cfg.model = "ewens:1";
  cfg.n = 5;
  cfg.samples = 20000;
  cfg.seed = 11;
  const auto r = permstat::cmd_sample(cfg);
  long five = 0;
  for (const auto& row : r.rows)
    if (row[1] == 5.0) ++five;
  const double freq = static_cast<double>(five) / 20000.0;
  const double se = std::sqrt(0.2 * 0.8 / 20000.0);
  CHECK(std::abs(freq - 0.2) < 4 * se);
}

TEST_CASE("cmd_trace_dist: d = 2 at small scale") {
  ExperimentConfig cfg;
  cfg.command = "trace-dist";
  cfg.model = "ewens:1";
  cfg.n = 300;
  cfg.samples = 20000;
  cfg.d = 2;
  cfg.seed = 5;
  const auto r = permstat::cmd_trace_dist(cfg);
  CHECK(metric(r, "tv_distance") < 0.05);
  CHECK(std::abs(metric(r, "empirical_mean") - 2.0) < 0.1);
  CHECK(metric(r, "limit_mean") == doctest::Approx(2.0));
  for (const auto& row : r.rows)
    for (double v : row) CHECK(std::isfinite(v));
}

TEST_CASE("cmd_trace_dist: Laurent function path with point marks") {
  ExperimentConfig cfg;
  cfg.command = "trace-dist";
  cfg.model = "ewens:1";
  cfg.n = 300;
  cfg.samples = 20000;
  cfg.function_spec = "laurent:1=1,-1=1";
  cfg.seed = 6;
  cfg.k_max = 8;
  const auto r = permstat::cmd_trace_dist(cfg);
  CHECK(metric(r, "tail_bound") == 0.0);
  bool pass = false;
  for (const auto& v : r.verdicts)
    if (v.name == "sup_ecf_distance") pass = v.pass;
  CHECK(pass);
}

TEST_CASE("cmd_clt: negative control flags Laurent functions") {
  ExperimentConfig cfg;
  cfg.command = "clt";
  cfg.model = "ewens:1";
  cfg.n = 500;
  cfg.samples = 4000;
  cfg.function_spec = "laurent:1=1,-1=1";
  cfg.seed = 8;
  const auto r = permstat::cmd_clt(cfg);
  CHECK(metric(r, "v_n") == doctest::Approx(4.0));
  CHECK(metric(r, "e_n") == doctest::Approx(2.0));
  CHECK(metric(r, "ks_normal") > 0.1);
  bool found = false;
  for (const auto& v : r.verdicts)
    if (v.name == "ks_normal") {
      CHECK(!v.pass);
      found = true;
    }
  CHECK(found);
}

TEST_CASE("cmd_clt rejects complex functions and degenerate variance") {
  ExperimentConfig cfg;
  cfg.command = "clt";
  cfg.model = "ewens:1";
  cfg.n = 100;
  cfg.samples = 10;
  cfg.function_spec = "laurent:2=1";  // complex-valued on the circle
  CHECK_THROWS_AS(permstat::cmd_clt(cfg), std::invalid_argument);
  cfg.function_spec = "arc:1,1";  // empty arc: F = 0
  CHECK_THROWS_AS(permstat::cmd_clt(cfg), std::invalid_argument);
  cfg.function_spec = "arc:0,pi,-0.5";
  cfg.p = 1.5;  // too small
  CHECK_THROWS_AS(permstat::cmd_clt(cfg), std::invalid_argument);
}

TEST_CASE("cmd_moments: closed form inside the disc") {
  ExperimentConfig cfg;
  cfg.command = "moments";
  cfg.model = "ewens:1";
  cfg.n = 40;
  cfg.s1 = 1;
  cfg.s2 = 0;
  cfg.x1 = {0.3, 0.0};
  const auto r = permstat::cmd_moments(cfg);
  for (const auto& row : r.rows) {
    if (row[0] < 1) continue;
    CHECK(row[1] == doctest::Approx(0.7).epsilon(1e-10));  // exact re
    CHECK(row[5] < 1e-10);                                  // abs diff
  }
}

TEST_CASE("cmd_autocorr: prediction tracks the exact values") {
  ExperimentConfig cfg;
  cfg.command = "autocorr";
  cfg.model = "ewens:1";
  cfg.n = 400;
  const double a1 = 2.0 * std::numbers::pi * 0.37;
  const double a2 = 2.0 * std::numbers::pi * 0.81;
  cfg.x1 = {std::cos(a1), std::sin(a1)};
  cfg.x2 = {std::cos(a2), std::sin(a2)};
  const auto r = permstat::cmd_autocorr(cfg);
  bool decays = false;
  for (const auto& v : r.verdicts)
    if (v.name == "error_decays") decays = v.pass;
  CHECK(decays);
}

TEST_CASE("cmd_moments rejects degenerate circle points cleanly") {
  ExperimentConfig cfg;
  cfg.command = "moments";
  cfg.model = "ewens:1";
  cfg.n = 20;
  cfg.s1 = 1;
  cfg.s2 = 1;
  const double a = std::numbers::pi / 3.0;
  cfg.x1 = {std::cos(a), std::sin(a)};
  cfg.x2 = {std::cos(a), -std::sin(a)};  // x1 x2 = 1
  CHECK_THROWS_AS(permstat::cmd_moments(cfg),
                  permstat::NearDegenerateSingularities);
}

TEST_CASE("validation precedes computation") {
  ExperimentConfig cfg;
  cfg.command = "trace-dist";
  cfg.model = "ewens:-1";  // invalid
  cfg.n = 1000000000;      // would be expensive if sampling started
  cfg.samples = 1000000000;
  cfg.d = 1;
  CHECK_THROWS_AS(permstat::cmd_trace_dist(cfg), std::invalid_argument);
}

TEST_CASE("csv writer: finite values, stable format") {
  ExperimentConfig cfg;
  cfg.command = "hn";
  cfg.model = "geom:1,0.5";
  cfg.n = 32;
  const auto r = permstat::cmd_hn(cfg);
  std::ostringstream a, b;
  permstat::write_csv(r, a);
  permstat::write_csv(permstat::cmd_hn(cfg), b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("nan") == std::string::npos);
  CHECK(a.str().find("# columns: N,h_exact_scaled") != std::string::npos);

  std::ostringstream j;
  permstat::write_json(r, j);
  CHECK(j.str().find("\"rows\"") != std::string::npos);
}

TEST_CASE("replicate_indexed is partition-invariant") {
  auto fn = [](long i) { return std::sin(static_cast<double>(i)); };
  const auto a = permstat::replicate_indexed(1000, 1, fn);
  const auto b = permstat::replicate_indexed(1000, 7, fn);
  CHECK(a == b);
}

}  // TEST_SUITE
