#include <doctest.h>

#include <cmath>
#include <complex>

#include "permstat/hwang.hpp"
#include "permstat/partition.hpp"
#include "permstat/series.hpp"
#include "permstat/theta.hpp"

using permstat::Complex;

TEST_SUITE("theta_models") {

TEST_CASE("ewens: normalizers and descriptor") {
  const auto e1 = permstat::ewens(1.0);
  const auto h1 = permstat::compute_h(e1, 20);
  for (long n = 0; n <= 20; ++n)
    CHECK(h1.scaled(n) == doctest::Approx(1.0).epsilon(1e-13));

  const auto e2 = permstat::ewens(2.0);
  CHECK(permstat::compute_h(e2, 3).scaled(3) == doctest::Approx(4.0));

  const auto eh = permstat::ewens(0.5);
  CHECK(permstat::compute_h(eh, 1).scaled(1) == doctest::Approx(0.5));

  CHECK(e1.descriptor()->cls == permstat::SingularityClass::F);
  CHECK(e1.descriptor()->r == doctest::Approx(1.0));
  CHECK(e1.descriptor()->vartheta == doctest::Approx(1.0));
  CHECK(std::abs(e1.descriptor()->bigk) == 0.0);
}

TEST_CASE("geometric_ewens: h values and radius") {
  const auto g = permstat::geometric_ewens(1.0, 0.5);
  const auto h = permstat::compute_h(g, 2);
  CHECK(h.scaled(1) == doctest::Approx(0.5));
  CHECK(h.scaled(2) == doctest::Approx(0.25));  // theta_2/2 + theta_1^2/2
  CHECK(g.descriptor()->r == doctest::Approx(2.0));

  // cross-check h_2 against the partition oracle
  CHECK(permstat::oracle_h(g, 2) == doctest::Approx(0.25));
}

TEST_CASE("perturbed_ewens: coefficients, g0(r), degenerate case") {
  const auto p = permstat::perturbed_ewens(1.0, 1.0, 1.0);
  CHECK(p.theta(2) == doctest::Approx(1.5));
  // g0(1) = zeta(2)
  CHECK(p.descriptor()->g0_at_r.real() ==
        doctest::Approx(1.6449340668482264).epsilon(1e-10));

  const auto p0 = permstat::perturbed_ewens(1.3, 0.0, 0.7);
  const auto e = permstat::ewens(1.3);
  for (long k = 1; k <= 50; ++k)
    CHECK(p0.theta(k) == doctest::Approx(e.theta(k)));

  CHECK_THROWS_AS(permstat::perturbed_ewens(1.0, -1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("closed forms match partial sums at |z| = r/2") {
  for (const auto& theta :
       {permstat::ewens(0.7), permstat::ewens(2.0),
        permstat::geometric_ewens(1.0, 0.5)}) {
    const double r = theta.descriptor()->r;
    for (const double angle : {0.3, 2.1, 4.0}) {
      const Complex z =
          0.5 * r * Complex{std::cos(angle), std::sin(angle)};
      const Complex phase = z / std::abs(z);
      Complex sum{0.0, 0.0};
      Complex pk{1.0, 0.0};
      for (long k = 1; k <= 2000; ++k) {
        pk *= phase;
        sum += theta.weight_scaled(k, std::abs(z)) * pk /
               static_cast<double>(k);
      }
      CHECK(std::abs(theta.g_closed(z) - sum) < 1e-10);
    }
  }
}

TEST_CASE("class-F h asymptotics: fitted constant <= 5 over [100, 2000]") {
  for (const auto& theta :
       {permstat::ewens(0.5), permstat::ewens(1.0), permstat::ewens(2.0),
        permstat::geometric_ewens(1.0, 0.5)}) {
    const double rho = theta.descriptor()->r;
    const auto h = permstat::compute_h(theta, 2000, rho);
    double fitted = 0.0;
    for (long n = 100; n <= 2000; ++n) {
      const double pred = permstat::h_asym(theta, n, rho).value.real();
      fitted = std::max(fitted, static_cast<double>(n) *
                                    std::abs(pred / h.scaled(n) - 1.0));
    }
    CHECK(fitted <= 5.0);
  }
}

TEST_CASE("theta_k r^k stays bounded and is recorded") {
  for (const auto& theta :
       {permstat::ewens(1.5), permstat::geometric_ewens(0.8, 0.3),
        permstat::perturbed_ewens(1.0, 0.5, 0.5)}) {
    REQUIRE(theta.theta_rk_bound().has_value());
    CHECK(std::isfinite(*theta.theta_rk_bound()));
    CHECK(*theta.theta_rk_bound() > 0.0);
  }
}

TEST_CASE("custom sequences carry no descriptor and refuse asymptotics") {
  const auto custom = permstat::theta_from_table("custom", {1.0, 2.0, 0.5});
  CHECK(!custom.descriptor().has_value());
  CHECK_THROWS_AS(permstat::h_asym(custom, 10), std::logic_error);
  // exact operations still work
  CHECK(permstat::compute_h(custom, 3).scaled(1) == doctest::Approx(1.0));
}

TEST_CASE("positivity is enforced") {
  const auto bad = permstat::theta_from_table("bad", {1.0, 0.0});
  CHECK_THROWS_AS(bad.theta(2), std::domain_error);
}

TEST_CASE("model strings parse with exact arity") {
  CHECK(permstat::parse_model("ewens:2").theta(5) == doctest::Approx(2.0));
  CHECK(permstat::parse_model("geom:1,0.5").theta(2) == doctest::Approx(0.25));
  CHECK(permstat::parse_model("perturbed:1,1,1").theta(2) ==
        doctest::Approx(1.5));
  CHECK_THROWS_AS(permstat::parse_model("ewens"), std::invalid_argument);
  CHECK_THROWS_AS(permstat::parse_model("ewens:1,2"), std::invalid_argument);
  CHECK_THROWS_AS(permstat::parse_model("geom:1"), std::invalid_argument);
  CHECK_THROWS_AS(permstat::parse_model("nosuch:1"), std::invalid_argument);
  CHECK_THROWS_AS(permstat::parse_model("ewens:abc"), std::invalid_argument);
}

}  // TEST_SUITE
