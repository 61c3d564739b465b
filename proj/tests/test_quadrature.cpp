#include <cmath>

#include "doctest.h"
#include "ncs/errors.hpp"
#include "ncs/quadrature.hpp"
#include "oracles.hpp"

using namespace ncs;

namespace {
void check_rel(double a, double b, double tol) {
  REQUIRE(std::isfinite(a));
  CHECK(std::fabs(a - b) <= tol * std::fabs(b));
}
}  // namespace

TEST_CASE("gauss-laguerre rule integrates gamma moments exactly") {
  const auto& rule = gauss_laguerre_rule(32, 0.0);
  REQUIRE(rule.x.size() == 32);
  double s3 = 0.0;
  double s7 = 0.0;
  for (int i = 0; i < 32; ++i) {
    s3 += std::exp(rule.logw[i] + 3.0 * std::log(rule.x[i]));
    s7 += std::exp(rule.logw[i] + 7.0 * std::log(rule.x[i]));
  }
  check_rel(s3, 6.0, 1e-13);
  check_rel(s7, 5040.0, 1e-12);
}

TEST_CASE("generalized gauss-laguerre carries the power weight") {
  const auto& rule = gauss_laguerre_rule(48, 2.5);
  double s = 0.0;
  for (int i = 0; i < 48; ++i)
    s += std::exp(rule.logw[i] + 2.0 * std::log(rule.x[i]));
  // integral of e^{-x} x^{2.5+2} dx
  check_rel(s, std::tgamma(5.5), 1e-12);
}

TEST_CASE("full-weight nodes integrate a decaying integrand") {
  const auto quad = RadialQuadrature::gauss(64);
  const auto res =
      integrate(quad, [](double x) { return std::exp(-x) * x * x * x; });
  check_rel(res.value, 6.0, 1e-12);
  CHECK(res.err_estimate >= 0.0);
}

TEST_CASE("adaptive rule handles non-laguerre decay") {
  const auto quad = RadialQuadrature::adaptive_rule(1e-12);
  const auto res = integrate(quad, [](double x) { return std::exp(-x * x); });
  check_rel(res.value, 0.5 * std::sqrt(3.14159265358979323846), 1e-11);
}

TEST_CASE("adaptive rule on a finite interval with an endpoint kink") {
  const auto quad = RadialQuadrature::adaptive_rule(1e-11);
  const auto res =
      integrate(quad, [](double x) { return std::sqrt(x); }, 1.0);
  check_rel(res.value, 2.0 / 3.0, 1e-9);
}

TEST_CASE("gauss scheme falls back cleanly on finite upper limits") {
  const auto quad = RadialQuadrature::gauss(64);
  const auto res = integrate(quad, [](double x) { return x * x; }, 2.0);
  check_rel(res.value, 8.0 / 3.0, 1e-11);
}

TEST_CASE("uniform midpoint rule on a truncated range") {
  const auto quad = RadialQuadrature::uniform(5.0, 4096);
  const auto res = integrate(quad, [](double x) { return std::exp(-x); });
  check_rel(res.value, -std::expm1(-5.0), 1e-6);
}

TEST_CASE("adaptive rule rejects non-decaying integrands") {
  const auto quad = RadialQuadrature::adaptive_rule(1e-10);
  CHECK_THROWS_AS(
      integrate(quad, [](double x) { return std::sin(x) + 2.0; }),
      error);
}

TEST_CASE("simpson oracle sanity") {
  const double v = oracles::simpson([](double x) { return std::sin(x); }, 0.0,
                                    1.5707963267948966, 512);
  check_rel(v, 1.0, 1e-10);
}
