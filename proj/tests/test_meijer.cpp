#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"
#include "ncs/errors.hpp"
#include "ncs/hyper.hpp"
#include "ncs/meijer.hpp"
#include "ncs/pho.hpp"
#include "ncs/quadrature.hpp"
#include "oracles.hpp"

using namespace ncs;

namespace {
void check_rel(double a, double b, double tol) {
  REQUIRE(std::isfinite(a));
  CHECK(std::fabs(a - b) <= tol * std::fabs(b));
}
}  // namespace

TEST_CASE("canonical weight is the plain exponential") {
  const MeijerWeight w = bg_weight(HypergeometricModel({}, {}));
  CHECK(weight_form(w) == WeightForm::gamma_power);
  CHECK(gamma_power_exponent(w) == doctest::Approx(0.0));
  for (double x : {0.1, 1.0, 5.0}) {
    check_rel(weight_eval(w, x), std::exp(-x), 1e-14);
    CHECK(weight_eval_log(w, x) == doctest::Approx(-x).epsilon(1e-14));
  }
  CHECK(weight_eval(w, 0.0) == doctest::Approx(1.0));
  CHECK(std::isinf(support_bound(w)));
}

TEST_CASE("scaled weight contracts the argument") {
  const MeijerWeight w = bg_weight(HypergeometricModel({}, {}), 2.0);
  for (double x : {0.3, 1.7}) check_rel(weight_eval(w, x), std::exp(-2.0 * x), 1e-14);
  // Mellin values carry the scale: integral W x^n dx = 2^{-(n+1)} n!
  check_rel(mellin(w, 3.0), 2.0 / 8.0, 1e-13);
}

TEST_CASE("power-law family weight") {
  const MeijerWeight w = bg_weight(pho_model(1.3));
  CHECK(weight_form(w) == WeightForm::gamma_power);
  CHECK(gamma_power_exponent(w) == doctest::Approx(1.3).epsilon(1e-14));
  for (double x : {0.2, 1.0, 4.0}) {
    check_rel(weight_eval(w, x), std::exp(-x) * std::pow(x, 1.3), 1e-13);
  }
  CHECK(weight_eval(w, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("finite-support weight reduces to a polynomial slice") {
  const HypergeometricModel m({1.0, 3.0}, {2.0});
  const MeijerWeight w = bg_weight(m);
  CHECK(weight_form(w) == WeightForm::rational_sum);
  CHECK(gamma_surplus(w) == 0);
  CHECK(support_bound(w) == doctest::Approx(1.0));
  check_rel(mellin(w, 2.0), 1.0 / 3.0, 1e-13);
  for (double x : {0.25, 0.5, 0.9}) check_rel(weight_eval(w, x), x, 1e-12);
  CHECK(weight_eval(w, 1.5) == doctest::Approx(0.0));
  // moments match the structure function of the model
  for (int n : {0, 1, 4}) {
    check_rel(mellin(w, n + 1.0) / gamma_ratio(m), structure_rho(m, n), 1e-12);
  }
}

TEST_CASE("flat finite-support weight") {
  const HypergeometricModel m({2.0}, {});
  const MeijerWeight w = bg_weight(m);
  CHECK(weight_form(w) == WeightForm::rational_sum);
  for (double x : {0.1, 0.7}) check_rel(weight_eval(w, x), 1.0, 1e-12);
  check_rel(mellin(w, 4.0), 0.25, 1e-13);
}

TEST_CASE("contour tier reproduces the frozen beta-smoothed values") {
  // Mellin Gamma(s)^2 / Gamma(1+s); values frozen from mpmath 1.3.0
  const MeijerWeight w = kp_weight(pho_model(1.0));
  CHECK(weight_form(w) == WeightForm::contour);
  CHECK(gamma_surplus(w) == 1);
  const std::vector<std::pair<double, double>> table = {
      {0.5, 0.55977359477616081175},
      {1.0, 0.21938393439552027368},
      {2.0, 0.048900510708061119567},
      {5.0, 0.0011482955912753257973},
  };
  for (const auto& [x, want] : table) check_rel(weight_eval(w, x), want, 1e-9);
}

TEST_CASE("contour tier matches the smooth-substitution oracle") {
  for (double k : {0.5, 1.0, 2.5}) {
    const MeijerWeight w = kp_weight(pho_model(k));
    for (double x : {0.3, 0.8, 1.0, 3.0}) {
      check_rel(weight_eval(w, x), oracles::kp_pho_weight(k, x), 1e-8);
    }
  }
  // frozen from mpmath 1.3.0 at k = 2.5
  const MeijerWeight w25 = kp_weight(pho_model(2.5));
  check_rel(weight_eval(w25, 0.5), 0.12737054135816026765, 1e-8);
  check_rel(weight_eval(w25, 2.0), 0.0048933237441569372276, 1e-8);
}

TEST_CASE("contour and registry tiers agree where both apply") {
  // force the contour path on a weight the registry can do in closed form
  const MeijerWeight w = bg_weight(pho_model(1.3));
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    check_rel(weight_eval_contour(w, x), std::exp(-x) * std::pow(x, 1.3), 1e-8);
  }
}

TEST_CASE("log evaluation agrees with the linear one") {
  const MeijerWeight w = kp_weight(pho_model(1.0));
  for (double x : {0.4, 1.3, 4.0}) {
    check_rel(std::exp(weight_eval_log(w, x)), weight_eval(w, x), 1e-11);
  }
}

TEST_CASE("weight stays nonnegative across the support") {
  for (double k : {0.5, 1.0, 2.5}) {
    const MeijerWeight w = kp_weight(pho_model(k));
    for (int i = 0; i < 64; ++i) {
      const double x = 1e-3 * std::pow(30.0 / 1e-3, i / 63.0);
      CHECK(weight_eval(w, x) >= 0.0);
    }
  }
}

TEST_CASE("weight argument validation") {
  const MeijerWeight w = bg_weight(HypergeometricModel({}, {}));
  CHECK_THROWS_AS(weight_eval(w, -1.0), error);
  CHECK_THROWS_AS(bg_weight(HypergeometricModel({}, {}), -2.0), error);
}

TEST_CASE("moment check ties quadrature back to the mellin values") {
  SUBCASE("exponential tier") {
    const MeijerWeight w = bg_weight(HypergeometricModel({}, {}));
    for (const auto& row : moment_check(w, 10, RadialQuadrature::gauss(128))) {
      CHECK(row.rel_err <= 5e-12);
    }
  }
  SUBCASE("power tier") {
    const MeijerWeight w = bg_weight(pho_model(2.2));
    for (const auto& row : moment_check(w, 10, RadialQuadrature::gauss(128))) {
      CHECK(row.rel_err <= 1e-10);
    }
  }
  SUBCASE("contour tier with known moment values") {
    const MeijerWeight w = kp_weight(pho_model(1.0));
    const auto rows =
        moment_check(w, 6, RadialQuadrature::adaptive_rule(1e-9));
    for (const auto& row : rows) {
      CHECK(row.rel_err <= 1e-6);
      // integral of the beta-smoothed exponential: n! / (n+1)
      check_rel(row.expected, std::tgamma(row.n + 1.0) / (row.n + 1.0), 1e-12);
    }
  }
  SUBCASE("finite-support tier") {
    const MeijerWeight w = bg_weight(HypergeometricModel({1.0, 3.0}, {2.0}));
    for (const auto& row :
         moment_check(w, 8, RadialQuadrature::adaptive_rule(1e-11))) {
      CHECK(row.rel_err <= 1e-9);
    }
  }
}

TEST_CASE("scale covariance of the moments") {
  const HypergeometricModel m = pho_model(1.5);
  const MeijerWeight w1 = bg_weight(m, 1.0);
  const MeijerWeight w3 = bg_weight(m, 3.0);
  for (int n : {0, 2, 5}) {
    check_rel(mellin(w3, n + 1.0),
              mellin(w1, n + 1.0) * std::pow(3.0, -(n + 1.0)), 1e-12);
  }
}

TEST_CASE("shared evaluator caches pointwise values") {
  const auto ev = make_weight_evaluator(kp_weight(pho_model(1.0)));
  const double v1 = ev->at(1.7);
  const double v2 = ev->at(1.7);
  CHECK(v1 == v2);
  check_rel(std::exp(ev->log_at(1.7)), v1, 1e-12);
  check_rel(v1, oracles::kp_pho_weight(1.0, 1.7), 1e-8);
}
