#include <cmath>
#include <vector>

#include "doctest.h"
#include "ncs/errors.hpp"
#include "ncs/hyper.hpp"
#include "ncs/pho.hpp"
#include "ncs/quadrature.hpp"
#include "ncs/states.hpp"
#include "ncs/thermal.hpp"
#include "oracles.hpp"

using namespace ncs;

namespace {
void check_rel(double a, double b, double tol) {
  REQUIRE(std::isfinite(a));
  CHECK(std::fabs(a - b) <= tol * std::fabs(b));
}
}  // namespace

TEST_CASE("thermal parameters and weights") {
  CHECK_THROWS_AS(ThermalParams::from_nbar(0.0), error);
  CHECK_THROWS_AS(ThermalParams::from_nbar(-1.0), error);
  const ThermalParams t = ThermalParams::from_nbar(1.0);
  CHECK(t.ratio() == doctest::Approx(0.5).epsilon(1e-15));
  // beta hbar omega = ln 2 gives nbar = 1
  const ThermalParams tt = ThermalParams::from_temperature(std::log(2.0), 1.0);
  CHECK(tt.nbar == doctest::Approx(1.0).epsilon(1e-14));

  const auto w = thermal_weights(t, 1e-14);
  REQUIRE(w.size() > 10);
  CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w[3] == doctest::Approx(0.5 * 0.125).epsilon(1e-14));
  double s = 0.0;
  for (double v : w) s += v;
  CHECK(std::fabs(s - 1.0) <= 1e-13);
}

TEST_CASE("canonical husimi closed form") {
  const StateFamily fam(HypergeometricModel({}, {}), Flavor::bg);
  for (double nbar : {0.1, 1.0, 10.0}) {
    const ThermalParams t = ThermalParams::from_nbar(nbar);
    for (double x : {0.0, 0.5, 2.0, 20.0}) {
      check_rel(husimi_q(fam, t, x),
                std::exp(-x / (nbar + 1.0)) / (nbar + 1.0), 1e-12);
    }
  }
}

TEST_CASE("canonical p closed form and generic agreement") {
  const StateFamily fam(HypergeometricModel({}, {}), Flavor::bg);
  for (double nbar : {0.1, 1.0, 10.0}) {
    const ThermalParams t = ThermalParams::from_nbar(nbar);
    for (double x : {0.2, 1.0, 5.0, 20.0}) {
      const double closed = std::exp(-x / nbar) / nbar;
      check_rel(p_quasi(fam, t, x), closed, 1e-12);
      check_rel(p_quasi_weight_ratio(fam, t, x), closed, 1e-10);
    }
  }
}

TEST_CASE("power-weight p closed form and generic agreement") {
  const StateFamily fam(pho_model(1.4), Flavor::bg);
  const ThermalParams t = ThermalParams::from_nbar(0.7);
  for (double x : {0.3, 1.0, 4.0}) {
    const double closed =
        std::exp(-x / 0.7 + 1.4 * std::log1p(1.0 / 0.7)) / 0.7;
    check_rel(p_quasi(fam, t, x), closed, 1e-12);
    check_rel(p_quasi_weight_ratio(fam, t, x), closed, 1e-10);
  }
}

TEST_CASE("husimi against the series oracle for the power family") {
  const double k = 1.0;
  const StateFamily fam(pho_model(k), Flavor::bg);
  const ThermalParams t = ThermalParams::from_nbar(1.0);
  for (double x : {0.5, 2.0, 7.0}) {
    const double want = 0.5 *
                        oracles::pfq_direct({1.0}, {k + 1.0}, 0.5 * x, 300) /
                        oracles::pfq_direct({1.0}, {k + 1.0}, x, 300);
    check_rel(husimi_q(fam, t, x), want, 1e-12);
  }
}

TEST_CASE("dual-family husimi frozen value and swapped variant") {
  const StateFamily fam(pho_model(1.0), Flavor::kp);
  const ThermalParams t = ThermalParams::from_nbar(1.0);
  // frozen with mpmath 1.3.0
  check_rel(husimi_q(fam, t, 2.0), 0.12262648039048077387, 1e-12);
  check_rel(husimi_q(fam, t, 2.0, DiagonalForm::fock_expansion),
            0.12262648039048077387, 1e-12);
  // swapped-normalization variant: numerator series from the partner model
  const double e = std::exp(1.0);
  const double want = 0.5 * (e - 1.0) / (3.0 * e * e);
  check_rel(husimi_q(fam, t, 2.0, DiagonalForm::swapped_normalization), want,
            1e-12);
}

TEST_CASE("dual-family p stays finite and positive on the ray") {
  const StateFamily fam(pho_model(1.0), Flavor::kp);
  const ThermalParams t = ThermalParams::from_nbar(1.0);
  double prev = 0.0;
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double v = p_quasi(fam, t, x);
    CHECK(v > 0.0);
    CHECK(std::isfinite(v));
    if (x > 0.1) CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("moment condition of the diagonal representation") {
  SUBCASE("canonical frozen rows") {
    const StateFamily fam(HypergeometricModel({}, {}), Flavor::bg);
    const ThermalParams t = ThermalParams::from_nbar(1.0);
    const auto rows =
        p_moment_condition_check(fam, t, 2, RadialQuadrature::adaptive_rule(1e-11));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].expected == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rows[1].expected == doctest::Approx(0.25).epsilon(1e-14));
    check_rel(rows[0].computed, 0.5, 1e-10);
    check_rel(rows[1].computed, 0.25, 1e-10);
    check_rel(rows[2].computed, 0.25, 1e-10);
    for (const auto& row : rows) CHECK(row.rel_err <= 1e-10);
  }
  SUBCASE("power family") {
    const StateFamily fam(pho_model(2.0), Flavor::bg);
    const ThermalParams t = ThermalParams::from_nbar(0.5);
    const auto rows =
        p_moment_condition_check(fam, t, 3, RadialQuadrature::adaptive_rule(1e-11));
    // rho(3) (1/3)^3 / 1.5 with rho(3) = 3*4*5
    check_rel(rows[3].expected, 60.0 / 40.5, 1e-13);
    for (const auto& row : rows) CHECK(row.rel_err <= 1e-8);
  }
  SUBCASE("dual family") {
    const StateFamily fam(pho_model(1.0), Flavor::kp);
    const ThermalParams t = ThermalParams::from_nbar(1.0);
    const auto rows =
        p_moment_condition_check(fam, t, 2, RadialQuadrature::adaptive_rule(1e-10));
    for (const auto& row : rows) CHECK(row.rel_err <= 1e-6);
  }
}

TEST_CASE("small-parameter limit collapses to the canonical family") {
  const StateFamily eps(pho_model(1e-12), Flavor::bg);
  const StateFamily canon(HypergeometricModel({}, {}), Flavor::bg);
  const ThermalParams t = ThermalParams::from_nbar(1.0);
  for (double x : {0.5, 1.0, 2.0}) {
    check_rel(husimi_q(eps, t, x), husimi_q(canon, t, x), 1e-10);
    check_rel(p_quasi(eps, t, x), p_quasi(canon, t, x), 1e-10);
    check_rel(eps.measure_weight_reduced(x), std::exp(-x), 1e-10);
    check_rel(eps.normalization(x), std::exp(x), 1e-10);
  }
}

TEST_CASE("moment rows track the geometric weights") {
  // each row n compares against p_n rho(n): the factorized expected value
  const StateFamily fam(pho_model(1.0), Flavor::bg);
  const ThermalParams t = ThermalParams::from_nbar(2.0);
  const auto rows =
      p_moment_condition_check(fam, t, 4, RadialQuadrature::adaptive_rule(1e-11));
  const auto weights = thermal_weights(t, 1e-16);
  for (const auto& row : rows) {
    const double want = weights[row.n] * structure_rho(pho_model(1.0), row.n);
    check_rel(row.expected, want, 1e-12);
    CHECK(row.rel_err <= 1e-8);
  }
}
