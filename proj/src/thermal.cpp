#include "ncs/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ncs/errors.hpp"

namespace ncs {

namespace {

void require_valid(const ThermalParams& t, const char* op) {
  if (!(t.nbar > 0.0) || !std::isfinite(t.nbar)) {
    fail(errc::invalid_argument, op, "nbar must be positive and finite");
  }
}

}  // namespace

ThermalParams ThermalParams::from_nbar(double nbar) {
  ThermalParams t{nbar};
  require_valid(t, "ThermalParams");
  return t;
}

ThermalParams ThermalParams::from_temperature(double beta, double hbar_omega) {
  if (!(beta > 0.0) || !(hbar_omega > 0.0)) {
    fail(errc::invalid_argument, "ThermalParams", "beta and hbar_omega must be positive");
  }
  return from_nbar(1.0 / std::expm1(beta * hbar_omega));
}

std::vector<double> thermal_weights(const ThermalParams& t, double tail_tol) {
  require_valid(t, "thermal_weights");
  if (!(tail_tol > 0.0) || !(tail_tol < 1.0)) {
    fail(errc::invalid_argument, "thermal_weights", "tail_tol must lie in (0, 1)");
  }
  const double r = t.ratio();
  const int n_terms = std::min(
      200000, static_cast<int>(std::ceil(std::log(tail_tol) / std::log(r))) + 1);
  std::vector<double> p(n_terms);
  double w = 1.0 / (t.nbar + 1.0);
  for (int n = 0; n < n_terms; ++n) {
    p[n] = w;
    w *= r;
  }
  return p;
}

double husimi_q(const StateFamily& family, const ThermalParams& t, double x,
                DiagonalForm form) {
  require_valid(t, "husimi_q");
  const double den = family.normalization(x);
  const double arg = t.ratio() * x;
  const double num = form == DiagonalForm::fock_expansion
                         ? pfq(family.effective(), arg, family.budget())
                         : pfq(swapped(family.effective()), arg, family.budget());
  return num / ((t.nbar + 1.0) * den);
}

double p_quasi(const StateFamily& family, const ThermalParams& t, double x) {
  require_valid(t, "p_quasi");
  if (!(x >= 0.0)) fail(errc::invalid_argument, "p_quasi", "x must be nonnegative");
  const MeijerWeight& w = family.weight();
  if (weight_form(w) == WeightForm::gamma_power) {
    const double kappa = gamma_power_exponent(w);
    return std::exp(-w.scale * x / t.nbar + kappa * std::log1p(1.0 / t.nbar)) / t.nbar;
  }
  return p_quasi_weight_ratio(family, t, x);
}

double p_quasi_weight_ratio(const StateFamily& family, const ThermalParams& t, double x) {
  require_valid(t, "p_quasi");
  if (!(x >= 0.0)) fail(errc::invalid_argument, "p_quasi", "x must be nonnegative");
  auto ev = family.weight_evaluator();
  const double log_den = ev->log_at(x);
  if (!std::isfinite(log_den)) {
    fail(errc::division_unstable, "p_quasi",
         "weight vanishes at x=" + std::to_string(x) + ", ratio form undefined there");
  }
  const double log_num = ev->log_at(x * (t.nbar + 1.0) / t.nbar);
  if (log_num == -std::numeric_limits<double>::infinity()) return 0.0;
  const double lg = log_num - log_den - std::log(t.nbar);
  if (lg > 709.0) fail(errc::overflow, "p_quasi", "ratio exceeds double range");
  return std::exp(lg);
}

std::vector<MomentRow> p_moment_condition_check(const StateFamily& family,
                                                const ThermalParams& t, int n_max,
                                                const RadialQuadrature& rule) {
  require_valid(t, "p_moment_condition_check");
  if (n_max < 0) {
    fail(errc::invalid_argument, "p_moment_condition_check", "n_max must be nonnegative");
  }
  const double upper = support_bound(family.weight());
  std::vector<MomentRow> rows;
  rows.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const auto f = [&](double x) {
      if (x <= 0.0) return 0.0;
      return family.measure_weight_reduced(x) * p_quasi(family, t, x) * std::pow(x, n);
    };
    const double computed = integrate(rule, f, upper).value;
    const double expected =
        family.rho(n) * std::pow(t.ratio(), n) / (t.nbar + 1.0);
    rows.push_back({n, computed, expected,
                    std::fabs(computed - expected) / std::fabs(expected)});
  }
  return rows;
}

}  // namespace ncs
