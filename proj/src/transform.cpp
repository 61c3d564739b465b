#include "ncs/transform.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <utility>
#include <vector>

#include "ncs/errors.hpp"
#include "ncs/hyper.hpp"
#include "ncs/meijer.hpp"
#include "ncs/special.hpp"

namespace ncs {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

GftEngine::GftEngine(const StateFamily& family, RadialFunction f,
                     RadialQuadrature quad, SeriesBudget budget)
    : family_(family), f_(std::move(f)), quad_(quad), budget_(budget) {
  if (!f_.eval)
    fail(errc::invalid_argument, "gft", "input function is empty");
}

double GftEngine::moment(int n) const {
  if (n < 0)
    fail(errc::invalid_argument, "gft", "moment index must be nonnegative");
  std::lock_guard<std::mutex> lock(mu_);
  if (n < static_cast<int>(moments_.size())) return moments_[n];
  const double upper = support_bound(family_.weight());
  while (static_cast<int>(moments_.size()) <= n) {
    const int k = static_cast<int>(moments_.size());
    const auto integrand = [this, k](double x) {
      if (x <= 0.0) return 0.0;
      return family_.measure_weight_reduced(x) * f_.eval(x) * std::pow(x, k);
    };
    moments_.push_back(integrate(quad_, integrand, upper).value);
  }
  return moments_[n];
}

double GftEngine::forward(double alpha_sq) const {
  if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq))
    fail(errc::invalid_argument, "gft", "argument must be finite and nonnegative");
  const double norm = family_.normalization(alpha_sq);
  const auto& eff = family_.effective();
  double sum = 0.0;
  double t = 1.0;
  int below = 0;
  for (int n = 0; n < budget_.max_terms; ++n) {
    const double term = t * moment(n);
    sum += term;
    const double thresh =
        std::max(budget_.rel_tol * std::fabs(sum), budget_.abs_tol);
    if (std::fabs(term) <= thresh) {
      if (++below >= 2 && n >= 8) return sum / norm;
    } else {
      below = 0;
    }
    double ratio = static_cast<double>(n + 1);
    for (double b : eff.b) ratio *= b + n;
    for (double a : eff.a) ratio /= a + n;
    t *= alpha_sq / (ratio * ratio);
    if (!std::isfinite(t))
      fail(errc::overflow, "gft", "series term overflowed");
  }
  fail(errc::non_convergent, "gft", "series did not settle within the term budget");
}

GftInverter::GftInverter(const StateFamily& family, RadialFunction F,
                         RadialQuadrature quad, SeriesBudget budget,
                         double class_tol, double verify_tol)
    : family_(family), budget_(budget) {
  if (!F.eval)
    fail(errc::invalid_argument, "gft_inverse", "input function is empty");
  if (!(class_tol > 0.0) || !(verify_tol > 0.0))
    fail(errc::invalid_argument, "gft_inverse", "tolerances must be positive");
  const double radius = family_.radius().value();
  const double a1 = std::isfinite(radius) ? 0.25 * radius : 1.0;
  const double a2 = 2.0 * a1;
  const double p0 = F.eval(0.0);
  const double f1 = F.eval(a1);
  const double f2 = F.eval(a2);
  for (double v : {p0, f1, f2})
    if (!std::isfinite(v))
      fail(errc::invalid_argument, "gft_inverse", "input not finite at a probe point");
  const double n1 = family_.normalization(a1);
  const double n2 = family_.normalization(a2);
  const double scale0 = std::fabs(p0);
  const bool const1 =
      std::fabs(f1 - p0) <= class_tol * (scale0 + std::fabs(f1)) + budget_.abs_tol;
  const bool const2 =
      std::fabs(f2 - p0) <= class_tol * (scale0 + std::fabs(f2)) + budget_.abs_tol;
  if (const1 && const2) {
    constant_ = true;
    amplitude_ = p0;
    return;
  }
  if (!(p0 > 0.0))
    fail(errc::non_convergent, "gft_inverse",
         "input is outside the invertible diagonal class");
  const double g1 = n1 * f1 / p0;
  const double g2 = n2 * f2 / p0;
  if (!(g1 > 1.0) || !(g1 < n1) || !(g2 > 1.0) || !(g2 < n2))
    fail(errc::non_convergent, "gft_inverse",
         "input is outside the invertible diagonal class");
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double val = pfq(family_.effective(), mid * a1, budget_);
    (val < g1 ? lo : hi) = mid;
  }
  const double r = 0.5 * (lo + hi);
  if (!(r > 1e-12) || !(r < 1.0 - 1e-13))
    fail(errc::non_convergent, "gft_inverse",
         "detected ratio is outside the open unit interval");
  const double probe2 = pfq(family_.effective(), r * a2, budget_);
  if (std::fabs(probe2 - g2) > class_tol * std::fabs(g2))
    fail(errc::non_convergent, "gft_inverse",
         "probe points disagree with a single geometric ratio");
  nbar_ = r / (1.0 - r);
  amplitude_ = p0 * (nbar_ + 1.0);
  const ThermalParams tp = ThermalParams::from_nbar(nbar_);
  const auto rows = p_moment_condition_check(family_, tp, 1, quad);
  for (const auto& row : rows)
    if (!(row.rel_err <= verify_tol))
      fail(errc::non_convergent, "gft_inverse",
           "moment verification of the reconstructed output failed");
}

double GftInverter::detected_nbar() const {
  if (constant_)
    fail(errc::invalid_argument, "gft_inverse",
         "constant input has no thermal ratio");
  return nbar_;
}

double GftInverter::at(double z_sq) const {
  if (!(z_sq >= 0.0) || !std::isfinite(z_sq))
    fail(errc::invalid_argument, "gft_inverse",
         "argument must be finite and nonnegative");
  if (constant_) return amplitude_;
  return amplitude_ * p_quasi(family_, ThermalParams::from_nbar(nbar_), z_sq);
}

double gft(const StateFamily& family, const RadialFunction& f, double alpha_sq,
           const RadialQuadrature& quad, const SeriesBudget& budget) {
  return GftEngine(family, f, quad, budget).forward(alpha_sq);
}

double gft_inverse(const StateFamily& family, const RadialFunction& F,
                   double z_sq, const RadialQuadrature& quad,
                   const SeriesBudget& budget) {
  return GftInverter(family, F, quad, budget).at(z_sq);
}

double mehta_anti_diagonal(const ThermalParams& t, double alpha_sq) {
  if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq))
    fail(errc::invalid_argument, "mehta_anti_diagonal",
         "argument must be finite and nonnegative");
  return std::exp(-alpha_sq * t.ratio()) / (t.nbar + 1.0);
}

TransformCheck mehta_formula_check(const ThermalParams& t, double z_sq,
                                   const RadialQuadrature& quad2d) {
  if (!(z_sq >= 0.0) || !std::isfinite(z_sq))
    fail(errc::invalid_argument, "mehta_formula_check",
         "argument must be finite and nonnegative");
  const double nbar = t.nbar;
  const double r = t.ratio();
  const auto slice = [&](double u) {
    return special::bessel_j0(2.0 * std::sqrt(z_sq * u / r));
  };
  int order = quad2d.scheme == QuadScheme::gauss_laguerre
                  ? std::max(32, quad2d.order)
                  : 64;
  const double tol = std::max(quad2d.rel_tol, 1e-9);
  double prev = std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  bool converged = false;
  for (; order <= 1024; order *= 2) {
    const auto& rule = gauss_laguerre_rule(order, 0.0);
    double s = 0.0, mass = 0.0;
    for (int i = 0; i < order; ++i) {
      const double w = std::exp(rule.logw[i]);
      const double f = slice(rule.x[i]);
      s += w * f;
      mass += w * std::fabs(f);
    }
    value = s / nbar;
    // node roundoff grows like eps * order^1.5 times the absolute mass, so
    // integrals with heavy cancellation settle on that floor rather than on
    // the relative target
    const double floor = 8.0 * std::numeric_limits<double>::epsilon() * order *
                         std::sqrt(static_cast<double>(order)) * mass / nbar;
    if (std::isfinite(prev) &&
        std::fabs(value - prev) <= tol * std::fabs(value) + floor) {
      converged = true;
      break;
    }
    prev = value;
  }
  if (!converged)
    fail(errc::non_convergent, "mehta_formula_check",
         "node doubling did not settle");
  TransformCheck out;
  out.computed = value;
  out.expected = std::exp(-z_sq / nbar - z_sq) / nbar;
  out.rel_err = std::fabs(out.computed - out.expected) / std::fabs(out.expected);
  return out;
}

GaussianCheck gaussian_integral_check(double a_param, std::complex<double> sigma,
                                      int poly_degree) {
  if (!(a_param > 0.0) || !std::isfinite(a_param))
    fail(errc::invalid_argument, "gaussian_integral_check",
         "decay parameter must be positive and finite");
  if (poly_degree < 0 || poly_degree > 64)
    fail(errc::invalid_argument, "gaussian_integral_check",
         "monomial degree out of supported range");
  if (!std::isfinite(sigma.real()) || !std::isfinite(sigma.imag()) ||
      std::abs(sigma) > 5.0)
    fail(errc::invalid_argument, "gaussian_integral_check",
         "offset magnitude out of supported range");
  const int order = 128;
  const int angular = 256;
  const auto& rule = gauss_laguerre_rule(order, 0.0);
  std::complex<double> acc(0.0, 0.0);
  for (int i = 0; i < order; ++i) {
    const double x = rule.x[i] / a_param;
    const double root = std::sqrt(x);
    std::complex<double> ang(0.0, 0.0);
    for (int k = 0; k < angular; ++k) {
      const double phi = kTwoPi * k / angular;
      const std::complex<double> z = std::polar(root, phi);
      ang += std::exp(sigma * std::conj(z)) *
             std::polar(std::pow(root, poly_degree), poly_degree * phi);
    }
    ang /= static_cast<double>(angular);
    acc += std::exp(rule.logw[i]) * ang;
  }
  acc /= a_param;
  std::complex<double> expected(1.0, 0.0);
  const std::complex<double> ratio = sigma / a_param;
  for (int j = 0; j < poly_degree; ++j) expected *= ratio;
  expected /= a_param;
  GaussianCheck out;
  out.computed = acc;
  out.expected = expected;
  const double denom = std::abs(expected);
  out.rel_err = denom > 0.0 ? std::abs(acc - expected) / denom
                            : std::abs(acc - expected);
  return out;
}

double optical_equivalence_check(const StateFamily& family,
                                 const ThermalParams& t, int n,
                                 const RadialQuadrature& quad) {
  if (n < 0)
    fail(errc::invalid_argument, "optical_equivalence_check",
         "moment index must be nonnegative");
  const auto rows = p_moment_condition_check(family, t, n, quad);
  return rows.back().rel_err;
}

}  // namespace ncs
