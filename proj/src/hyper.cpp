#include "ncs/hyper.hpp"

#include <cmath>
#include <string>

namespace ncs {

namespace {

constexpr int kExactCutoff = 30;
constexpr double kLogDblMax = 709.0;

void check_positive(const std::vector<double>& v, const char* which) {
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      fail(errc::invalid_argument, "HypergeometricModel",
           std::string(which) + " parameters must be positive reals");
    }
  }
}

}  // namespace

HypergeometricModel::HypergeometricModel(std::vector<double> a_in, std::vector<double> b_in)
    : a(std::move(a_in)), b(std::move(b_in)) {
  check_positive(a, "numerator");
  check_positive(b, "denominator");
}

double pochhammer(double a, int n) {
  if (n < 0) fail(errc::invalid_argument, "pochhammer", "order must be nonnegative");
  double r = 1.0;
  for (int s = 0; s < n; ++s) r *= a + s;
  return r;
}

double ln_pochhammer(double a, int n) {
  if (n < 0) fail(errc::invalid_argument, "ln_pochhammer", "order must be nonnegative");
  if (!(a > 0.0)) fail(errc::invalid_argument, "ln_pochhammer", "base must be positive");
  if (n == 0) return 0.0;
  return std::lgamma(a + n) - std::lgamma(a);
}

double gamma_ratio(const HypergeometricModel& m) {
  double lg = 0.0;
  for (double b : m.b) lg += std::lgamma(b);
  for (double a : m.a) lg -= std::lgamma(a);
  return std::exp(lg);
}

HypergeometricModel swapped(const HypergeometricModel& m) {
  return HypergeometricModel(m.b, m.a);
}

double structure_rho_log(const HypergeometricModel& m, int n) {
  if (n < 0) fail(errc::invalid_argument, "structure_rho", "index must be nonnegative");
  double lg = std::lgamma(n + 1.0);
  for (double b : m.b) lg += ln_pochhammer(b, n);
  for (double a : m.a) lg -= ln_pochhammer(a, n);
  return lg;
}

double structure_rho(const HypergeometricModel& m, int n) {
  if (n < 0) fail(errc::invalid_argument, "structure_rho", "index must be nonnegative");
  if (n <= kExactCutoff) {
    double num = 1.0;
    for (int s = 1; s <= n; ++s) num *= s;
    for (double b : m.b) num *= pochhammer(b, n);
    double den = 1.0;
    for (double a : m.a) den *= pochhammer(a, n);
    return num / den;
  }
  const double lg = structure_rho_log(m, n);
  if (lg > kLogDblMax) {
    fail(errc::overflow, "structure_rho", "value exceeds double range at n=" + std::to_string(n));
  }
  return std::exp(lg);
}

double structure_rho_dual_log(const HypergeometricModel& m, int n) {
  return structure_rho_log(swapped(m), n);
}

double structure_rho_dual(const HypergeometricModel& m, int n) {
  return structure_rho(swapped(m), n);
}

RadiusClass radius_classify(const HypergeometricModel& m) {
  const int e = 1 + m.q() - m.p();
  if (e > 0) return {RadiusKind::infinite, e};
  if (e == 0) return {RadiusKind::one, e};
  return {RadiusKind::zero, e};
}

namespace {

template <typename Scalar>
Scalar pfq_impl(const HypergeometricModel& m, Scalar x, const SeriesBudget& budget) {
  if (!(budget.rel_tol > 0.0 && budget.rel_tol < 1.0) ||
      !(budget.abs_tol > 0.0 && budget.abs_tol < 1.0)) {
    fail(errc::invalid_argument, "pfq", "tolerances must lie in (0, 1)");
  }
  const double xa = std::abs(x);
  if (xa == 0.0) return Scalar(1);

  const RadiusClass rc = radius_classify(m);
  if (rc.kind == RadiusKind::zero ||
      (rc.kind == RadiusKind::one && !(xa < 1.0))) {
    fail(errc::outside_radius, "pfq",
         "|x|=" + std::to_string(xa) + " not strictly inside radius " +
             std::to_string(rc.value()));
  }

  Scalar term(1);
  Scalar sum(1);
  double prev_mag = 1.0;
  for (int n = 0; n < budget.max_terms; ++n) {
    Scalar ratio = x;
    for (double a : m.a) ratio *= a + n;
    for (double b : m.b) ratio /= b + n;
    ratio /= n + 1.0;
    term *= ratio;
    sum += term;
    const double mag = std::abs(term);
    if (!std::isfinite(mag) || !std::isfinite(std::abs(sum))) {
      fail(errc::overflow, "pfq", "series overflow at x=" + std::to_string(xa));
    }
    const double thresh = std::max(budget.rel_tol * std::abs(sum), budget.abs_tol);
    if (n >= 1 && mag < thresh && prev_mag < thresh && mag < prev_mag) return sum;
    prev_mag = mag;
  }
  fail(errc::non_convergent, "pfq",
       "no convergence within " + std::to_string(budget.max_terms) +
           " terms at |x|=" + std::to_string(xa));
}

}  // namespace

double pfq(const HypergeometricModel& m, double x, const SeriesBudget& budget) {
  return pfq_impl<double>(m, x, budget);
}

std::complex<double> pfq(const HypergeometricModel& m, std::complex<double> x,
                         const SeriesBudget& budget) {
  return pfq_impl<std::complex<double>>(m, x, budget);
}

}  // namespace ncs
