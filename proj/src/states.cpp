#include "ncs/states.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ncs/errors.hpp"

namespace ncs {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ComplexLabel ComplexLabel::from_complex(std::complex<double> z) {
  ComplexLabel l;
  l.modulus_sq = std::norm(z);
  l.phase = (l.modulus_sq == 0.0) ? 0.0 : std::arg(z);
  return l;
}

ComplexLabel ComplexLabel::polar_sq(double modulus_sq, double phase) {
  if (!(modulus_sq >= 0.0) || !std::isfinite(modulus_sq)) {
    fail(errc::invalid_argument, "ComplexLabel", "modulus_sq must be finite and nonnegative");
  }
  ComplexLabel l;
  l.modulus_sq = modulus_sq;
  l.phase = phase;
  return l;
}

std::complex<double> ComplexLabel::value() const {
  return std::polar(std::sqrt(modulus_sq), phase);
}

StateFamily::StateFamily(HypergeometricModel model, Flavor flavor,
                         SeriesBudget budget, ContourSpec contour)
    : model_(std::move(model)),
      flavor_(flavor),
      effective_(flavor == Flavor::bg ? model_ : swapped(model_)),
      budget_(budget),
      contour_(contour),
      weight_(bg_weight(effective_)),
      measure_const_(1.0 / gamma_ratio(effective_)),
      radius_(radius_classify(effective_)) {}

double StateFamily::rho(int n) const { return structure_rho(effective_, n); }

double StateFamily::rho_log(int n) const { return structure_rho_log(effective_, n); }

double StateFamily::normalization(double modulus_sq) const {
  if (!(modulus_sq >= 0.0)) {
    fail(errc::invalid_argument, "normalization", "|z|^2 must be nonnegative");
  }
  if (!(modulus_sq < radius_.value())) {
    fail(errc::outside_radius, "normalization",
         "|z|^2=" + std::to_string(modulus_sq) + " is outside the label domain");
  }
  return pfq(effective_, modulus_sq, budget_);
}

std::complex<double> StateFamily::fock_coefficient(int n, const ComplexLabel& z) const {
  if (n < 0) fail(errc::invalid_argument, "fock_coefficient", "n must be nonnegative");
  const double norm = normalization(z.modulus_sq);
  if (z.modulus_sq == 0.0) {
    return n == 0 ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, 0.0);
  }
  const double log_mag =
      0.5 * (n * std::log(z.modulus_sq) - rho_log(n) - std::log(norm));
  if (log_mag > 700.0) fail(errc::overflow, "fock_coefficient", "coefficient magnitude overflow");
  return std::polar(std::exp(log_mag), n * z.phase);
}

std::complex<double> StateFamily::overlap(const ComplexLabel& z1, const ComplexLabel& z2) const {
  const double n1 = normalization(z1.modulus_sq);
  const double n2 = normalization(z2.modulus_sq);
  const std::complex<double> cross = std::conj(z1.value()) * z2.value();
  const std::complex<double> series = pfq(effective_, cross, budget_);
  return series / std::sqrt(n1 * n2);
}

double StateFamily::continuity_distance(const ComplexLabel& z1, const ComplexLabel& z2) const {
  const double re = overlap(z1, z2).real();
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * re));
}

double StateFamily::measure_weight_reduced(double x) const {
  return measure_const_ * weight_evaluator()->at(x);
}

double StateFamily::measure_weight(double x) const {
  return measure_weight_reduced(x) * normalization(x);
}

std::shared_ptr<WeightEvaluator> StateFamily::weight_evaluator() const {
  std::lock_guard<std::mutex> lock(evaluator_mu_);
  if (!evaluator_) evaluator_ = make_weight_evaluator(weight_, contour_);
  return evaluator_;
}

std::vector<MomentRow> identity_resolution_check(const StateFamily& family, int n_max,
                                                 const RadialQuadrature& rule) {
  std::vector<MomentRow> rows =
      moment_check(family.weight(), n_max, rule, family.weight_evaluator()->contour());
  const double c = family.measure_constant();
  for (MomentRow& row : rows) {
    row.computed *= c;
    row.expected = family.rho(row.n);
    row.rel_err = std::fabs(row.computed - row.expected) / std::fabs(row.expected);
  }
  return rows;
}

double projector_diagonal(const StateFamily& family, int n, const RadialQuadrature& rule) {
  if (n < 0) {
    fail(errc::invalid_argument, "projector_diagonal", "index must be nonnegative");
  }
  auto ev = family.weight_evaluator();
  const double log_c = std::log(family.measure_constant());
  const double log_rho = family.rho_log(n);
  // |<n|z>|^2 N(x) = x^n / rho(n) for every phase, so the normalization and
  // the angular average drop out before anything can overflow.
  const auto integrand = [&](double x) {
    if (x <= 0.0) return 0.0;
    const double lw = ev->log_at(x);
    return std::isfinite(lw) ? std::exp(log_c + lw + n * std::log(x) - log_rho) : 0.0;
  };
  const double upper = support_bound(family.weight());
  return integrate(rule, integrand, upper).value;
}

}  // namespace ncs
