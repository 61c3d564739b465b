#pragma once

#include <memory>
#include <vector>

#include "ncs/hyper.hpp"
#include "ncs/quadrature.hpp"

namespace ncs {

enum class Flavor { bg, kp };

/// G^{m,0}-type radial weight, fixed entirely by its Mellin transform
///   integral x^{s-1} W(x) dx = scale^{-s} prod_j Gamma(bottom_j + s) / prod_i Gamma(top_i + s).
/// `bottom` lists the numerator gamma shifts, `top` the denominator ones.
struct MeijerWeight {
  int m = 0;
  int n_idx = 0;
  int p = 0;
  int q = 0;
  std::vector<double> top;
  std::vector<double> bottom;
  double scale = 1.0;
};

/// Weight whose moments reproduce the structure function of the model:
/// Mellin Gamma(s) prod_j Gamma(b_j - 1 + s) / prod_i Gamma(a_i - 1 + s).
MeijerWeight bg_weight(const HypergeometricModel& m, double scale = 1.0);

/// Dual-family weight: Mellin Gamma(s) prod_i Gamma(a_i - 1 + s) / prod_j Gamma(b_j - 1 + s).
MeijerWeight kp_weight(const HypergeometricModel& m, double scale = 1.0);

MeijerWeight flavor_weight(const HypergeometricModel& m, Flavor flavor, double scale = 1.0);

/// Vertical-line inverse-Mellin controls. The abscissa is auto-raised to stay
/// right of every pole and near the real saddle of the integrand; half_height
/// doubles until the endpoint magnitude drops below abs_tol and the node count
/// doubles until two successive trapezoid sums agree to rel_tol.
struct ContourSpec {
  double abscissa = 1.0;
  double half_height = 16.0;
  int nodes = 2048;
  double rel_tol = 1e-11;
  double abs_tol = 1e-18;
};

/// Analytic Mellin transform of the weight at real s (right of all poles).
double mellin(const MeijerWeight& w, double s);
double mellin_log(const MeijerWeight& w, double s);

/// Gamma count surplus (numerator minus denominator); 0 marks a weight with
/// bounded support [0, 1/scale], negative ones have no function realization.
int gamma_surplus(const MeijerWeight& w);

/// Upper end of the support (1/scale for surplus 0, infinity otherwise).
double support_bound(const MeijerWeight& w);

/// Pointwise evaluation: closed-form reduction registry first (pure
/// exponential-power and rational-Mellin cases), numerical contour otherwise.
double weight_eval(const MeijerWeight& w, double x, const ContourSpec& contour = {});

/// log of weight_eval, assembled without underflow; -inf outside the support.
double weight_eval_log(const MeijerWeight& w, double x, const ContourSpec& contour = {});

/// True when the registry serves this weight without a contour.
bool has_closed_form(const MeijerWeight& w);

/// Forces the Mellin-Barnes path even when a closed form exists (cross checks).
double weight_eval_contour(const MeijerWeight& w, double x, const ContourSpec& contour = {});

struct MomentRow {
  int n;
  double computed;
  double expected;
  double rel_err;
};

/// Evaluation path weight_eval takes for this weight.
enum class WeightForm { gamma_power, rational_sum, contour };
WeightForm weight_form(const MeijerWeight& w);

/// Exponent kappa of the closed form e^{-u} u^kappa, u = scale*x;
/// invalid_argument when the weight does not reduce to that form.
double gamma_power_exponent(const MeijerWeight& w);

/// Quadrature moments against the analytic Mellin values at s = n + 1.
std::vector<MomentRow> moment_check(const MeijerWeight& w, int n_max,
                                    const RadialQuadrature& rule,
                                    const ContourSpec& contour = {});

/// Shared pointwise evaluator with a concurrency-safe value cache.
class WeightEvaluator {
 public:
  WeightEvaluator(MeijerWeight w, ContourSpec contour);
  ~WeightEvaluator();

  double at(double x) const;
  double log_at(double x) const;
  const MeijerWeight& weight() const { return weight_; }
  const ContourSpec& contour() const { return contour_; }

 private:
  double table_log_at(double x) const;

  MeijerWeight weight_;
  ContourSpec contour_;
  struct Cache;
  std::unique_ptr<Cache> cache_;
};

std::shared_ptr<WeightEvaluator> make_weight_evaluator(const MeijerWeight& w,
                                                       const ContourSpec& contour = {});

}  // namespace ncs
