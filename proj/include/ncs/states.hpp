#pragma once

#include <complex>
#include <memory>
#include <mutex>
#include <vector>

#include "ncs/hyper.hpp"
#include "ncs/meijer.hpp"
#include "ncs/quadrature.hpp"

namespace ncs {

/// Point on the label plane, stored as |z|^2 and arg z so radial quantities
/// never lose precision to a square root round trip.
struct ComplexLabel {
  double modulus_sq = 0.0;
  double phase = 0.0;

  static ComplexLabel from_complex(std::complex<double> z);
  static ComplexLabel polar_sq(double modulus_sq, double phase);

  std::complex<double> value() const;
};

/// One family of nonlinear coherent states. The kp flavor of a model is the
/// bg flavor of the swapped model, so all internals run on `effective()`.
class StateFamily {
 public:
  StateFamily(HypergeometricModel model, Flavor flavor,
              SeriesBudget budget = {}, ContourSpec contour = {});

  const HypergeometricModel& model() const { return model_; }
  Flavor flavor() const { return flavor_; }
  const HypergeometricModel& effective() const { return effective_; }
  const SeriesBudget& budget() const { return budget_; }
  RadiusClass radius() const { return radius_; }

  /// Structure function of this flavor and its log.
  double rho(int n) const;
  double rho_log(int n) const;

  /// N(x) = sum_n x^n / rho(n); throws outside_radius for x >= radius.
  double normalization(double modulus_sq) const;

  /// <n|z> for the normalized state.
  std::complex<double> fock_coefficient(int n, const ComplexLabel& z) const;

  /// <z1|z2>, antilinear in the first slot.
  std::complex<double> overlap(const ComplexLabel& z1, const ComplexLabel& z2) const;

  /// Norm distance sqrt(2 - 2 Re<z1|z2>) between unit states.
  double continuity_distance(const ComplexLabel& z1, const ComplexLabel& z2) const;

  /// Radial density h(x) of the identity-resolving measure d2z/pi h(|z|^2) |z><z|,
  /// its normalization-free part h_red(x) = h(x)/N(x), and the constant
  /// relating h_red to the raw weight.
  double measure_weight(double x) const;
  double measure_weight_reduced(double x) const;
  double measure_constant() const { return measure_const_; }

  const MeijerWeight& weight() const { return weight_; }
  std::shared_ptr<WeightEvaluator> weight_evaluator() const;

 private:
  HypergeometricModel model_;
  Flavor flavor_;
  HypergeometricModel effective_;
  SeriesBudget budget_;
  ContourSpec contour_;
  MeijerWeight weight_;
  double measure_const_;
  RadiusClass radius_;
  mutable std::shared_ptr<WeightEvaluator> evaluator_;
  mutable std::mutex evaluator_mu_;
};

/// Moments of h_red against the structure function they must reproduce:
/// integral h_red(x) x^n dx = rho(n) for n = 0..n_max.
std::vector<MomentRow> identity_resolution_check(const StateFamily& family, int n_max,
                                                 const RadialQuadrature& rule);

/// <n| integral d2z/pi h |z><z| |n> = C integral W(x) x^n / rho(n) dx,
/// evaluated in log space so large-x normalization growth cancels exactly.
/// Equals 1 when the measure resolves the identity.
double projector_diagonal(const StateFamily& family, int n, const RadialQuadrature& rule);

}  // namespace ncs
