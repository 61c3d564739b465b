#pragma once

#include <vector>

#include "ncs/quadrature.hpp"
#include "ncs/states.hpp"

namespace ncs {

/// Geometric occupation of a single thermal mode.
struct ThermalParams {
  double nbar = 1.0;

  static ThermalParams from_nbar(double nbar);
  /// nbar = 1 / (exp(beta * hbar_omega) - 1).
  static ThermalParams from_temperature(double beta, double hbar_omega);

  double ratio() const { return nbar / (nbar + 1.0); }
};

/// Number-basis weights p_n = (1/(nbar+1)) ratio^n, truncated once the
/// remaining tail mass drops below tail_tol.
std::vector<double> thermal_weights(const ThermalParams& t, double tail_tol = 1e-14);

/// Which series the numerator of the diagonal expectation uses.
/// fock_expansion is what the number-basis sum forces; swapped_normalization
/// replaces the numerator with the dual-family series and exists only for
/// cross-checks against that alternative form.
enum class DiagonalForm { fock_expansion, swapped_normalization };

/// Q(|z|^2) = <z| rho_thermal |z> for the family's states.
double husimi_q(const StateFamily& family, const ThermalParams& t, double x,
                DiagonalForm form = DiagonalForm::fock_expansion);

/// Diagonal density P with rho_thermal = integral d2z/pi h_red P(|z|^2) |z><z|,
/// P(x) = (1/nbar) W(x (nbar+1)/nbar) / W(x). Closed form when the weight
/// reduces to e^{-u} u^kappa, log-space weight ratio otherwise.
double p_quasi(const StateFamily& family, const ThermalParams& t, double x);

/// Always takes the generic weight-ratio path, for agreement tests.
double p_quasi_weight_ratio(const StateFamily& family, const ThermalParams& t, double x);

/// Moments integral h_red(x) P(x) x^n dx against p_n rho(n) for n = 0..n_max.
std::vector<MomentRow> p_moment_condition_check(const StateFamily& family,
                                                const ThermalParams& t, int n_max,
                                                const RadialQuadrature& rule);

}  // namespace ncs
