#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace ncs {

enum class QuadScheme { gauss_laguerre, adaptive, truncated_uniform };

/// Descriptor for radial integrals over [0, inf) (or a finite support).
struct RadialQuadrature {
  QuadScheme scheme = QuadScheme::gauss_laguerre;

  // gauss_laguerre: weight x^alpha e^{-x}; alpha < 0 values down to -1 are
  // allowed for integrable endpoint behavior.
  int order = 64;
  double alpha = 0.0;

  // adaptive
  double rel_tol = 1e-10;
  int max_depth = 48;

  // truncated_uniform
  double cutoff = 64.0;
  int nodes = 4096;

  static RadialQuadrature gauss(int order, double alpha = 0.0) {
    RadialQuadrature r;
    r.scheme = QuadScheme::gauss_laguerre;
    r.order = order;
    r.alpha = alpha;
    return r;
  }
  static RadialQuadrature adaptive_rule(double rel_tol, int max_depth = 48) {
    RadialQuadrature r;
    r.scheme = QuadScheme::adaptive;
    r.rel_tol = rel_tol;
    r.max_depth = max_depth;
    return r;
  }
  static RadialQuadrature uniform(double cutoff, int nodes) {
    RadialQuadrature r;
    r.scheme = QuadScheme::truncated_uniform;
    r.cutoff = cutoff;
    r.nodes = nodes;
    return r;
  }
};

struct IntegralResult {
  double value = 0.0;
  double err_estimate = 0.0;
};

/// Nodes for the weight x^alpha e^{-x} on [0, inf).
/// logw are logs of the classical weights (they underflow linearly at high
/// order); wfull = w * e^{x} * x^{-alpha} are the full-integrand weights.
struct GaussLaguerreRule {
  int order = 0;
  double alpha = 0.0;
  std::vector<double> x;
  std::vector<double> logw;
  std::vector<double> wfull;
};

/// Cached rule lookup; computed by Newton iteration on the recurrence.
const GaussLaguerreRule& gauss_laguerre_rule(int order, double alpha);

/// Integral of f over [0, upper). The integrand carries its own decay; the
/// Gauss-Laguerre path uses full-integrand weights, err from order doubling.
IntegralResult integrate(const RadialQuadrature& rule, const std::function<double(double)>& f,
                         double upper = std::numeric_limits<double>::infinity());

}  // namespace ncs
