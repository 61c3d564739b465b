#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "ncs/errors.hpp"

namespace ncs {

/// Parameter set of a generalized hypergeometric series pFq(a; b; x).
/// All parameters are restricted to positive reals.
struct HypergeometricModel {
  std::vector<double> a;
  std::vector<double> b;

  HypergeometricModel() = default;
  HypergeometricModel(std::vector<double> a_in, std::vector<double> b_in);

  int p() const { return static_cast<int>(a.size()); }
  int q() const { return static_cast<int>(b.size()); }
};

/// Truncation controls shared by every series evaluation.
struct SeriesBudget {
  int max_terms = 10000;
  double rel_tol = 1e-14;
  double abs_tol = 1e-18;
};

enum class RadiusKind { zero, one, infinite };

/// Convergence classification from the growth exponent of rho(n+1)/rho(n),
/// which scales like n^(1+q-p).
struct RadiusClass {
  RadiusKind kind;
  int exponent;

  double value() const {
    switch (kind) {
      case RadiusKind::zero: return 0.0;
      case RadiusKind::one:  return 1.0;
      case RadiusKind::infinite: return std::numeric_limits<double>::infinity();
    }
    return 0.0;
  }
};

/// Rising factorial (a)_n as a direct product; (a)_0 = 1, (0)_n = 0 for n >= 1.
double pochhammer(double a, int n);

/// log((a)_n) for a > 0, via lgamma.
double ln_pochhammer(double a, int n);

/// prod_j Gamma(b_j) / prod_i Gamma(a_i).
double gamma_ratio(const HypergeometricModel& m);

/// Model with numerator and denominator parameter lists exchanged.
HypergeometricModel swapped(const HypergeometricModel& m);

/// Structure function rho(n) = n! prod_j (b_j)_n / prod_i (a_i)_n.
/// Exact products for small n, log-space beyond.
double structure_rho(const HypergeometricModel& m, int n);
double structure_rho_log(const HypergeometricModel& m, int n);

/// Dual structure function (n!)^2 / rho(n).
double structure_rho_dual(const HypergeometricModel& m, int n);
double structure_rho_dual_log(const HypergeometricModel& m, int n);

RadiusClass radius_classify(const HypergeometricModel& m);

/// pFq(a; b; x) = sum_n x^n / rho(n) by term recurrence
/// t_{n+1} = t_n * x * prod(a_i + n) / ((n + 1) prod(b_j + n)).
/// Throws outside_radius when |x| is not strictly inside the radius and
/// non_convergent when the budget is exhausted.
double pfq(const HypergeometricModel& m, double x, const SeriesBudget& budget = {});
std::complex<double> pfq(const HypergeometricModel& m, std::complex<double> x,
                         const SeriesBudget& budget = {});

}  // namespace ncs
