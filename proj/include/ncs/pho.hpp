#pragma once

#include "ncs/hyper.hpp"

namespace ncs {

/// Physical constants of a radial mode in the quadratic-plus-inverse-quadratic
/// well; the single combination k below fixes everything dimensionless.
struct PhoParams {
  int j = 0;
  double mass = 1.0;
  double omega = 1.0;
  double r0 = 1.0;
  double hbar = 1.0;
};

/// k = 1/2 + (1/2) sqrt((j + 1/2)^2 + (m omega r0^2 / (2 hbar))^2).
double bargmann_k(const PhoParams& p);

/// One-parameter model a = [1], b = [k+1]; rho(n) = (k+1)_n.
HypergeometricModel pho_model(double k);

/// Dimensionless ladder n + k and the physical level
/// hbar omega (n + k) - (m omega^2 / 4) r0^2.
double pho_level(double k, int n);
double pho_energy(const PhoParams& p, int n);

}  // namespace ncs
