#include "ncs/pho.hpp"

#include <cmath>

#include "ncs/errors.hpp"

namespace ncs {

double bargmann_k(const PhoParams& p) {
  if (p.j < 0) fail(errc::invalid_argument, "bargmann_k", "j must be nonnegative");
  if (!(p.mass > 0.0) || !(p.omega > 0.0) || !(p.r0 > 0.0) || !(p.hbar > 0.0)) {
    fail(errc::invalid_argument, "bargmann_k",
         "mass, omega, r0, hbar must all be positive");
  }
  const double half_j = p.j + 0.5;
  const double well = p.mass * p.omega * p.r0 * p.r0 / (2.0 * p.hbar);
  return 0.5 + 0.5 * std::sqrt(half_j * half_j + well * well);
}

HypergeometricModel pho_model(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    fail(errc::invalid_argument, "pho_model", "k must be positive and finite");
  }
  return HypergeometricModel({1.0}, {k + 1.0});
}

double pho_level(double k, int n) {
  if (n < 0) fail(errc::invalid_argument, "pho_level", "n must be nonnegative");
  return n + k;
}

double pho_energy(const PhoParams& p, int n) {
  const double k = bargmann_k(p);
  return p.hbar * p.omega * pho_level(k, n) -
         0.25 * p.mass * p.omega * p.omega * p.r0 * p.r0;
}

}  // namespace ncs
