#include "ncs/quadrature.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ncs/errors.hpp"

namespace ncs {

namespace {

constexpr int kMaxOrder = 2048;

/// Number of eigenvalues of the Jacobi matrix below lambda (Sturm count on
/// the LDL^T pivots of T - lambda I).
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off_sq,
                double lambda) {
  int count = 0;
  double q = 1.0;
  const int n = static_cast<int>(diag.size());
  for (int k = 0; k < n; ++k) {
    q = diag[k] - lambda - (k > 0 ? off_sq[k] / q : 0.0);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

GaussLaguerreRule build_rule(int order, double alpha) {
  if (order < 1 || order > kMaxOrder) {
    fail(errc::invalid_argument, "gauss_laguerre_rule",
         "order must lie in [1, " + std::to_string(kMaxOrder) + "]");
  }
  if (!(alpha > -1.0)) {
    fail(errc::invalid_argument, "gauss_laguerre_rule", "alpha must exceed -1");
  }

  GaussLaguerreRule rule;
  rule.order = order;
  rule.alpha = alpha;
  rule.x.resize(order);
  rule.logw.resize(order);
  rule.wfull.resize(order);

  const int n = order;
  const double alf = alpha;
  const double rescale = 1e250;
  const double log_rescale = std::log(rescale);

  // Jacobi matrix of the generalized Laguerre recurrence; its eigenvalues
  // are the nodes, bracketed here by Sturm bisection and then polished.
  std::vector<double> diag(n), off_sq(n, 0.0);
  for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + alf + 1.0;
  for (int k = 1; k < n; ++k) off_sq[k] = k * (k + alf);
  double hi_bound = 0.0;
  for (int k = 0; k < n; ++k) {
    const double left = k > 0 ? std::sqrt(off_sq[k]) : 0.0;
    const double right = k + 1 < n ? std::sqrt(off_sq[k + 1]) : 0.0;
    hi_bound = std::max(hi_bound, diag[k] + left + right);
  }

  double prev_root = 0.0;
  for (int i = 0; i < n; ++i) {
    double lo = prev_root;
    double hi = hi_bound;
    for (int it = 0; it < 100 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (sturm_count(diag, off_sq, mid) >= i + 1 ? hi : lo) = mid;
    }
    double z = 0.5 * (lo + hi);

    // Newton polish; the recurrence noise floor grows with order, so the
    // step tolerance scales with sqrt(n) and the best residual iterate wins.
    const double step_tol = 1e-14 + 4e-15 * std::sqrt(static_cast<double>(n));
    double best_z = z, best_p2 = 0.0, best_pp = 0.0, best_scale = 0.0;
    double best_res = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int it = 0; it < 64; ++it) {
      double p1 = 1.0, p2 = 0.0, scale_log = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0 + alf - z) * p2 - (j - 1.0 + alf) * p3) / j;
        if (std::fabs(p1) > rescale) {
          p1 /= rescale;
          p2 /= rescale;
          scale_log += log_rescale;
        }
      }
      const double pp = (n * p1 - (n + alf) * p2) / z;
      if (std::fabs(p1) < best_res) {
        best_res = std::fabs(p1);
        best_z = z;
        best_p2 = p2;
        best_pp = pp;
        best_scale = scale_log;
      }
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= step_tol * std::max(1.0, std::fabs(z))) {
        converged = true;
        if (it >= 1) break;
      }
    }
    if (!converged) {
      fail(errc::non_convergent, "gauss_laguerre_rule",
           "Newton iteration stalled at node " + std::to_string(i));
    }
    z = best_z;
    const double p2 = best_p2;
    const double pp = best_pp;
    const double scale_log = best_scale;
    rule.x[i] = z;
    prev_root = z;
    // w = -exp(lgamma(alf+n) - lgamma(n)) / (pp * n * p2); pp*p2 < 0 at roots
    rule.logw[i] = std::lgamma(alf + n) - std::lgamma(static_cast<double>(n)) -
                   std::log(static_cast<double>(n)) - std::log(std::fabs(pp)) -
                   std::log(std::fabs(p2)) - 2.0 * scale_log;
    rule.wfull[i] = std::exp(rule.logw[i] + z - alf * std::log(z));
  }
  return rule;
}

std::mutex g_rule_mutex;
std::map<std::pair<int, long long>, GaussLaguerreRule> g_rule_cache;

long long alpha_key(double alpha) {
  long long k;
  static_assert(sizeof(k) == sizeof(alpha));
  std::memcpy(&k, &alpha, sizeof(k));
  return k;
}

// 15-point Kronrod extension of 7-point Gauss, on [-1, 1].
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct GkResult {
  double kronrod;
  double err;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  double ik = kWgk[7] * fv[7];
  double ig = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    ik += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) ig += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  ik *= h;
  ig *= h;
  return {ik, std::fabs(ik - ig)};
}

void adaptive_gk(const std::function<double(double)>& f, double a, double b, double tol_abs,
                 int depth, int max_depth, double* sum, double* err_sum) {
  const GkResult r = gk15(f, a, b);
  if (r.err <= tol_abs || depth >= max_depth) {
    *sum += r.kronrod;
    *err_sum += r.err;
    return;
  }
  const double c = 0.5 * (a + b);
  adaptive_gk(f, a, c, 0.5 * tol_abs, depth + 1, max_depth, sum, err_sum);
  adaptive_gk(f, c, b, 0.5 * tol_abs, depth + 1, max_depth, sum, err_sum);
}

/// Upper cutoff where |f| has fallen below 1e-18 of its sampled peak.
double find_cutoff(const std::function<double(double)>& f) {
  double peak = std::fabs(f(1e-3));
  double x = 0.5;
  int decayed = 0;
  for (int i = 0; i < 64; ++i) {
    const double v = std::fabs(f(x));
    peak = std::max(peak, v);
    if (v < 1e-18 * peak && x >= 16.0) {
      if (++decayed >= 2) return x;
    } else {
      decayed = 0;
    }
    x *= 2.0;
    if (x > 1e12) break;
  }
  fail(errc::non_convergent, "integrate", "integrand shows no decay on the half line");
}

IntegralResult integrate_gauss(const RadialQuadrature& rule,
                               const std::function<double(double)>& f) {
  const auto eval = [&](int order) {
    const GaussLaguerreRule& gl = gauss_laguerre_rule(order, rule.alpha);
    double s = 0.0;
    for (int i = 0; i < gl.order; ++i) s += gl.wfull[i] * f(gl.x[i]);
    return s;
  };
  const double coarse = eval(rule.order);
  const int refined_order = std::min(2 * rule.order, kMaxOrder);
  const double refined = refined_order > rule.order ? eval(refined_order) : coarse;
  return {refined, std::fabs(refined - coarse)};
}

IntegralResult integrate_adaptive(const RadialQuadrature& rule,
                                  const std::function<double(double)>& f, double upper) {
  const double b = std::isfinite(upper) ? upper : find_cutoff(f);
  const GkResult first = gk15(f, 0.0, b);
  const double tol_abs =
      rule.rel_tol * std::max(std::fabs(first.kronrod), 1e-300) + 1e-300;
  double sum = 0.0, err = 0.0;
  adaptive_gk(f, 0.0, b, tol_abs, 0, rule.max_depth, &sum, &err);
  return {sum, err};
}

IntegralResult integrate_uniform(const RadialQuadrature& rule,
                                 const std::function<double(double)>& f, double upper) {
  const double b = std::isfinite(upper) ? std::min(upper, rule.cutoff) : rule.cutoff;
  const auto midpoint = [&](int n) {
    const double h = b / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f((i + 0.5) * h);
    return s * h;
  };
  const double coarse = midpoint(std::max(1, rule.nodes / 2));
  const double fine = midpoint(rule.nodes);
  return {fine, std::fabs(fine - coarse)};
}

}  // namespace

const GaussLaguerreRule& gauss_laguerre_rule(int order, double alpha) {
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  const auto key = std::make_pair(order, alpha_key(alpha));
  auto it = g_rule_cache.find(key);
  if (it == g_rule_cache.end()) it = g_rule_cache.emplace(key, build_rule(order, alpha)).first;
  return it->second;
}

IntegralResult integrate(const RadialQuadrature& rule, const std::function<double(double)>& f,
                         double upper) {
  switch (rule.scheme) {
    case QuadScheme::gauss_laguerre:
      if (std::isfinite(upper)) {
        // finite support: fall back to the adaptive panel scheme
        RadialQuadrature r = RadialQuadrature::adaptive_rule(1e-12, rule.max_depth);
        return integrate_adaptive(r, f, upper);
      }
      return integrate_gauss(rule, f);
    case QuadScheme::adaptive:
      return integrate_adaptive(rule, f, upper);
    case QuadScheme::truncated_uniform:
      return integrate_uniform(rule, f, upper);
  }
  fail(errc::invalid_argument, "integrate", "unknown scheme");
}

}  // namespace ncs
