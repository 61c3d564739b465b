#include "ncs/meijer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstring>
#include <functional>
#include <limits>
#include <mutex>
#include <string>
#include <unordered_map>

#include "ncs/errors.hpp"
#include "ncs/special.hpp"

namespace ncs {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogDblMax = 709.0;

struct Reduction {
  enum class Kind { none, gamma_power, rational_sum };
  Kind kind = Kind::none;
  double kappa = 0.0;              // e^{-u} u^kappa
  std::vector<double> poles;       // sum_l res_l u^{poles_l} on (0, 1)
  std::vector<double> residues;
};

/// Cancels matching gamma shifts, then recognizes the two closed forms:
/// a single surviving numerator gamma, or a pure rational Mellin built from
/// integer ladders Gamma(b+s)/Gamma(b+m+s) with distinct simple poles.
Reduction reduce(const MeijerWeight& w) {
  std::vector<double> num = w.bottom;
  std::vector<double> den = w.top;
  for (auto it = den.begin(); it != den.end();) {
    auto jt = std::find_if(num.begin(), num.end(),
                           [&](double b) { return std::fabs(b - *it) < 1e-12; });
    if (jt != num.end()) {
      num.erase(jt);
      it = den.erase(it);
    } else {
      ++it;
    }
  }

  Reduction r;
  if (den.empty() && num.size() == 1) {
    r.kind = Reduction::Kind::gamma_power;
    r.kappa = num.front();
    return r;
  }
  if (!num.empty() && num.size() == den.size()) {
    std::vector<double> poles;
    std::vector<double> rest = num;
    bool ok = true;
    for (double d : den) {
      int match = -1;
      int ladder = 0;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        const double diff = d - rest[i];
        const double rounded = std::round(diff);
        if (rounded >= 1.0 && std::fabs(diff - rounded) < 1e-10) {
          match = static_cast<int>(i);
          ladder = static_cast<int>(rounded);
          break;
        }
      }
      if (match < 0) {
        ok = false;
        break;
      }
      for (int j = 0; j < ladder; ++j) poles.push_back(rest[match] + j);
      rest.erase(rest.begin() + match);
    }
    if (ok && rest.empty() && !poles.empty()) {
      std::sort(poles.begin(), poles.end());
      for (std::size_t i = 1; i < poles.size(); ++i) {
        if (poles[i] - poles[i - 1] < 1e-9) {
          ok = false;
          break;
        }
      }
      if (ok) {
        r.kind = Reduction::Kind::rational_sum;
        r.poles = poles;
        r.residues.assign(poles.size(), 1.0);
        for (std::size_t l = 0; l < poles.size(); ++l) {
          for (std::size_t m = 0; m < poles.size(); ++m) {
            if (m != l) r.residues[l] /= poles[m] - poles[l];
          }
        }
      }
    }
  }
  return r;
}

double registry_eval(const Reduction& red, const MeijerWeight& w, double x) {
  const double u = w.scale * x;
  if (red.kind == Reduction::Kind::gamma_power) {
    if (u == 0.0) {
      if (red.kappa > 0.0) return 0.0;
      if (red.kappa == 0.0) return 1.0;
      fail(errc::invalid_argument, "weight_eval", "weight is singular at x=0");
    }
    return std::exp(-u + red.kappa * std::log(u));
  }
  // rational_sum, supported on u < 1
  if (u >= 1.0) return 0.0;
  double v = 0.0;
  for (std::size_t l = 0; l < red.poles.size(); ++l) {
    const double c = red.poles[l];
    v += red.residues[l] * (c == 0.0 ? 1.0 : (u == 0.0 ? 0.0 : std::pow(u, c)));
  }
  return v;
}

double rightmost_pole(const MeijerWeight& w) {
  double p = -std::numeric_limits<double>::infinity();
  for (double b : w.bottom) p = std::max(p, -b);
  return p;
}

/// Real saddle of sum lgamma(b+s) - sum lgamma(t+s) - s*log(u): where the
/// digamma balance meets log(u). The slope falls to -inf at the rightmost
/// pole and grows like surplus*log(c) on the right, so a root always exists
/// in (pole, inf); sitting on it keeps the vertical integrand peaked at
/// t = 0 and free of cancellation for u far from 1 in either direction.
double pick_abscissa(const MeijerWeight& w, double lu, const ContourSpec& spec) {
  const double pole = rightmost_pole(w);
  auto slope = [&](double c) {
    double g = -lu;
    for (double b : w.bottom) g += special::digamma(b + c);
    for (double t : w.top) g -= special::digamma(t + c);
    return g;
  };
  double lo = std::max(spec.abscissa, pole + 0.5);
  if (slope(lo) >= 0.0) {
    double gap = lo - pole;
    while (gap > 4e-16 * std::max(1.0, std::fabs(pole))) {
      gap *= 0.5;
      if (slope(pole + gap) < 0.0) {
        lo = pole + gap;
        break;
      }
      lo = pole + gap;
    }
    if (slope(lo) >= 0.0) return lo;
    double hi = pole + 2.0 * gap;
    for (int i = 0; i < 90; ++i) {
      const double mid = 0.5 * (lo + hi);
      (slope(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  double hi = lo + 1.0;
  int guard = 0;
  while (slope(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 60) return lo;
  }
  for (int i = 0; i < 90; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct ContourValue {
  double log_peak;    // integrand log magnitude at t = 0
  double normalized;  // (1/2pi) integral of exp(L(t) - L(0)) dt
};

ContourValue contour_core(const MeijerWeight& w, double x, const ContourSpec& spec) {
  if (gamma_surplus(w) < 1) {
    fail(errc::non_convergent, "weight_eval",
         "contour tails do not decay for this gamma balance");
  }
  if (!(x > 0.0)) {
    fail(errc::invalid_argument, "weight_eval", "contour path requires x > 0");
  }
  const double lu = std::log(w.scale * x);
  const double c = pick_abscissa(w, lu, spec);

  auto L = [&](double t) {
    const std::complex<double> s(c, t);
    std::complex<double> acc = -s * lu;
    for (double b : w.bottom) acc += special::lgamma_complex(b + s);
    for (double tt : w.top) acc -= special::lgamma_complex(tt + s);
    return acc;
  };
  const double L0 = L(0.0).real();

  double curv = 0.0;
  for (double b : w.bottom) curv += special::trigamma(b + c);
  for (double t : w.top) curv -= special::trigamma(t + c);
  if (!(curv > 1e-12)) curv = 1e-2;
  const double sigma = 1.0 / std::sqrt(curv);

  double H = std::max(spec.half_height, 10.0 * sigma);
  int doublings = 0;
  while (std::exp(L(H).real() - L0) > spec.abs_tol) {
    H *= 2.0;
    if (++doublings > 24) {
      fail(errc::non_convergent, "weight_eval",
           "contour endpoint magnitude never fell below abs_tol at x=" + std::to_string(x));
    }
  }

  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int n_nodes = std::max(spec.nodes, 64); n_nodes <= (1 << 18); n_nodes *= 2) {
    const double h = 2.0 * H / n_nodes;
    const int half = n_nodes / 2;
    double s_sum = 1.0;
    for (int k = 1; k <= half; ++k) {
      s_sum += 2.0 * std::exp(L(k * h) - L0).real();
    }
    const double val = h * s_sum / (2.0 * kPi);
    if (std::isfinite(prev) &&
        std::fabs(val - prev) <= spec.rel_tol * std::fabs(val) + spec.abs_tol) {
      return {L0, val};
    }
    prev = val;
  }
  fail(errc::non_convergent, "weight_eval",
       "trapezoid refinement did not settle at x=" + std::to_string(x));
}

long long double_key(double x) {
  long long k;
  std::memcpy(&k, &x, sizeof(k));
  return k;
}

}  // namespace

MeijerWeight bg_weight(const HypergeometricModel& m, double scale) {
  if (!(scale > 0.0)) fail(errc::invalid_argument, "bg_weight", "scale must be positive");
  MeijerWeight w;
  w.p = m.p();
  w.m = m.q() + 1;
  w.q = w.m;
  w.n_idx = 0;
  w.scale = scale;
  w.bottom.push_back(0.0);
  for (double b : m.b) w.bottom.push_back(b - 1.0);
  for (double a : m.a) w.top.push_back(a - 1.0);
  return w;
}

MeijerWeight kp_weight(const HypergeometricModel& m, double scale) {
  return bg_weight(swapped(m), scale);
}

MeijerWeight flavor_weight(const HypergeometricModel& m, Flavor flavor, double scale) {
  return flavor == Flavor::bg ? bg_weight(m, scale) : kp_weight(m, scale);
}

double mellin_log(const MeijerWeight& w, double s) {
  for (double b : w.bottom) {
    if (!(b + s > 0.0)) {
      fail(errc::invalid_argument, "mellin",
           "s=" + std::to_string(s) + " is not right of every pole");
    }
  }
  double lg = -s * std::log(w.scale);
  for (double b : w.bottom) lg += std::lgamma(b + s);
  for (double t : w.top) lg -= std::lgamma(t + s);
  return lg;
}

double mellin(const MeijerWeight& w, double s) { return std::exp(mellin_log(w, s)); }

int gamma_surplus(const MeijerWeight& w) {
  return static_cast<int>(w.bottom.size()) - static_cast<int>(w.top.size());
}

double support_bound(const MeijerWeight& w) {
  return gamma_surplus(w) == 0 ? 1.0 / w.scale : std::numeric_limits<double>::infinity();
}

bool has_closed_form(const MeijerWeight& w) {
  return reduce(w).kind != Reduction::Kind::none;
}

WeightForm weight_form(const MeijerWeight& w) {
  switch (reduce(w).kind) {
    case Reduction::Kind::gamma_power: return WeightForm::gamma_power;
    case Reduction::Kind::rational_sum: return WeightForm::rational_sum;
    case Reduction::Kind::none: break;
  }
  return WeightForm::contour;
}

double gamma_power_exponent(const MeijerWeight& w) {
  const Reduction red = reduce(w);
  if (red.kind != Reduction::Kind::gamma_power) {
    fail(errc::invalid_argument, "gamma_power_exponent",
         "weight does not reduce to e^{-u} u^kappa");
  }
  return red.kappa;
}

double weight_eval(const MeijerWeight& w, double x, const ContourSpec& contour) {
  if (!(x >= 0.0)) fail(errc::invalid_argument, "weight_eval", "x must be nonnegative");
  const Reduction red = reduce(w);
  if (red.kind != Reduction::Kind::none) {
    const double v = registry_eval(red, w, x);
    if (v < -contour.abs_tol) {
      fail(errc::negative_weight, "weight_eval",
           "registry value " + std::to_string(v) + " at x=" + std::to_string(x));
    }
    return v;
  }
  if (gamma_surplus(w) == 0 && !(w.scale * x < 1.0)) return 0.0;
  const ContourValue cv = contour_core(w, x, contour);
  if (cv.normalized < -contour.abs_tol) {
    fail(errc::negative_weight, "weight_eval",
         "contour value is negative at x=" + std::to_string(x));
  }
  const double lg = cv.log_peak + std::log(std::max(cv.normalized, 0.0));
  if (lg > kLogDblMax) fail(errc::overflow, "weight_eval", "value exceeds double range");
  return std::exp(lg);
}

double weight_eval_log(const MeijerWeight& w, double x, const ContourSpec& contour) {
  if (!(x >= 0.0)) fail(errc::invalid_argument, "weight_eval", "x must be nonnegative");
  const Reduction red = reduce(w);
  if (red.kind == Reduction::Kind::gamma_power) {
    const double u = w.scale * x;
    if (u == 0.0) {
      if (red.kappa > 0.0) return -std::numeric_limits<double>::infinity();
      if (red.kappa == 0.0) return 0.0;
      fail(errc::invalid_argument, "weight_eval", "weight is singular at x=0");
    }
    return -u + red.kappa * std::log(u);
  }
  if (red.kind == Reduction::Kind::rational_sum) {
    const double v = registry_eval(red, w, x);
    return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
  }
  if (gamma_surplus(w) == 0 && !(w.scale * x < 1.0)) {
    return -std::numeric_limits<double>::infinity();
  }
  const ContourValue cv = contour_core(w, x, contour);
  if (!(cv.normalized > 0.0)) {
    fail(errc::negative_weight, "weight_eval",
         "log requested but contour value is not positive at x=" + std::to_string(x));
  }
  return cv.log_peak + std::log(cv.normalized);
}

double weight_eval_contour(const MeijerWeight& w, double x, const ContourSpec& contour) {
  const ContourValue cv = contour_core(w, x, contour);
  return std::exp(cv.log_peak) * cv.normalized;
}

std::vector<MomentRow> moment_check(const MeijerWeight& w, int n_max,
                                    const RadialQuadrature& rule, const ContourSpec& contour) {
  if (n_max < 0) fail(errc::invalid_argument, "moment_check", "n_max must be nonnegative");
  const Reduction red = reduce(w);
  auto ev = make_weight_evaluator(w, contour);

  std::vector<MomentRow> rows;
  rows.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double expected = mellin(w, n + 1.0);
    double computed;
    if (red.kind == Reduction::Kind::gamma_power &&
        rule.scheme == QuadScheme::gauss_laguerre) {
      // weighted rule in u = scale*x: moments come out as scale^-(n+1) * sum w u^n
      const GaussLaguerreRule& gl = gauss_laguerre_rule(rule.order, red.kappa);
      double s = 0.0;
      for (int i = 0; i < gl.order; ++i) {
        s += std::exp(gl.logw[i] + n * std::log(gl.x[i]));
      }
      computed = s * std::pow(w.scale, -(n + 1.0));
    } else {
      RadialQuadrature r =
          rule.scheme == QuadScheme::adaptive ? rule : RadialQuadrature::adaptive_rule(1e-9);
      const auto f = [&](double x) { return ev->at(x) * std::pow(x, n); };
      computed = integrate(r, f, support_bound(w)).value;
    }
    const double rel = std::fabs(computed - expected) / std::fabs(expected);
    rows.push_back({n, computed, expected, rel});
  }
  return rows;
}

namespace {

/// Chebyshev interpolant of log W(e^t) on one t-interval.
struct ChebSegment {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> coef;
};

constexpr int kChebNodes = 21;

double cheb_eval(const ChebSegment& seg, double t) {
  const double u = (2.0 * t - seg.lo - seg.hi) / (seg.hi - seg.lo);
  double b1 = 0.0, b2 = 0.0;
  for (int k = kChebNodes - 1; k >= 1; --k) {
    const double b0 = 2.0 * u * b1 - b2 + seg.coef[k];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + 0.5 * seg.coef[0];
}

bool cheb_fit(const std::function<double(double)>& f, double lo, double hi, ChebSegment* out) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double fv[kChebNodes];
  for (int j = 0; j < kChebNodes; ++j) {
    const double t = mid + half * std::cos(kPi * (j + 0.5) / kChebNodes);
    fv[j] = f(t);
    if (!std::isfinite(fv[j])) return false;
  }
  out->lo = lo;
  out->hi = hi;
  out->coef.assign(kChebNodes, 0.0);
  for (int k = 0; k < kChebNodes; ++k) {
    double s = 0.0;
    for (int j = 0; j < kChebNodes; ++j) {
      s += fv[j] * std::cos(kPi * k * (j + 0.5) / kChebNodes);
    }
    out->coef[k] = 2.0 * s / kChebNodes;
  }
  return true;
}

/// Validated piecewise table of log W(e^t); segments split until the
/// interpolant agrees with the direct contour evaluation, and any non-finite
/// or stubborn sample abandons the table in favor of direct calls.
bool build_log_table(const MeijerWeight& w, const ContourSpec& contour, double t_lo, double t_hi,
                     std::vector<ChebSegment>* segs) {
  const auto direct = [&](double t) { return weight_eval_log(w, std::exp(t), contour); };
  struct Span {
    double lo, hi;
    int depth;
  };
  std::vector<Span> work;
  const int base = std::max(1, static_cast<int>((t_hi - t_lo) / 2.0));
  for (int i = base; i-- > 0;) {
    work.push_back({t_lo + (t_hi - t_lo) * i / base, t_lo + (t_hi - t_lo) * (i + 1) / base, 0});
  }
  while (!work.empty()) {
    const Span span = work.back();
    work.pop_back();
    ChebSegment seg;
    if (!cheb_fit(direct, span.lo, span.hi, &seg)) return false;
    bool accurate = true;
    for (double u : {-0.93, -0.51, -0.12, 0.33, 0.72, 0.96}) {
      const double t = 0.5 * (span.lo + span.hi) + 0.5 * (span.hi - span.lo) * u;
      const double ref = direct(t);
      if (!std::isfinite(ref) ||
          std::fabs(cheb_eval(seg, t) - ref) > 1e-11 * (1.0 + std::fabs(ref))) {
        accurate = false;
        break;
      }
    }
    if (accurate) {
      segs->push_back(std::move(seg));
      continue;
    }
    if (span.depth >= 10) return false;
    const double mid = 0.5 * (span.lo + span.hi);
    work.push_back({mid, span.hi, span.depth + 1});
    work.push_back({span.lo, mid, span.depth + 1});
  }
  std::sort(segs->begin(), segs->end(),
            [](const ChebSegment& a, const ChebSegment& b) { return a.lo < b.lo; });
  return true;
}

}  // namespace

struct WeightEvaluator::Cache {
  std::mutex mu;
  std::unordered_map<long long, double> lin;
  std::unordered_map<long long, double> lg;
  bool is_contour = false;
  bool table_tried = false;
  bool table_ok = false;
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::vector<ChebSegment> segs;
};

WeightEvaluator::WeightEvaluator(MeijerWeight w, ContourSpec contour)
    : weight_(std::move(w)), contour_(contour), cache_(new Cache) {
  cache_->is_contour = weight_form(weight_) == WeightForm::contour;
}

WeightEvaluator::~WeightEvaluator() = default;

double WeightEvaluator::at(double x) const {
  if (x > 0.0) {
    const double lw = table_log_at(x);
    if (!std::isnan(lw)) return std::exp(lw);
  }
  const long long key = double_key(x);
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->lin.find(key);
    if (it != cache_->lin.end()) return it->second;
  }
  const double v = weight_eval(weight_, x, contour_);
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->lin[key] = v;  // idempotent: any racer computed the same value
  return v;
}

double WeightEvaluator::log_at(double x) const {
  if (x > 0.0) {
    const double lw = table_log_at(x);
    if (!std::isnan(lw)) return lw;
  }
  const long long key = double_key(x);
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->lg.find(key);
    if (it != cache_->lg.end()) return it->second;
  }
  const double v = weight_eval_log(weight_, x, contour_);
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->lg[key] = v;
  return v;
}

double WeightEvaluator::table_log_at(double x) const {
  if (!cache_->is_contour) return std::numeric_limits<double>::quiet_NaN();
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->table_tried) {
    cache_->table_tried = true;
    cache_->t_lo = std::log(1e-12 / weight_.scale);
    cache_->t_hi = std::log(256.0 / weight_.scale);
    try {
      cache_->table_ok =
          build_log_table(weight_, contour_, cache_->t_lo, cache_->t_hi, &cache_->segs);
    } catch (const error&) {
      cache_->table_ok = false;
    }
    if (!cache_->table_ok) cache_->segs.clear();
  }
  const double t = std::log(x);
  if (!cache_->table_ok || t < cache_->t_lo || t > cache_->t_hi) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  auto it = std::upper_bound(cache_->segs.begin(), cache_->segs.end(), t,
                             [](double v, const ChebSegment& s) { return v < s.hi; });
  if (it == cache_->segs.end()) it = std::prev(cache_->segs.end());
  return cheb_eval(*it, t);
}

std::shared_ptr<WeightEvaluator> make_weight_evaluator(const MeijerWeight& w,
                                                       const ContourSpec& contour) {
  return std::make_shared<WeightEvaluator>(w, contour);
}

}  // namespace ncs
