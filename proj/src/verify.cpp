#include "ncs/verify.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ncs/errors.hpp"
#include "ncs/hyper.hpp"
#include "ncs/meijer.hpp"
#include "ncs/pho.hpp"
#include "ncs/quadrature.hpp"
#include "ncs/states.hpp"
#include "ncs/thermal.hpp"
#include "ncs/transform.hpp"

namespace ncs {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string tag(const std::string& base, const std::string& key, double v) {
  std::ostringstream os;
  os << base << '/' << key << '=' << v;
  return os.str();
}

void add_record(std::vector<CheckRecord>& out, std::string id,
                std::string identity, double tol, double computed,
                double expected, double rel_err, std::string note = {}) {
  CheckRecord rec;
  rec.id = std::move(id);
  rec.identity = std::move(identity);
  rec.tol = tol;
  rec.computed = computed;
  rec.expected = expected;
  rec.rel_err = rel_err;
  rec.pass = std::isfinite(computed) && std::isfinite(rel_err) && rel_err <= tol;
  rec.note = std::move(note);
  out.push_back(std::move(rec));
}

template <typename Fn>
void add_check(std::vector<CheckRecord>& out, std::string id,
               std::string identity, double tol, Fn&& fn) {
  double computed = kNan;
  double expected = kNan;
  double rel = kNan;
  std::string note;
  try {
    const std::pair<double, double> pair = fn();
    computed = pair.first;
    expected = pair.second;
    const double denom = std::fabs(expected);
    rel = denom > 0.0 ? std::fabs(computed - expected) / denom
                      : std::fabs(computed - expected);
  } catch (const error& e) {
    note = e.what();
  }
  add_record(out, std::move(id), std::move(identity), tol, computed, expected,
             rel, std::move(note));
}

double canonical_q(double nbar, double x) {
  return std::exp(-x / (nbar + 1.0)) / (nbar + 1.0);
}

double canonical_p(double nbar, double x) {
  return std::exp(-x / nbar) / nbar;
}

double pho_bg_p(double k, double nbar, double x) {
  return std::exp(-x / nbar + k * std::log1p(1.0 / nbar)) / nbar;
}

double fock_norm_sum(const StateFamily& fam, double msq, double phase) {
  const auto label = ComplexLabel::polar_sq(msq, phase);
  double s = 0.0;
  for (int n = 0; n <= 400; ++n) s += std::norm(fam.fock_coefficient(n, label));
  return s;
}

void canonical_suite(std::vector<CheckRecord>& out) {
  const HypergeometricModel model({}, {});
  const StateFamily fam(model, Flavor::bg);
  const auto quad = RadialQuadrature::adaptive_rule(1e-10);
  const ThermalParams t = ThermalParams::from_nbar(1.0);

  add_check(out, "canonical/unit-fixed-point", "unit-function-fixed-point",
            1e-10, [&] {
              const RadialFunction one{[](double) { return 1.0; }};
              return std::make_pair(gft(fam, one, 1.0, quad), 1.0);
            });
  for (double x : {0.5, 2.0}) {
    add_check(out, tag("canonical/p-to-q", "x", x), "thermal-p-to-q", 1e-8,
              [&, x] {
                const RadialFunction p{
                    [&](double y) { return canonical_p(t.nbar, y); }};
                return std::make_pair(gft(fam, p, x, quad),
                                      canonical_q(t.nbar, x));
              });
    add_check(out, tag("canonical/q-to-p", "x", x), "thermal-q-to-p", 1e-8,
              [&, x] {
                const RadialFunction qf{
                    [&](double A) { return canonical_q(t.nbar, A); }};
                const GftInverter inv(fam, qf, quad);
                return std::make_pair(inv.at(x), canonical_p(t.nbar, x));
              });
  }
  add_check(out, "canonical/anti-diagonal/a2=1", "mehta-anti-diagonal", 1e-12,
            [&] {
              return std::make_pair(mehta_anti_diagonal(t, 1.0),
                                    0.5 * std::exp(-0.5));
            });
  {
    double computed = kNan, expected = kNan, rel = kNan;
    std::string note;
    try {
      const TransformCheck chk =
          mehta_formula_check(t, 1.0, RadialQuadrature::gauss(64));
      computed = chk.computed;
      expected = chk.expected;
      rel = chk.rel_err;
    } catch (const error& e) {
      note = e.what();
    }
    add_record(out, "canonical/mehta-2d/z2=1", "mehta-2d-reconstruction", 1e-6,
               computed, expected, rel, note);
  }
  add_check(out, "canonical/state-norm", "state-normalization", 1e-10, [&] {
    return std::make_pair(fock_norm_sum(fam, 1.5, 0.7), 1.0);
  });
}

void pho_bg_suite(std::vector<CheckRecord>& out) {
  const double k = 1.0;
  const StateFamily fam(pho_model(k), Flavor::bg);
  const auto quad = RadialQuadrature::adaptive_rule(1e-10);
  const ThermalParams t = ThermalParams::from_nbar(1.0);

  for (double x : {0.5, 2.0}) {
    add_check(out, tag("pho-bg/p-to-q", "x", x), "thermal-p-to-q", 1e-8,
              [&, x] {
                const RadialFunction p{
                    [&](double y) { return p_quasi(fam, t, y); }};
                return std::make_pair(gft(fam, p, x, quad),
                                      husimi_q(fam, t, x));
              });
    add_check(out, tag("pho-bg/q-to-p", "x", x), "thermal-q-to-p", 1e-8,
              [&, x] {
                const RadialFunction qf{
                    [&](double A) { return husimi_q(fam, t, A); }};
                const GftInverter inv(fam, qf, quad);
                return std::make_pair(inv.at(x), pho_bg_p(k, t.nbar, x));
              });
  }
  {
    const StateFamily fam_eps(pho_model(1e-12), Flavor::bg);
    add_check(out, "pho-bg/limit/husimi", "limit-degeneracy", 1e-10, [&] {
      return std::make_pair(husimi_q(fam_eps, t, 1.0), canonical_q(t.nbar, 1.0));
    });
    add_check(out, "pho-bg/limit/p", "limit-degeneracy", 1e-10, [&] {
      return std::make_pair(p_quasi(fam_eps, t, 1.0), canonical_p(t.nbar, 1.0));
    });
    add_check(out, "pho-bg/limit/weight", "limit-degeneracy", 1e-10, [&] {
      return std::make_pair(fam_eps.measure_weight_reduced(2.0), std::exp(-2.0));
    });
    add_check(out, "pho-bg/limit/norm", "limit-degeneracy", 1e-10, [&] {
      return std::make_pair(fam_eps.normalization(1.5), std::exp(1.5));
    });
  }
  add_check(out, "pho-bg/moment/n=3", "optical-equivalence", 1e-8, [&] {
    const auto rows = p_moment_condition_check(fam, t, 3, quad);
    return std::make_pair(rows.back().computed, rows.back().expected);
  });
  add_check(out, "pho-bg/state-norm", "state-normalization", 1e-10, [&] {
    return std::make_pair(fock_norm_sum(fam, 2.0, 0.3), 1.0);
  });
}

void pho_kp_suite(std::vector<CheckRecord>& out) {
  const double k = 1.0;
  const StateFamily fam(pho_model(k), Flavor::kp);
  const auto quad = RadialQuadrature::adaptive_rule(1e-10);
  const ThermalParams t = ThermalParams::from_nbar(1.0);

  for (double x : {0.5, 2.0}) {
    add_check(out, tag("pho-kp/p-to-q", "x", x), "thermal-p-to-q", 1e-6,
              [&, x] {
                const RadialFunction p{
                    [&](double y) { return p_quasi(fam, t, y); }};
                return std::make_pair(gft(fam, p, x, quad),
                                      husimi_q(fam, t, x));
              });
    add_check(out, tag("pho-kp/q-to-p", "x", x), "thermal-q-to-p", 1e-6,
              [&, x] {
                const RadialFunction qf{
                    [&](double A) { return husimi_q(fam, t, A); }};
                const GftInverter inv(fam, qf, quad);
                return std::make_pair(inv.at(x), p_quasi(fam, t, x));
              });
  }
  add_check(out, "pho-kp/duality/n=30", "structure-duality", 1e-12, [&] {
    const HypergeometricModel m = pho_model(1.5);
    const double lhs = structure_rho_log(m, 30) + structure_rho_dual_log(m, 30);
    return std::make_pair(std::exp(lhs - 2.0 * std::lgamma(31.0)), 1.0);
  });
  add_check(out, "pho-kp/moment/n=2", "optical-equivalence", 1e-6, [&] {
    const auto rows = p_moment_condition_check(fam, t, 2, quad);
    return std::make_pair(rows.back().computed, rows.back().expected);
  });
  add_check(out, "pho-kp/state-norm", "state-normalization", 1e-10, [&] {
    return std::make_pair(fock_norm_sum(fam, 2.0, 0.3), 1.0);
  });
}

void moments_suite(std::vector<CheckRecord>& out) {
  struct Entry {
    const char* name;
    HypergeometricModel model;
    Flavor flavor;
    double tol;
  };
  const std::vector<Entry> entries = {
      {"canonical", HypergeometricModel({}, {}), Flavor::bg, 1e-8},
      {"pho-bg", pho_model(1.0), Flavor::bg, 1e-8},
      {"pho-kp", pho_model(1.0), Flavor::kp, 1e-6},
  };
  for (const auto& entry : entries) {
    const MeijerWeight w = flavor_weight(entry.model, entry.flavor);
    for (int n : {5, 10}) {
      std::ostringstream id;
      id << "moments/" << entry.name << "/n=" << n;
      add_check(out, id.str(), "measure-moments", entry.tol, [&] {
        const auto rows =
            moment_check(w, n, RadialQuadrature::gauss(128));
        return std::make_pair(rows.back().computed, rows.back().expected);
      });
    }
  }
  {
    const StateFamily fam(HypergeometricModel({}, {}), Flavor::bg);
    const ThermalParams t = ThermalParams::from_nbar(1.0);
    const auto quad = RadialQuadrature::adaptive_rule(1e-10);
    const auto rows = p_moment_condition_check(fam, t, 1, quad);
    add_record(out, "moments/optical/canonical/n=0", "optical-equivalence",
               1e-8, rows[0].computed, rows[0].expected, rows[0].rel_err);
    add_record(out, "moments/optical/canonical/n=1", "optical-equivalence",
               1e-8, rows[1].computed, rows[1].expected, rows[1].rel_err);
  }
  add_check(out, "moments/optical/pho-bg/n=3", "optical-equivalence", 1e-8,
            [&] {
              const StateFamily fam(pho_model(2.0), Flavor::bg);
              const ThermalParams t = ThermalParams::from_nbar(0.5);
              const auto rows = p_moment_condition_check(
                  fam, t, 3, RadialQuadrature::adaptive_rule(1e-10));
              return std::make_pair(rows.back().computed, rows.back().expected);
            });
  for (double a : {0.5, 1.0, 2.0}) {
    double computed = kNan, expected = kNan, rel = kNan;
    std::string note;
    try {
      const GaussianCheck chk =
          gaussian_integral_check(a, std::complex<double>(1.0, 1.0), 2);
      computed = std::abs(chk.computed);
      expected = std::abs(chk.expected);
      rel = chk.rel_err;
    } catch (const error& e) {
      note = e.what();
    }
    add_record(out, tag("moments/gaussian", "a", a), "gaussian-moment", 1e-8,
               computed, expected, rel, note);
  }
}

}  // namespace

VerificationReport run_suite(const std::string& suite) {
  VerificationReport report;
  report.suite = suite;
  if (suite == "canonical") {
    canonical_suite(report.checks);
  } else if (suite == "pho-bg") {
    pho_bg_suite(report.checks);
  } else if (suite == "pho-kp") {
    pho_kp_suite(report.checks);
  } else if (suite == "moments") {
    moments_suite(report.checks);
  } else if (suite == "all") {
    canonical_suite(report.checks);
    pho_bg_suite(report.checks);
    pho_kp_suite(report.checks);
    moments_suite(report.checks);
  } else {
    fail(errc::invalid_argument, "verify", "unknown suite: " + suite);
  }
  report.pass = true;
  for (const auto& rec : report.checks) report.pass = report.pass && rec.pass;
  return report;
}

std::string report_to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["pass"] = r.pass;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& rec : r.checks) {
    nlohmann::json c;
    c["id"] = rec.id;
    c["identity"] = rec.identity;
    c["computed"] = rec.computed;
    c["expected"] = rec.expected;
    c["rel_err"] = rec.rel_err;
    c["tol"] = rec.tol;
    c["pass"] = rec.pass;
    c["note"] = rec.note;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

}  // namespace ncs
