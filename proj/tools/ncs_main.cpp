#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ncs/errors.hpp"
#include "ncs/hyper.hpp"
#include "ncs/meijer.hpp"
#include "ncs/model_io.hpp"
#include "ncs/pho.hpp"
#include "ncs/quadrature.hpp"
#include "ncs/run_config.hpp"
#include "ncs/states.hpp"
#include "ncs/thermal.hpp"
#include "ncs/transform.hpp"
#include "ncs/verify.hpp"

namespace {

ncs::Flavor parse_flavor(const std::string& text) {
  if (text == "bg") return ncs::Flavor::bg;
  if (text == "kp") return ncs::Flavor::kp;
  ncs::fail(ncs::errc::invalid_argument, "cli", "flavor must be bg or kp, got: " + text);
}

struct EvalOpts {
  std::string quantity = "q";
  std::string model = "canonical";
  std::string flavor = "bg";
  double nbar = 1.0;
  double phase = 0.0;
  std::string grid = "0.1:10:25";
  std::string format = "csv";
  std::string output = "-";
};

int run_eval(const EvalOpts& o) {
  const ncs::HypergeometricModel model = ncs::model_from_spec(o.model);
  const ncs::StateFamily fam(model, parse_flavor(o.flavor));
  const ncs::ThermalParams t = ncs::ThermalParams::from_nbar(o.nbar);
  const ncs::Grid grid = ncs::parse_grid(o.grid);
  ncs::log_info("eval " + o.quantity + " over " + std::to_string(grid.steps) +
                " points");
  ncs::CsvTable table;
  table.header = {"x", "value"};
  for (double x : grid.points()) {
    double v = 0.0;
    if (o.quantity == "q") {
      v = ncs::husimi_q(fam, t, x);
    } else if (o.quantity == "p") {
      v = ncs::p_quasi(fam, t, x);
    } else if (o.quantity == "norm") {
      v = fam.normalization(x);
    } else if (o.quantity == "weight") {
      v = fam.measure_weight(x);
    } else if (o.quantity == "weight-red") {
      v = fam.measure_weight_reduced(x);
    } else if (o.quantity == "overlap") {
      const auto z1 = ncs::ComplexLabel::polar_sq(x, 0.0);
      const auto z2 = ncs::ComplexLabel::polar_sq(x, o.phase);
      v = std::abs(fam.overlap(z1, z2));
    } else {
      ncs::fail(ncs::errc::invalid_argument, "cli",
                "unknown quantity: " + o.quantity);
    }
    table.rows.push_back({x, v});
  }
  const std::string body =
      o.format == "json" ? ncs::json_to_string(table) : ncs::csv_to_string(table);
  ncs::write_text(o.output, body);
  return 0;
}

struct TransformOpts {
  std::string direction = "p-to-q";
  std::string model = "canonical";
  std::string flavor = "bg";
  double nbar = 1.0;
  std::string grid = "0.1:10:25";
  std::string quad = "adaptive:1e-10";
  std::string output = "-";
};

int run_transform(const TransformOpts& o) {
  const ncs::HypergeometricModel model = ncs::model_from_spec(o.model);
  const ncs::StateFamily fam(model, parse_flavor(o.flavor));
  const ncs::ThermalParams t = ncs::ThermalParams::from_nbar(o.nbar);
  const ncs::Grid grid = ncs::parse_grid(o.grid);
  const ncs::RadialQuadrature quad = ncs::parse_quad(o.quad);
  ncs::log_info("transform " + o.direction + " over " +
                std::to_string(grid.steps) + " points");
  ncs::CsvTable table;
  table.header = {"x", "transformed", "closed_form", "rel_err"};
  if (o.direction == "p-to-q") {
    const ncs::RadialFunction f{
        [&](double y) { return ncs::p_quasi(fam, t, y); }};
    const ncs::GftEngine engine(fam, f, quad);
    for (double x : grid.points()) {
      const double tr = engine.forward(x);
      const double cl = ncs::husimi_q(fam, t, x);
      table.rows.push_back({x, tr, cl, std::fabs(tr - cl) / std::fabs(cl)});
    }
  } else if (o.direction == "q-to-p") {
    const ncs::RadialFunction F{
        [&](double A) { return ncs::husimi_q(fam, t, A); }};
    const ncs::GftInverter inv(fam, F, quad);
    for (double x : grid.points()) {
      const double tr = inv.at(x);
      const double cl = ncs::p_quasi(fam, t, x);
      table.rows.push_back({x, tr, cl, std::fabs(tr - cl) / std::fabs(cl)});
    }
  } else {
    ncs::fail(ncs::errc::invalid_argument, "cli",
              "direction must be p-to-q or q-to-p, got: " + o.direction);
  }
  ncs::write_text(o.output, ncs::csv_to_string(table));
  return 0;
}

struct MomentsOpts {
  std::string model = "canonical";
  std::string flavor = "bg";
  int nmax = 10;
  std::string quad = "gl:128";
  std::string output = "-";
};

int run_moments(const MomentsOpts& o) {
  const ncs::HypergeometricModel model = ncs::model_from_spec(o.model);
  const ncs::MeijerWeight w = ncs::flavor_weight(model, parse_flavor(o.flavor));
  const auto rows = ncs::moment_check(w, o.nmax, ncs::parse_quad(o.quad));
  std::string body = "n,computed,expected,rel_err\n";
  for (const auto& row : rows) {
    body += std::to_string(row.n);
    body += ',';
    body += ncs::format_double(row.computed);
    body += ',';
    body += ncs::format_double(row.expected);
    body += ',';
    body += ncs::format_double(row.rel_err);
    body += '\n';
  }
  ncs::write_text(o.output, body);
  return 0;
}

struct VerifyOpts {
  std::string suite = "all";
  std::string output = "-";
};

int run_verify(const VerifyOpts& o) {
  const ncs::VerificationReport report = ncs::run_suite(o.suite);
  ncs::write_text(o.output, ncs::report_to_json(report));
  return report.pass ? 0 : 1;
}

struct PhoOpts {
  int j = 0;
  double mass = 1.0;
  double omega = 1.0;
  double r0 = 1.0;
  double hbar = 1.0;
  std::string output = "-";
};

int run_pho_k(const PhoOpts& o) {
  ncs::PhoParams params;
  params.j = o.j;
  params.mass = o.mass;
  params.omega = o.omega;
  params.r0 = o.r0;
  params.hbar = o.hbar;
  const double k = ncs::bargmann_k(params);
  const ncs::HypergeometricModel model = ncs::pho_model(k);
  nlohmann::json j;
  j["k"] = k;
  j["model"] = nlohmann::json::parse(ncs::model_to_json_text(model));
  ncs::write_text(o.output, j.dump() + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diagonal-kernel transforms for nonlinear coherent state families"};
  app.require_subcommand(1);

  EvalOpts eo;
  CLI::App* eval = app.add_subcommand("eval", "evaluate state-family quantities on a grid");
  eval->add_option("--quantity", eo.quantity, "q | p | norm | weight | weight-red | overlap")
      ->check(CLI::IsMember({"q", "p", "norm", "weight", "weight-red", "overlap"}));
  eval->add_option("--model", eo.model, "canonical | pho:<k> | <json file>");
  eval->add_option("--flavor", eo.flavor, "bg | kp")->check(CLI::IsMember({"bg", "kp"}));
  eval->add_option("--nbar", eo.nbar, "thermal occupation");
  eval->add_option("--phase", eo.phase, "relative phase for overlap");
  eval->add_option("--grid", eo.grid, "xmin:xmax:steps");
  eval->add_option("--format", eo.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  eval->add_option("--output", eo.output, "output path, - for stdout");

  TransformOpts to;
  CLI::App* transform = app.add_subcommand("transform", "run the diagonal-kernel transform on a grid");
  transform->add_option("--direction", to.direction, "p-to-q | q-to-p")
      ->check(CLI::IsMember({"p-to-q", "q-to-p"}));
  transform->add_option("--model", to.model, "canonical | pho:<k> | <json file>");
  transform->add_option("--flavor", to.flavor, "bg | kp")->check(CLI::IsMember({"bg", "kp"}));
  transform->add_option("--nbar", to.nbar, "thermal occupation");
  transform->add_option("--grid", to.grid, "xmin:xmax:steps");
  transform->add_option("--quad", to.quad, "gl:<order> | adaptive:<tol>");
  transform->add_option("--output", to.output, "output path, - for stdout");

  MomentsOpts mo;
  CLI::App* moments = app.add_subcommand("moments", "check measure moments against analytic values");
  moments->add_option("--model", mo.model, "canonical | pho:<k> | <json file>");
  moments->add_option("--flavor", mo.flavor, "bg | kp")->check(CLI::IsMember({"bg", "kp"}));
  moments->add_option("--nmax", mo.nmax, "highest moment")->check(CLI::Range(0, 60));
  moments->add_option("--quad", mo.quad, "gl:<order> | adaptive:<tol>");
  moments->add_option("--output", mo.output, "output path, - for stdout");

  VerifyOpts vo;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite and emit a JSON report");
  verify->add_option("--suite", vo.suite, "canonical | pho-bg | pho-kp | moments | all")
      ->check(CLI::IsMember({"canonical", "pho-bg", "pho-kp", "moments", "all"}));
  verify->add_option("--output", vo.output, "output path, - for stdout");

  PhoOpts po;
  CLI::App* pho = app.add_subcommand("pho-k", "map oscillator parameters to the model parameter k");
  pho->add_option("--j", po.j, "angular momentum quantum number")->check(CLI::Range(0, 1000000));
  pho->add_option("--mass", po.mass, "particle mass");
  pho->add_option("--omega", po.omega, "oscillator frequency");
  pho->add_option("--r0", po.r0, "equilibrium radius");
  pho->add_option("--hbar", po.hbar, "reduced Planck constant");
  pho->add_option("--output", po.output, "output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval) return run_eval(eo);
    if (*transform) return run_transform(to);
    if (*moments) return run_moments(mo);
    if (*verify) return run_verify(vo);
    if (*pho) return run_pho_k(po);
  } catch (const ncs::error& e) {
    std::fprintf(stderr, "ncs: %s\n", e.what());
    return e.code() == ncs::errc::invalid_argument ? 2 : 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ncs: %s\n", e.what());
    return 3;
  }
  return 2;
}
