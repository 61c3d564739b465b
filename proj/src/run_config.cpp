#include "ncs/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ncs/errors.hpp"

namespace ncs {
namespace {

std::vector<std::string> split_fields(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_number(const std::string& text, const char* what) {
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    fail(errc::invalid_argument, "run_config",
         std::string("bad ") + what + ": " + text);
  }
  if (used != text.size() || !std::isfinite(v))
    fail(errc::invalid_argument, "run_config",
         std::string("bad ") + what + ": " + text);
  return v;
}

int parse_int(const std::string& text, const char* what) {
  const double v = parse_number(text, what);
  const int n = static_cast<int>(v);
  if (static_cast<double>(n) != v)
    fail(errc::invalid_argument, "run_config",
         std::string("bad ") + what + ": " + text);
  return n;
}

}  // namespace

std::vector<double> Grid::points() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out.push_back(xmin);
    return out;
  }
  const double span = (xmax - xmin) / (steps - 1);
  for (int i = 0; i < steps; ++i) out.push_back(xmin + span * i);
  return out;
}

Grid parse_grid(const std::string& text) {
  const auto fields = split_fields(text, ':');
  if (fields.size() != 3)
    fail(errc::invalid_argument, "run_config",
         "grid must be xmin:xmax:steps, got: " + text);
  Grid g;
  g.xmin = parse_number(fields[0], "grid xmin");
  g.xmax = parse_number(fields[1], "grid xmax");
  g.steps = parse_int(fields[2], "grid steps");
  if (g.steps < 1)
    fail(errc::invalid_argument, "run_config", "grid steps must be at least 1");
  if (g.xmax < g.xmin)
    fail(errc::invalid_argument, "run_config", "grid xmax must not be below xmin");
  return g;
}

RadialQuadrature parse_quad(const std::string& text) {
  const auto fields = split_fields(text, ':');
  if (fields.size() == 2 && fields[0] == "gl") {
    const int order = parse_int(fields[1], "quadrature order");
    if (order < 2 || order > 2048)
      fail(errc::invalid_argument, "run_config",
           "quadrature order out of range: " + fields[1]);
    return RadialQuadrature::gauss(order);
  }
  if (fields.size() == 2 && fields[0] == "adaptive") {
    const double tol = parse_number(fields[1], "quadrature tolerance");
    if (!(tol > 0.0) || tol >= 1.0)
      fail(errc::invalid_argument, "run_config",
           "quadrature tolerance out of range: " + fields[1]);
    return RadialQuadrature::adaptive_rule(tol);
  }
  fail(errc::invalid_argument, "run_config",
       "quadrature must be gl:<order> or adaptive:<tol>, got: " + text);
}

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("NCS_LOG");
    if (env == nullptr) return LogLevel::quiet;
    const std::string v(env);
    if (v == "debug") return LogLevel::debug;
    if (v == "info") return LogLevel::info;
    return LogLevel::quiet;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::info)
    std::fprintf(stderr, "[ncs] %s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::debug)
    std::fprintf(stderr, "[ncs:debug] %s\n", msg.c_str());
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string csv_to_string(const CsvTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i > 0) out += ',';
    out += t.header[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string json_to_string(const CsvTable& t) {
  nlohmann::json j;
  j["header"] = t.header;
  j["rows"] = t.rows;
  return j.dump() + "\n";
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    fail(errc::invalid_argument, "run_config", "cannot open output file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out)
    fail(errc::invalid_argument, "run_config", "failed writing output file: " + path);
}

}  // namespace ncs
