#pragma once

#include <string>
#include <vector>

#include "ncs/quadrature.hpp"

namespace ncs {

/// Inclusive grid; steps is the point count, steps == 1 yields {xmin}.
struct Grid {
  double xmin = 0.0;
  double xmax = 0.0;
  int steps = 1;
  std::vector<double> points() const;
};

Grid parse_grid(const std::string& text);

/// "gl:<order>" or "adaptive:<tol>".
RadialQuadrature parse_quad(const std::string& text);

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

/// From NCS_LOG (quiet | info | debug); unknown or unset means quiet.
LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

/// %.16e rendering used by every CSV cell.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string csv_to_string(const CsvTable& t);
std::string json_to_string(const CsvTable& t);

/// "-" or empty path writes to stdout.
void write_text(const std::string& path, const std::string& content);

}  // namespace ncs
