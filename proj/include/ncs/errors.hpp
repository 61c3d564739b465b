#pragma once

#include <stdexcept>
#include <string>

namespace ncs {

enum class errc {
  outside_radius,
  non_convergent,
  overflow,
  negative_weight,
  division_unstable,
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::outside_radius:    return "outside_radius";
    case errc::non_convergent:    return "non_convergent";
    case errc::overflow:          return "overflow";
    case errc::negative_weight:   return "negative_weight";
    case errc::division_unstable: return "division_unstable";
    case errc::invalid_argument:  return "invalid_argument";
  }
  return "unknown";
}

/// Error carrying a machine-readable code plus the operation that raised it.
class error : public std::runtime_error {
 public:
  error(errc code, std::string op, std::string what_arg)
      : std::runtime_error(op + ": " + what_arg + " [" + errc_name(code) + "]"),
        code_(code),
        op_(std::move(op)) {}

  errc code() const noexcept { return code_; }
  const std::string& op() const noexcept { return op_; }

 private:
  errc code_;
  std::string op_;
};

[[noreturn]] inline void fail(errc code, const std::string& op, const std::string& msg) {
  throw error(code, op, msg);
}

}  // namespace ncs
