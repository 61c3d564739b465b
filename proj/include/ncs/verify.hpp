#pragma once

#include <string>
#include <vector>

namespace ncs {

struct CheckRecord {
  std::string id;
  std::string identity;
  double computed = 0.0;
  double expected = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  bool pass = true;
};

/// Suites: canonical | pho-bg | pho-kp | moments | all.
VerificationReport run_suite(const std::string& suite);

std::string report_to_json(const VerificationReport& r);

}  // namespace ncs
