#pragma once

#include <string>

#include "ncs/hyper.hpp"

namespace ncs {

/// JSON shape: {"p": <int>, "q": <int>, "a": [...], "b": [...]} with
/// p == a.size() and q == b.size().
HypergeometricModel model_from_json_text(const std::string& text);
HypergeometricModel model_from_file(const std::string& path);
std::string model_to_json_text(const HypergeometricModel& m);

/// Accepts "canonical", "pho:<k>", or a path to a JSON model file.
HypergeometricModel model_from_spec(const std::string& spec);

}  // namespace ncs
