#include "ncs/model_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ncs/errors.hpp"
#include "ncs/pho.hpp"

namespace ncs {
namespace {

std::vector<double> parse_param_list(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    fail(errc::invalid_argument, "model_io",
         std::string("missing or non-array field \"") + key + "\"");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number())
      fail(errc::invalid_argument, "model_io",
           std::string("non-numeric entry in \"") + key + "\"");
    out.push_back(v.get<double>());
  }
  return out;
}

int parse_count(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    fail(errc::invalid_argument, "model_io",
         std::string("missing or non-integer field \"") + key + "\"");
  return j.at(key).get<int>();
}

}  // namespace

HypergeometricModel model_from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    fail(errc::invalid_argument, "model_io", "input is not a JSON object");
  const auto a = parse_param_list(j, "a");
  const auto b = parse_param_list(j, "b");
  const int p = parse_count(j, "p");
  const int q = parse_count(j, "q");
  if (p != static_cast<int>(a.size()) || q != static_cast<int>(b.size()))
    fail(errc::invalid_argument, "model_io",
         "declared counts disagree with the parameter lists");
  return HypergeometricModel(a, b);
}

HypergeometricModel model_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(errc::invalid_argument, "model_io", "cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json_text(buf.str());
}

std::string model_to_json_text(const HypergeometricModel& m) {
  nlohmann::json j;
  j["p"] = m.p();
  j["q"] = m.q();
  j["a"] = m.a;
  j["b"] = m.b;
  return j.dump();
}

HypergeometricModel model_from_spec(const std::string& spec) {
  if (spec.empty())
    fail(errc::invalid_argument, "model_io", "empty model spec");
  if (spec == "canonical") return HypergeometricModel({}, {});
  if (spec.rfind("pho:", 0) == 0) {
    const std::string arg = spec.substr(4);
    double k = 0.0;
    std::size_t used = 0;
    try {
      k = std::stod(arg, &used);
    } catch (const std::exception&) {
      fail(errc::invalid_argument, "model_io", "bad pho parameter: " + arg);
    }
    if (used != arg.size())
      fail(errc::invalid_argument, "model_io", "bad pho parameter: " + arg);
    return pho_model(k);
  }
  return model_from_file(spec);
}

}  // namespace ncs
