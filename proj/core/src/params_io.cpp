#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "ricker/errors.hpp"
#include "ricker/system.hpp"

namespace ricker {
namespace {

using nlohmann::json;

PeriodicSeq read_seq(const json& doc, const char* key) {
  if (!doc.contains(key)) throw DomainError(std::string("parameter file is missing key '") + key + "'");
  const json& node = doc.at(key);
  if (node.is_number()) return PeriodicSeq(node.get<double>());
  if (node.is_array()) {
    if (node.empty()) throw DomainError(std::string("parameter '") + key + "' is an empty array");
    std::vector<double> values;
    values.reserve(node.size());
    for (const auto& v : node) {
      if (!v.is_number()) throw DomainError(std::string("parameter '") + key + "' has a non-numeric entry");
      values.push_back(v.get<double>());
    }
    return PeriodicSeq(std::move(values));
  }
  throw DomainError(std::string("parameter '") + key + "' must be a number or an array of numbers");
}

}  // namespace

RickerSystem parse_system(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed parameter JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("parameter file must hold a JSON object");

  static constexpr const char* kKeys[] = {"alpha", "beta", "sigma1", "sigma2", "c1", "c2"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw DomainError("unknown parameter key '" + key + "'");
    }
  }

  RickerSystem sys;
  sys.alpha = read_seq(doc, "alpha");
  sys.beta = read_seq(doc, "beta");
  sys.sigma1 = read_seq(doc, "sigma1");
  sys.sigma2 = read_seq(doc, "sigma2");
  sys.c1 = read_seq(doc, "c1");
  sys.c2 = read_seq(doc, "c2");
  sys.validate();
  return sys;
}

RickerSystem load_system(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read parameter file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

}  // namespace ricker
