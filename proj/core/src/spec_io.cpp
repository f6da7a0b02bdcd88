#include "cyclescope/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "cyclescope/errors.hpp"
#include "json.hpp"

namespace cyclescope {

namespace {

using nlohmann::json;

BivariatePoly parse_terms(const json& doc, const char* key) {
  BivariatePoly p;
  if (!doc.contains(key)) return p;
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw ParseError(std::string("spec: '") + key + "' must be an array");
  for (const json& t : arr) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
        !t[2].is_number())
      throw ParseError(std::string("spec: entries of '") + key + "' must be [i, j, value]");
    const int i = t[0].get<int>(), j = t[1].get<int>();
    if (i < 0 || j < 0) throw ParseError("spec: negative exponent");
    p.add_term(i, j, t[2].get<double>());
  }
  return p;
}

json terms_to_json(const BivariatePoly& p) {
  json arr = json::array();
  for (const auto& [m, c] : p.terms()) arr.push_back({m.i, m.j, c});
  return arr;
}

}  // namespace

PerturbationSpec parse_spec_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("spec: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("spec: top level must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ParseError("spec: missing integer 'n'");
  const int n = doc["n"].get<int>();
  if (n < 0) throw ParseError("spec: 'n' must be nonnegative");
  return PerturbationSpec(n, parse_terms(doc, "a"), parse_terms(doc, "b"));
}

PerturbationSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("spec: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_json(buf.str());
}

std::string spec_to_json(const PerturbationSpec& spec) {
  json doc{{"n", spec.n()}, {"a", terms_to_json(spec.f())}, {"b", terms_to_json(spec.g())}};
  return doc.dump();
}

}  // namespace cyclescope
