#include "lsrk/scheme_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lsrk {
namespace {

using nlohmann::json;

json strings(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}
json strings(const std::vector<ExtFloat>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

template <class T>
void write_forms(json& j, const SchemeForms<T>& f) {
  const auto t = tableau_of(f);
  j["c"] = strings(t.c_values());
  j["b"] = strings(t.b_values());
  json a = json::array();
  for (const auto& row : t.a_rows()) a.push_back(strings(row));
  j["a"] = a;
  if (f.lowstorage) {
    j["A"] = strings(f.lowstorage->A_values());
    j["B"] = strings(f.lowstorage->B_values());
  }
}

template <class T>
T parse_value(const std::string& text, const std::string& field);

template <>
Rational parse_value<Rational>(const std::string& text, const std::string& field) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError(field, "not a rational number: '" + text + "'");
  }
}

template <>
ExtFloat parse_value<ExtFloat>(const std::string& text, const std::string& field) {
  try {
    return ExtFloat::parse(text, ExtFloat::kRefineBits);
  } catch (const std::exception& e) {
    throw ValidationError(field, "not a decimal number: '" + text + "'");
  }
}

template <class T>
std::vector<T> parse_array(const json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field, "expected an array of coefficient strings");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = field + "[" + std::to_string(i + 1) + "]";
    if (!j[i].is_string()) throw ValidationError(where, "coefficients must be strings");
    out.push_back(parse_value<T>(j[i].get<std::string>(), where));
  }
  return out;
}

template <class T>
SchemeForms<T> read_forms(const json& j) {
  for (const char* key : {"c", "b", "a"}) {
    if (!j.contains(key)) throw ValidationError(key, "missing required field");
  }
  auto c = parse_array<T>(j["c"], "c");
  auto b = parse_array<T>(j["b"], "b");
  if (!j["a"].is_array()) throw ValidationError("a", "expected an array of rows");
  TriangularRows<T> rows;
  for (std::size_t r = 0; r < j["a"].size(); ++r) {
    rows.push_back(parse_array<T>(j["a"][r], "a[" + std::to_string(r + 2) + "]"));
  }
  SchemeForms<T> forms;
  forms.tableau.emplace(c, std::move(rows), std::move(b));
  if (j.contains("A") != j.contains("B")) throw ValidationError(j.contains("A") ? "B" : "A", "A and B come together");
  if (j.contains("A")) {
    forms.lowstorage.emplace(parse_array<T>(j["A"], "A"), parse_array<T>(j["B"], "B"), c);
  }
  return forms;
}

}  // namespace

std::string scheme_to_json(const Scheme& scheme) {
  json j;
  j["name"] = scheme.name();
  j["order"] = scheme.order();
  j["number_kind"] = to_string(scheme.number_kind());
  std::visit([&](const auto& f) { write_forms(j, f); }, scheme.forms_variant());
  if (!scheme.provenance().empty()) j["provenance"] = scheme.provenance();
  return j.dump(2) + "\n";
}

Scheme scheme_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("", "scheme file must hold a JSON object");
  static const std::set<std::string> known = {"name", "order", "number_kind", "c", "b", "a", "A", "B", "provenance"};
  for (const auto& item : j.items()) {
    if (known.count(item.key()) == 0) throw ValidationError(item.key(), "unknown field");
  }
  if (!j.contains("name") || !j["name"].is_string()) throw ValidationError("name", "expected a string");
  if (!j.contains("order") || !j["order"].is_number_integer()) throw ValidationError("order", "expected an integer");
  std::string kind = "rational";
  if (j.contains("number_kind")) {
    if (!j["number_kind"].is_string()) throw ValidationError("number_kind", "expected a string");
    kind = j["number_kind"].get<std::string>();
  }
  std::string provenance;
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) throw ValidationError("provenance", "expected a string");
    provenance = j["provenance"].get<std::string>();
  }
  const auto name = j["name"].get<std::string>();
  const int order = j["order"].get<int>();
  if (kind == "rational") return Scheme(name, order, read_forms<Rational>(j), provenance);
  if (kind == "decimal") return Scheme(name, order, read_forms<ExtFloat>(j), provenance);
  throw ValidationError("number_kind", "expected \"rational\" or \"decimal\", got \"" + kind + "\"");
}

void save_scheme(const Scheme& scheme, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << scheme_to_json(scheme);
  if (!out) throw Error("failed writing " + path.string());
}

Scheme load_scheme(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return scheme_from_json(text.str());
}

}  // namespace lsrk
