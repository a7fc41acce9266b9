#ifndef TCAT_CATEGORY_IO_HPP
#define TCAT_CATEGORY_IO_HPP

// JSON category documents.
//
//   { "name": "...", "labels": ["1", ...], "dual": [0, ...],
//     "fusion": [[i, j, k], ...],
//     "F": [{"a":..,"b":..,"c":..,"d":..,"e":..,"f":..,"re":..,"im":..}, ...],
//     "R": [{"a":..,"b":..,"c":..,"re":..,"im":..}, ...],
//     "pivotal": [{"i":..,"re":..,"im":..}, ...],
//     "tolerances": {"structural": 1e-10, "identity": 1e-9} }   (optional)

#include "tcat/skeletal_category.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace tcat {

namespace detail {

using json = nlohmann::json;

inline const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  return doc.at(key);
}

inline Label read_label(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer label id");
  return v.get<Label>();
}

inline double read_double(const json& rec, const char* key, const std::string& where) {
  if (!rec.contains(key) || !rec.at(key).is_number())
    throw ParseError(where + ": missing numeric field '" + key + "'");
  return rec.at(key).get<double>();
}

}  // namespace detail

inline CategoryData load_category(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("not a JSON document: ") + e.what());
  }
  CategoryTables t;
  const json& name = detail::require(doc, "name");
  if (!name.is_string()) throw ParseError("name: expected a string");
  t.name = name.get<std::string>();

  const json& labels = detail::require(doc, "labels");
  if (!labels.is_array() || labels.empty()) throw ParseError("labels: missing unit (need a non-empty list)");
  for (const auto& l : labels) {
    if (!l.is_string()) throw ParseError("labels: expected strings");
    t.labels.push_back(l.get<std::string>());
  }

  const json& dual = detail::require(doc, "dual");
  if (!dual.is_array()) throw ParseError("dual: expected a list of label ids");
  for (const auto& d : dual) t.dual.push_back(detail::read_label(d, "dual"));
  if (t.dual.size() != t.labels.size())
    throw ParseError("dual: length " + std::to_string(t.dual.size()) + " does not match labels length " +
                     std::to_string(t.labels.size()));

  const json& fusion = detail::require(doc, "fusion");
  if (!fusion.is_array()) throw ParseError("fusion: expected a list of [i,j,k] triples");
  for (const auto& tr : fusion) {
    if (!tr.is_array() || tr.size() != 3) throw ParseError("fusion: ragged entry, expected [i,j,k]");
    t.fusion.push_back({detail::read_label(tr[0], "fusion"), detail::read_label(tr[1], "fusion"),
                        detail::read_label(tr[2], "fusion")});
  }

  const json& fs = detail::require(doc, "F");
  if (!fs.is_array()) throw ParseError("F: expected a list of records");
  for (const auto& rec : fs) {
    if (!rec.is_object()) throw ParseError("F: expected record objects");
    FKey k{};
    const char* names[6] = {"a", "b", "c", "d", "e", "f"};
    for (int q = 0; q < 6; ++q) {
      if (!rec.contains(names[q])) throw ParseError(std::string("F: record missing field '") + names[q] + "'");
      k[static_cast<std::size_t>(q)] = detail::read_label(rec.at(names[q]), "F");
    }
    t.f[k] = {detail::read_double(rec, "re", "F"), detail::read_double(rec, "im", "F")};
  }

  const json& rs = detail::require(doc, "R");
  if (!rs.is_array()) throw ParseError("R: expected a list of records");
  for (const auto& rec : rs) {
    if (!rec.is_object()) throw ParseError("R: expected record objects");
    RKey k{};
    const char* names[3] = {"a", "b", "c"};
    for (int q = 0; q < 3; ++q) {
      if (!rec.contains(names[q])) throw ParseError(std::string("R: record missing field '") + names[q] + "'");
      k[static_cast<std::size_t>(q)] = detail::read_label(rec.at(names[q]), "R");
    }
    t.r[k] = {detail::read_double(rec, "re", "R"), detail::read_double(rec, "im", "R")};
  }

  const json& piv = detail::require(doc, "pivotal");
  if (!piv.is_array()) throw ParseError("pivotal: expected a list of records");
  for (const auto& rec : piv) {
    if (!rec.is_object() || !rec.contains("i")) throw ParseError("pivotal: record missing field 'i'");
    t.pivotal[detail::read_label(rec.at("i"), "pivotal")] = {detail::read_double(rec, "re", "pivotal"),
                                                            detail::read_double(rec, "im", "pivotal")};
  }

  if (doc.contains("tolerances")) {
    const json& tol = doc.at("tolerances");
    if (!tol.is_object()) throw ParseError("tolerances: expected an object");
    if (tol.contains("structural")) t.tol.eps_structural = detail::read_double(tol, "structural", "tolerances");
    if (tol.contains("identity")) t.tol.eps_identity = detail::read_double(tol, "identity", "tolerances");
  }
  return CategoryData(std::move(t));
}

inline CategoryData load_category_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open category file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_category(ss.str());
}

inline std::string serialize(const CategoryData& cat) {
  using detail::json;
  const CategoryTables& t = cat.tables();
  json doc;
  doc["name"] = t.name;
  doc["labels"] = t.labels;
  doc["dual"] = t.dual;
  json fusion = json::array();
  for (const auto& tr : t.fusion) fusion.push_back({tr[0], tr[1], tr[2]});
  doc["fusion"] = fusion;
  json fs = json::array();
  for (const auto& [k, v] : t.f)
    fs.push_back({{"a", k[0]}, {"b", k[1]}, {"c", k[2]}, {"d", k[3]}, {"e", k[4]}, {"f", k[5]},
                  {"re", v.real()}, {"im", v.imag()}});
  doc["F"] = fs;
  json rs = json::array();
  for (const auto& [k, v] : t.r)
    rs.push_back({{"a", k[0]}, {"b", k[1]}, {"c", k[2]}, {"re", v.real()}, {"im", v.imag()}});
  doc["R"] = rs;
  json piv = json::array();
  for (const auto& [i, v] : t.pivotal) piv.push_back({{"i", i}, {"re", v.real()}, {"im", v.imag()}});
  doc["pivotal"] = piv;
  doc["tolerances"] = {{"structural", t.tol.eps_structural}, {"identity", t.tol.eps_identity}};
  return doc.dump(1);
}

}  // namespace tcat

#endif  // TCAT_CATEGORY_IO_HPP
