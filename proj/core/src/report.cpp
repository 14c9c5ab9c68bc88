#include "degen/report.hpp"

#include <sstream>

#include "degen/error.hpp"
#include "degen/torus.hpp"

namespace degen {

using nlohmann::json;

std::string truth_name(Truth t) {
  switch (t) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    case Truth::Undetermined: return "undetermined";
  }
  return "undetermined";
}

Truth truth_from_name(const std::string& name) {
  if (name == "true") return Truth::True;
  if (name == "false") return Truth::False;
  if (name == "undetermined") return Truth::Undetermined;
  throw Error(ErrorCode::InvalidInput, "unknown truth value '" + name + "'");
}

json int_to_json(const Int& x) {
  if (fits_int64(x)) return to_int64(x);
  return x.str();
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw Error(ErrorCode::InvalidInput, "expected an integer");
}

namespace {

json ints_to_json(const std::vector<Int>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

std::vector<Int> ints_from_json(const json& j) {
  std::vector<Int> out;
  for (const auto& x : j) out.push_back(int_from_json(x));
  return out;
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::InvalidInput, std::string("report is missing '") + key + "'");
  return *it;
}

std::string group_string(const std::vector<Int>& inv) {
  if (inv.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (i) s += " + ";
    s += "Z/" + inv[i].str();
  }
  return s;
}

}  // namespace

json report_to_json(const FamilyReport& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["family"] = r.family;
  j["input"] = r.input;
  j["valid"] = r.valid;
  j["violations"] = r.violations;
  j["graph"] = {{"vertices", r.graph_vertices}, {"edges", r.graph_edges}, {"galois_order", r.galois_order}};
  j["phi"] = ints_to_json(r.phi);
  json dec = json::array();
  for (const auto& c : r.decomposition) {
    dec.push_back({{"label", c.label}, {"relation", ints_to_json(c.relation)}, {"order", int_to_json(c.order)}});
  }
  j["torus"] = {{"char_poly", ints_to_json(r.char_poly)}, {"order", int_to_json(r.torus_order)}, {"decomposition", dec}};
  json verdicts = json::object();
  for (const auto& [name, v] : r.verdicts) {
    json e = {{"value", truth_name(v.value)}, {"path", v.path}, {"reason", v.reason}};
    e["engine"] = v.engine ? json(truth_name(*v.engine)) : json(nullptr);
    verdicts[name] = e;
  }
  j["verdicts"] = verdicts;
  j["torsion"] = {{"invariants", ints_to_json(r.torsion)},
                  {"path", r.torsion_path},
                  {"engine", r.torsion_engine ? ints_to_json(*r.torsion_engine) : json(nullptr)}};
  json rows = json::array();
  for (const auto& row : r.tables) rows.push_back({{"divisor", row.divisor}, {"values", row.values}});
  j["tables"] = {{"field", r.table_field}, {"columns", r.table_columns}, {"rows", rows}};
  j["warnings"] = r.warnings;
  return j;
}

FamilyReport report_from_json(const json& j) {
  FamilyReport r;
  r.schema_version = field(j, "schema_version").get<int>();
  if (r.schema_version != kSchemaVersion) throw Error(ErrorCode::InvalidInput, "unsupported schema_version");
  r.family = field(j, "family").get<std::string>();
  r.input = field(j, "input").get<std::map<std::string, std::string>>();
  r.valid = field(j, "valid").get<bool>();
  r.violations = field(j, "violations").get<std::vector<std::string>>();
  const json& g = field(j, "graph");
  r.graph_vertices = field(g, "vertices").get<int>();
  r.graph_edges = field(g, "edges").get<int>();
  r.galois_order = field(g, "galois_order").get<int>();
  r.phi = ints_from_json(field(j, "phi"));
  const json& t = field(j, "torus");
  r.char_poly = ints_from_json(field(t, "char_poly"));
  r.torus_order = int_from_json(field(t, "order"));
  for (const auto& c : field(t, "decomposition")) {
    r.decomposition.push_back({field(c, "label").get<std::string>(), ints_from_json(field(c, "relation")),
                               int_from_json(field(c, "order"))});
  }
  for (const auto& [name, e] : field(j, "verdicts").items()) {
    VerdictEntry v;
    v.value = truth_from_name(field(e, "value").get<std::string>());
    v.path = field(e, "path").get<std::string>();
    v.reason = field(e, "reason").get<std::string>();
    const json& eng = field(e, "engine");
    if (!eng.is_null()) v.engine = truth_from_name(eng.get<std::string>());
    r.verdicts[name] = v;
  }
  const json& tor = field(j, "torsion");
  r.torsion = ints_from_json(field(tor, "invariants"));
  r.torsion_path = field(tor, "path").get<std::string>();
  if (!field(tor, "engine").is_null()) r.torsion_engine = ints_from_json(field(tor, "engine"));
  const json& tab = field(j, "tables");
  r.table_field = field(tab, "field").get<std::string>();
  r.table_columns = field(tab, "columns").get<std::vector<std::string>>();
  for (const auto& row : field(tab, "rows")) {
    r.tables.push_back({field(row, "divisor").get<std::string>(), field(row, "values").get<std::vector<std::uint64_t>>()});
  }
  r.warnings = field(j, "warnings").get<std::vector<std::string>>();
  return r;
}

std::string report_to_text(const FamilyReport& r) {
  std::ostringstream os;
  os << "family: " << r.family << "\n";
  for (const auto& [k, v] : r.input) os << "  " << k << " = " << v << "\n";
  os << "valid: " << (r.valid ? "yes" : "no") << "\n";
  for (const auto& v : r.violations) os << "  violation: " << v << "\n";
  if (!r.valid) return os.str();
  os << "dual graph: " << r.graph_vertices << " components, " << r.graph_edges << " nodes, Galois order "
     << r.galois_order << "\n";
  os << "component group: " << group_string(r.phi) << "\n";
  os << "torus: f(x) = " << int_poly_to_string(r.char_poly) << ", #T(k) = " << r.torus_order << "\n";
  for (const auto& c : r.decomposition) os << "  " << c.label << ": mu of order " << c.order << "\n";
  for (const auto& [name, v] : r.verdicts) {
    os << name << ": " << truth_name(v.value);
    if (!v.path.empty()) os << " [" << v.path << "]";
    if (!v.reason.empty()) os << " (" << v.reason << ")";
    if (v.engine) os << " engine=" << truth_name(*v.engine);
    os << "\n";
  }
  if (!r.torsion_path.empty()) {
    os << "torsion J(K)(p'): " << group_string(r.torsion) << " [" << r.torsion_path << "]";
    if (r.torsion_engine) os << " engine=" << group_string(*r.torsion_engine);
    os << "\n";
  }
  if (!r.tables.empty()) {
    os << "table over " << r.table_field << " (element indices):\n";
    for (const auto& row : r.tables) {
      os << "  " << row.divisor << ":";
      for (auto v : row.values) os << " " << v;
      os << "\n";
    }
  }
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

bool report_has_undetermined(const FamilyReport& r) {
  for (const auto& [name, v] : r.verdicts) {
    if (v.value == Truth::Undetermined) return true;
  }
  return r.valid && r.torsion_path == "undetermined";
}

}  // namespace degen
