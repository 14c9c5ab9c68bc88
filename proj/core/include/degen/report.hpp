#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "degen/intmath.hpp"

namespace degen {

inline constexpr int kSchemaVersion = 1;

enum class Truth { False, True, Undetermined };
std::string truth_name(Truth t);
Truth truth_from_name(const std::string& name);
inline Truth truth_of(bool b) { return b ? Truth::True : Truth::False; }

struct VerdictEntry {
  Truth value = Truth::Undetermined;
  // Rule that decided the value; for Undetermined, a machine-readable reason code.
  std::string path;
  std::string reason;
  // Independent value from the generic descent engine, when it could run.
  std::optional<Truth> engine;

  bool operator==(const VerdictEntry&) const = default;
};

struct TorusComponentInfo {
  std::string label;
  std::vector<Int> relation;  // monic, low-to-high
  Int order;

  bool operator==(const TorusComponentInfo&) const = default;
};

struct TableRow {
  std::string divisor;
  std::vector<std::uint64_t> values;  // element indices in table_field

  bool operator==(const TableRow&) const = default;
};

struct FamilyReport {
  int schema_version = kSchemaVersion;
  std::string family;
  std::map<std::string, std::string> input;
  bool valid = false;
  std::vector<std::string> violations;  // error code names

  int graph_vertices = 0;
  int graph_edges = 0;
  int galois_order = 1;

  std::vector<Int> phi;
  std::vector<Int> char_poly;
  Int torus_order = 0;
  std::vector<TorusComponentInfo> decomposition;

  std::map<std::string, VerdictEntry> verdicts;

  std::vector<Int> torsion;  // invariant factors of J(K)(p')
  std::string torsion_path;
  std::optional<std::vector<Int>> torsion_engine;

  std::string table_field;
  std::vector<std::string> table_columns;
  std::vector<TableRow> tables;

  std::vector<std::string> warnings;

  bool operator==(const FamilyReport&) const = default;
};

// Integers that fit in int64 are JSON numbers; larger ones are decimal strings.
nlohmann::json int_to_json(const Int& x);
Int int_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const FamilyReport& r);
// Errors: InvalidInput on a missing field or a schema_version mismatch.
FamilyReport report_from_json(const nlohmann::json& j);

// Plain-text rendering for terminals.
std::string report_to_text(const FamilyReport& r);

// True when any verdict or the torsion group is undetermined.
bool report_has_undetermined(const FamilyReport& r);

}  // namespace degen
