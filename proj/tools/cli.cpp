#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "degen/genus4.hpp"
#include "degen/hyperelliptic.hpp"
#include "degen/oracle.hpp"
#include "degen/parse.hpp"
#include "degen/report.hpp"

namespace degen::cli {

namespace {

using nlohmann::json;

struct Field {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
};

// Exactly one of --p (K = Q_p) and --q (residue field only).
struct FieldChoice {
  std::uint64_t q = 0;
  bool p_adic = false;
};

FieldChoice field_choice(const Field& f) {
  if ((f.p == 0) == (f.q == 0)) throw Error(ErrorCode::InvalidInput, "give exactly one of --p and --q");
  if (f.p != 0) {
    if (!is_prime(f.p)) throw Error(ErrorCode::NotPrime, "--p " + std::to_string(f.p) + " is not prime");
    return {f.p, true};
  }
  return {f.q, false};
}

IntMatrix parse_matrix(const std::string& text, const char* flag) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SyntaxError(e.byte == 0 ? 0 : e.byte - 1, std::string(flag) + ": " + e.what());
  }
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, std::string(flag) + " must be a JSON array of arrays");
  IntMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorCode::InvalidInput, std::string(flag) + " must be a JSON array of arrays");
    IntVector r;
    for (const auto& x : row) r.push_back(int_from_json(x));
    m.push_back(r);
  }
  return m;
}

Int parse_int(const std::string& text, const char* flag) {
  std::size_t start = !text.empty() && text[0] == '-' ? 1 : 0;
  if (text.size() == start || !std::all_of(text.begin() + start, text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw Error(ErrorCode::InvalidInput, std::string(flag) + " expects an integer, got '" + text + "'");
  }
  return Int(text);
}

json ints(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

std::string group_text(const IntVector& inv) {
  if (inv.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < inv.size(); ++i) s += (i ? " + Z/" : "Z/") + inv[i].str();
  return s;
}

bool is_input_code(const std::string& name) {
  return name == error_code_name(ErrorCode::InvalidInput) || name == error_code_name(ErrorCode::NotPrime) ||
         name == error_code_name(ErrorCode::SizeLimitExceeded);
}

int report_code(const FamilyReport& r) {
  if (!r.valid) {
    bool input = std::any_of(r.violations.begin(), r.violations.end(), is_input_code);
    return input ? kInvalidInput : kHypothesisViolated;
  }
  return report_has_undetermined(r) ? kUndetermined : kOk;
}

Result emit_report(const FamilyReport& r, bool as_json) {
  Result res;
  res.code = report_code(r);
  res.out = as_json ? report_to_json(r).dump(2) + "\n" : report_to_text(r);
  return res;
}

Result emit_json(const json& j, bool as_json, const std::string& text, int code = kOk) {
  Result res;
  res.code = code;
  res.out = as_json ? j.dump(2) + "\n" : text;
  return res;
}

struct Options {
  bool json = false;
  std::string batch;
  Field field;
  std::string g, h, eps, matrix, frobenius, components;
  std::string r = "2";
  int alpha0_rank = 0;
  bool enumerate = false;
};

Result cmd_component_group(const Options& o) {
  IntMatrix m = parse_matrix(o.matrix, "--matrix");
  validate_intersection_matrix(m);
  ComponentGroup phi = component_group(m);
  json j = {{"schema_version", kSchemaVersion},
            {"command", "component-group"},
            {"input", {{"matrix", o.matrix}}},
            {"phi", ints(phi.invariants)},
            {"order", int_to_json(phi.order)}};
  std::ostringstream os;
  os << "component group: " << group_text(phi.invariants) << " (order " << phi.order << ")\n";
  return emit_json(j, o.json, os.str());
}

Result cmd_torus(const Options& o, std::uint64_t limit) {
  if (o.field.q == 0) throw Error(ErrorCode::InvalidInput, "--q is required");
  if (!prime_power(o.field.q)) throw Error(ErrorCode::InvalidInput, "--q must be a prime power");
  CharacterLattice lattice = make_lattice(parse_matrix(o.frobenius, "--frobenius"));
  const std::uint64_t q = o.field.q;
  json j = {{"schema_version", kSchemaVersion}, {"command", "torus"}};
  j["input"] = {{"q", q}, {"frobenius", o.frobenius}, {"components", o.components}};
  j["rank"] = lattice.rank;
  j["frobenius_order"] = frobenius_order(lattice);
  auto cp = frobenius_char_poly(lattice);
  Int order = torus_order(lattice, q);
  j["char_poly"] = ints(cp);
  j["order"] = int_to_json(order);
  std::ostringstream os;
  os << "rank " << lattice.rank << ", Frobenius order " << frobenius_order(lattice) << "\n";
  os << "f(x) = " << int_poly_to_string(cp) << ", #T(GF(" << q << ")) = " << order << "\n";
  if (!o.components.empty()) {
    IntMatrix chis = parse_matrix(o.components, "--components");
    PrincipalDecomposition dec = make_decomposition(lattice, chis);
    auto check = verify_principal_decomposition(lattice, dec);
    json comps = json::array();
    for (const auto& c : dec.components) {
      Int mu = eval_int_poly(c.relation, Int(q));
      comps.push_back({{"chi", ints(c.chi)}, {"rank", c.rank}, {"relation", ints(c.relation)}, {"mu_order", int_to_json(mu)}});
      os << "  chi = (";
      for (std::size_t i = 0; i < c.chi.size(); ++i) os << (i ? "," : "") << c.chi[i];
      os << "): relation " << int_poly_to_string(c.relation) << ", mu of order " << mu << "\n";
    }
    j["decomposition"] = {{"components", comps}, {"principal", check.ok}, {"reason", check.reason}};
    os << "principal decomposition: " << (check.ok ? "yes" : "no (" + check.reason + ")") << "\n";
  }
  if (o.enumerate) {
    EnumeratedTorus t = enumerate_torus(lattice, q, std::nullopt, std::min<std::uint64_t>(limit, kOracleLimit));
    j["enumerated"] = {{"size", t.size()}, {"invariants", ints(t.invariants)}};
    os << "enumerated: " << t.size() << " points, " << group_text(t.invariants) << "\n";
  }
  return emit_json(j, o.json, os.str());
}

Result cmd_hyperelliptic(const Options& o, std::uint64_t limit) {
  FieldChoice f = field_choice(o.field);
  HyperellipticInput in;
  in.q = f.q;
  in.p_adic = f.p_adic;
  in.g = parse_univariate(o.g);
  in.h = parse_univariate(o.h);
  in.r = parse_int(o.r, "--r");
  in.alpha0_rank = o.alpha0_rank;
  in.field_limit = limit;
  return emit_report(hyperelliptic_report(in), o.json);
}

Result cmd_genus4(const Options& o, std::uint64_t limit) {
  FieldChoice f = field_choice(o.field);
  Genus4Input in;
  in.q = f.q;
  in.p_adic = f.p_adic;
  in.eps = parse_cubic_form(o.eps);
  in.r = parse_int(o.r, "--r");
  in.field_limit = limit;
  return emit_report(genus4_report(in), o.json);
}

Result cmd_oracle(const Options& o, std::uint64_t limit) {
  FieldChoice f = field_choice(o.field);
  const Int r = parse_int(o.r, "--r");
  json j = {{"schema_version", kSchemaVersion}, {"command", "oracle"}};
  DescentContext ctx;
  SpecializedDivisor d;
  std::string divisor;
  if (!o.eps.empty()) {
    Genus4Input in;
    in.q = f.q;
    in.eps = parse_cubic_form(o.eps);
    in.r = r;
    in.field_limit = limit;
    Genus4Curve c = validate_genus4(in);
    ctx = genus4_context(c);
    bool cube = r == 3;
    d = genus4_divisor(c, cube ? Genus4Divisor::ZMinusW : Genus4Divisor::XPlusY);
    divisor = cube ? "div(Z-W)" : "div(X+Y)";
    j["family"] = "genus4";
    j["input"] = {{"q", f.q}, {"eps", format_cubic_form(in.eps)}, {"r", o.r}};
  } else {
    HyperellipticInput in;
    in.q = f.q;
    in.g = parse_univariate(o.g);
    in.h = parse_univariate(o.h);
    in.r = r;
    in.field_limit = limit;
    HyperellipticCurve c = validate_hyperelliptic(in);
    try {
      ctx = bd_context(c);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotSupported) throw;
      j["family"] = "hyperelliptic";
      j["undetermined"] = std::string(error_code_name(e.code()));
      return emit_json(j, o.json, std::string("undetermined: ") + e.what() + "\n", kUndetermined);
    }
    d = bd_canonical_divisor(c, ctx.fiber.working);
    divisor = "canonical";
    j["family"] = "hyperelliptic";
    j["input"] = {{"q", f.q}, {"g", format_univariate(in.g)}, {"h", format_univariate(in.h)}, {"r", o.r}};
  }
  OracleVerdict ov = oracle_divisibility(ctx, d, r, std::min<std::uint64_t>(limit, kOracleLimit));
  DescentVerdict ev = divisibility_verdict(ctx, d, r);
  bool engine_divisible = ev.outcome == Outcome::Divisible;
  bool agree = engine_divisible == ov.divisible;
  Int order = torus_order(ctx.h1.lattice, f.q);
  j["divisor"] = divisor;
  j["torus"] = {{"enumerated", ov.torus_size}, {"order", int_to_json(order)}};
  j["oracle"] = {{"geometric_ok", ov.geometric_ok}, {"divisible", ov.divisible}, {"nu_images", ov.nu.size()}};
  j["engine"] = {{"outcome", outcome_name(ev.outcome)}, {"reason", ev.reason}};
  j["agree"] = agree;
  j["note"] = "nu images use the principal divisors supplied to the engine";
  std::ostringstream os;
  os << "family: " << j["family"].get<std::string>() << ", divisor " << divisor << ", r = " << o.r << "\n";
  os << "torus: " << ov.torus_size << " points enumerated, f(q) = " << order << "\n";
  os << "oracle: " << (ov.geometric_ok ? (ov.divisible ? "divisible" : "not divisible") : "geometric obstruction")
     << " (" << ov.nu.size() << " nu images)\n";
  os << "engine: " << outcome_name(ev.outcome) << "\n";
  os << "agreement: " << (agree ? "yes" : "NO") << "\n";
  return emit_json(j, o.json, os.str(), agree ? kOk : kInternal);
}

Result run_batch(const std::string& path, bool as_json) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open batch file '" + path + "'");
  Result total;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<std::string> args = split_line(line);
    if (as_json && std::find(args.begin(), args.end(), "--json") == args.end()) args.push_back("--json");
    if (std::find(args.begin(), args.end(), "--batch") != args.end()) {
      throw Error(ErrorCode::InvalidInput, "nested --batch is not allowed");
    }
    Result r = run(args);
    if (as_json) {
      json j = r.out.empty() ? json(nullptr) : json::parse(r.out);
      total.out += json({{"line", line}, {"exit_code", r.code}, {"report", j}, {"error", r.err}}).dump() + "\n";
    } else {
      total.out += "> " + line + "\n" + r.out;
      if (!r.err.empty()) total.out += r.err;
    }
    total.code = std::max(total.code, r.code);
  }
  return total;
}

int error_exit(ErrorCode code) {
  switch (code) {
    case ErrorCode::CharDividesTwoD:
    case ErrorCode::NotSeparableReduction:
    case ErrorCode::CommonFactorGH:
    case ErrorCode::DegreeTooLarge:
    case ErrorCode::EpsVanishesAtNode:
    case ErrorCode::CharTooSmall:
      return kHypothesisViolated;
    case ErrorCode::NotSupported:
    case ErrorCode::UnsupportedTorus:
      return kUndetermined;
    default:
      return kInvalidInput;
  }
}

}  // namespace

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_word = false;
  char quote = 0;
  std::size_t quote_pos = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else {
        cur += c;
      }
    } else if (c == '"' || c == '\'') {
      quote = c;
      quote_pos = i;
      in_word = true;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      if (in_word) out.push_back(cur);
      cur.clear();
      in_word = false;
    } else {
      cur += c;
      in_word = true;
    }
  }
  if (quote) throw SyntaxError(quote_pos, "unterminated quote");
  if (in_word) out.push_back(cur);
  return out;
}

std::uint64_t field_limit_from_env() {
  const char* v = std::getenv("DEGEN_FIELD_LIMIT");
  if (v == nullptr || *v == '\0') return kDefaultFieldLimit;
  std::string s(v);
  if (!std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) || s.size() > 19) {
    throw Error(ErrorCode::InvalidInput, "DEGEN_FIELD_LIMIT must be a positive integer");
  }
  std::uint64_t n = std::stoull(s);
  if (n == 0) throw Error(ErrorCode::InvalidInput, "DEGEN_FIELD_LIMIT must be a positive integer");
  return n;
}

Result run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Divisibility and torsion on Jacobians with totally degenerate reduction", "degen"};
  // -h would collide with the --h polynomial flag.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(0, 1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Emit a JSON report");
  app.add_option("--batch", o.batch, "Run one request per line of a file");

  auto add_field = [&](CLI::App* sub) {
    auto* p = sub->add_option("--p", o.field.p, "K = Q_p with residue field GF(p)");
    auto* q = sub->add_option("--q", o.field.q, "Residue field GF(q) only");
    p->excludes(q);
  };
  auto* cg = app.add_subcommand("component-group", "Component group of an intersection matrix");
  cg->add_option("--matrix", o.matrix, "Intersection matrix as JSON")->required();
  auto* torus = app.add_subcommand("torus", "Order, mu groups and points of a torus given by its character lattice");
  torus->add_option("--q", o.field.q, "Field size")->required();
  torus->add_option("--frobenius", o.frobenius, "Frobenius matrix as JSON, columns are images of basis vectors")->required();
  torus->add_option("--components", o.components, "Principal generators as JSON list of vectors");
  torus->add_flag("--enumerate", o.enumerate, "Enumerate rational points by brute force");
  auto* hyp = app.add_subcommand("hyperelliptic", "y^2 = g(x)^2 + pi h(x)");
  add_field(hyp);
  hyp->add_option("--g", o.g, "Monic g in x")->required();
  hyp->add_option("--h", o.h, "h in x")->required();
  hyp->add_option("--r", o.r, "Root order of the canonical class");
  hyp->add_option("--alpha0-rank", o.alpha0_rank, "Which rational root of g plays alpha_0");
  auto* g4 = app.add_subcommand("genus4", "XY = ZW, (X - Y)(Z - W)(Z + W) = pi eps");
  add_field(g4);
  g4->add_option("--eps", o.eps, "Cubic form in X, Y, Z, W")->required();
  g4->add_option("--r", o.r, "2 (theta characteristic) or 3 (cube root)");
  auto* orc = app.add_subcommand("oracle", "Brute-force check of the descent engine on one instance");
  add_field(orc);
  orc->add_option("--g", o.g, "Monic g in x (hyperelliptic)");
  orc->add_option("--h", o.h, "h in x (hyperelliptic)");
  orc->add_option("--eps", o.eps, "Cubic form (genus 4)");
  orc->add_option("--r", o.r, "Divisibility order");

  Result res;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    res.out = app.help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.code = kInvalidInput;
    res.err = std::string(e.what()) + "\n";
    return res;
  }

  try {
    const std::uint64_t limit = field_limit_from_env();
    if (!o.batch.empty()) {
      if (!app.get_subcommands().empty()) throw Error(ErrorCode::InvalidInput, "--batch takes no subcommand");
      return run_batch(o.batch, o.json);
    }
    if (*cg) return cmd_component_group(o);
    if (*torus) return cmd_torus(o, limit);
    if (*hyp) return cmd_hyperelliptic(o, limit);
    if (*g4) return cmd_genus4(o, limit);
    if (*orc) {
      if (o.eps.empty() && (o.g.empty() || o.h.empty())) {
        throw Error(ErrorCode::InvalidInput, "oracle needs --eps, or --g and --h");
      }
      return cmd_oracle(o, limit);
    }
    res.code = kInvalidInput;
    res.err = "a subcommand is required\n" + app.help();
  } catch (const SyntaxError& e) {
    res.code = kInvalidInput;
    res.err = std::string(e.what()) + "\n";
  } catch (const Error& e) {
    res.code = error_exit(e.code());
    res.err = std::string(e.what()) + "\n";
  } catch (const std::exception& e) {
    res.code = kInternal;
    res.err = std::string("internal error: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace degen::cli
