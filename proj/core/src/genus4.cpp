#include "degen/genus4.hpp"

#include <algorithm>

#include "degen/parse.hpp"

namespace degen {

namespace {

using LinearForm = std::array<FieldElement, 4>;

struct Alternative {
  LinearForm num;
  LinearForm den;
};

struct LocalFunction {
  int component = 0;
  std::vector<Alternative> alts;  // equal on the component; first usable one wins
};

struct DirectTerm {
  int component = 0;
  std::optional<ProjPoint> point;
  Poly cluster;  // monic, used when point is empty
};

Int class_group_order(const FiniteField& k, const std::vector<FieldElement>& xs, const Int& n) {
  const std::uint64_t qm1 = k.q() - 1;
  Int g = int_gcd(n, Int(qm1));
  if (g == 1) return 1;
  FieldElement w = k.primitive_element();
  Int common = g;
  for (const auto& x : xs) common = int_gcd(common, Int(discrete_log(w, x, qm1)));
  return g / common;
}

FieldElement reduce(const FiniteField& k, const Int& v) {
  Int p = k.p();
  Int r = v % p;
  if (r < 0) r += p;
  return k.from_int(r.convert_to<std::int64_t>());
}

FieldElement apply(const LinearForm& l, const ProjPoint& pt) {
  return l[0] * pt[0] + l[1] * pt[1] + l[2] * pt[2] + l[3] * pt[3];
}

// Coordinates of the component's parameter curve, scaled to polynomials of degree <= 2.
std::array<Poly, 4> parameterization(const FiniteField& w, int component) {
  Poly x = Poly::x(w);
  Poly one = Poly::constant(w.one());
  switch (component) {
    case 0: return {x, x, x * x, one};        // [t : t : t^2 : 1]
    case 1: return {x * x, one, x, x};        // [x : 1/x : 1 : 1]
    default: return {x * x, -one, -x, x};     // [b : -1/b : -1 : 1]
  }
}

Poly restrict_form(const LinearForm& l, const std::array<Poly, 4>& par) {
  Poly acc(l[0].field());
  for (int j = 0; j < 4; ++j) acc = acc + par[j] * l[j];
  return acc;
}

FieldElement eval_function(const LocalFunction& f, const DirectTerm& term) {
  for (const auto& alt : f.alts) {
    if (term.point) {
      FieldElement n = apply(alt.num, *term.point), d = apply(alt.den, *term.point);
      if (!n.is_zero() && !d.is_zero()) return n / d;
    } else {
      auto par = parameterization(term.cluster.field(), term.component);
      // Cancel the common factor: the restricted forms can share a zero off the nodes.
      Poly num = restrict_form(alt.num, par), den = restrict_form(alt.den, par);
      Poly common = gcd(num, den);
      if (common.degree() > 0) {
        num = num / common;
        den = den / common;
      }
      FieldElement n = resultant(term.cluster, num);
      FieldElement d = resultant(term.cluster, den);
      if (!n.is_zero() && !d.is_zero()) return n / d;
    }
  }
  throw Error(ErrorCode::DivisorMeetsNode, "no local function is regular and nonvanishing on the divisor");
}

// Local functions along gamma_1, gamma_2 and gamma_3 with i replaced by j.
std::vector<std::vector<LocalFunction>> local_functions(const FiniteField& w, const FieldElement& j) {
  FieldElement o = w.one(), z = w.zero();
  auto lf = [](FieldElement a, FieldElement b, FieldElement c, FieldElement d) { return LinearForm{a, b, c, d}; };
  LinearForm X = lf(o, z, z, z), Y = lf(z, o, z, z), Z = lf(z, z, o, z), W = lf(z, z, z, o);
  auto add = [](const LinearForm& a, const LinearForm& b, const FieldElement& s) {
    LinearForm out;
    for (int k = 0; k < 4; ++k) out[k] = a[k] + s * b[k];
    return out;
  };
  return {
      {{0, {{add(Z, X, o), add(Z, X, -o)}, {add(X, W, o), add(X, W, -o)}}}, {1, {{add(Z, X, -o), add(Z, X, o)}}}},
      {{1, {{add(Z, Y, -o), add(Z, X, -o)}}}, {2, {{add(Z, X, -o), add(Z, Y, o)}, {add(X, Z, o), add(Y, Z, -o)}}}},
      {{0, {{add(Z, X, -j), add(Z, X, -o)}, {add(X, W, -j), add(X, W, -o)}}},
       {1, {{add(Z, Y, -o), Z}}},
       {2, {{X, add(Z, X, -j)}}}},
  };
}

Poly h_zw(const Genus4Curve& c, bool minus) {
  const auto& mons = cubic_monomials();
  std::vector<FieldElement> coeffs(7, c.working.zero());
  for (std::size_t n = 0; n < mons.size(); ++n) {
    auto [a, b, cc, d] = mons[n];
    (void)d;
    FieldElement v = c.eps_bar[n];
    if (minus && (b + cc) % 2 == 1) v = -v;
    coeffs[3 + a - b] += v;
  }
  return Poly(c.working, coeffs);
}

Poly eps_on_xy(const Genus4Curve& c) {
  const auto& mons = cubic_monomials();
  std::vector<FieldElement> coeffs(7, c.working.zero());
  for (std::size_t n = 0; n < mons.size(); ++n) {
    auto [a, b, cc, d] = mons[n];
    (void)d;
    coeffs[a + b + 2 * cc] += c.eps_bar[n];
  }
  return Poly(c.working, coeffs);
}

std::vector<DirectTerm> direct_divisor(const Genus4Curve& c, int which) {
  const FieldElement o = c.working.one(), z = c.working.zero(), i = c.i;
  switch (which) {
    case 0:
      return {{0, ProjPoint{z, z, o, z}, {}}, {0, ProjPoint{z, z, z, o}, {}},
              {1, ProjPoint{i, -i, o, o}, {}}, {1, ProjPoint{-i, i, o, o}, {}},
              {2, ProjPoint{-o, o, -o, o}, {}}, {2, ProjPoint{o, -o, -o, o}, {}}};
    case 1: return {{1, std::nullopt, h_zw(c, false).monic()}};
    default: return {{2, std::nullopt, h_zw(c, true).monic()}};
  }
}

// gamma value of a divisor: product over the loop's components.
FieldElement loop_value(const std::vector<LocalFunction>& loop, const std::vector<DirectTerm>& div, const FieldElement& one) {
  FieldElement acc = one;
  for (const auto& f : loop) {
    for (const auto& t : div) {
      if (t.component == f.component) acc *= eval_function(f, t);
    }
  }
  return acc;
}

bool is_power_in_k(const Genus4Curve& c, const FieldElement& x, std::uint64_t r) {
  auto y = c.embed.preimage(x);
  if (!y) throw Error(ErrorCode::InvalidInput, "table entry expected in k");
  return power_residue(*y, r);
}

FieldElement norm_to_k(const Genus4Curve& c, const FieldElement& x) {
  if (c.i_rational) return x;
  return c.embed.map(norm_to_subfield(x, c.k.m()));
}

// Generators of the subgroup attached to a row: all four entries when i is in k,
// else the first two and the norm of the third.
std::vector<FieldElement> row_generators(const Genus4Curve& c, const std::array<FieldElement, 4>& row) {
  std::vector<FieldElement> out;
  if (c.i_rational) {
    out.assign(row.begin(), row.end());
  } else {
    out = {row[0], row[1], norm_to_k(c, row[2])};
  }
  std::vector<FieldElement> in_k;
  for (const auto& x : out) in_k.push_back(*c.embed.preimage(x));
  return in_k;
}

bool subgroup_in_powers(const std::vector<FieldElement>& gens, std::uint64_t r) {
  return std::all_of(gens.begin(), gens.end(), [&](const FieldElement& x) { return power_residue(x, r); });
}

}  // namespace

std::vector<HypothesisViolation> check_genus4(const Genus4Input& in) {
  std::vector<HypothesisViolation> out;
  auto pp = prime_power(in.q);
  if (!pp) {
    out.push_back({ErrorCode::InvalidInput, "q = " + std::to_string(in.q) + " is not a prime power"});
    return out;
  }
  if (in.p_adic && pp->second != 1) out.push_back({ErrorCode::NotPrime, "p-adic mode needs a prime p"});
  if (pp->first < 5) {
    out.push_back({ErrorCode::CharTooSmall, "residue characteristic must be at least 5"});
    return out;
  }
  if (in.eps.size() != cubic_monomials().size()) {
    out.push_back({ErrorCode::InvalidInput, "eps needs 20 cubic coefficients"});
    return out;
  }
  if (in.r != 2 && in.r != 3) out.push_back({ErrorCode::InvalidInput, "r must be 2 or 3"});
  Genus4Curve c;
  try {
    c.k = make_field_of_order(in.q, in.field_limit);
    FieldElement m1 = -c.k.one();
    c.i_rational = power_residue(m1, 2);
    c.working = c.i_rational ? c.k : make_field(c.k.p(), 2 * c.k.m(), in.field_limit);
  } catch (const Error& e) {
    out.push_back({e.code(), e.what()});
    return out;
  }
  c.embed = Embedding(c.k, c.working);
  for (const auto& v : in.eps) c.eps_bar.push_back(c.embed.map(reduce(c.k, v)));
  c.i = roots(Poly::from_ints(c.working, {1, 0, 1})).front();
  static const char* names[] = {"[1:1:1:1]", "[-1:-1:1:1]", "[i:i:-1:1]", "[-i:-i:-1:1]", "[1:0:0:0]", "[0:1:0:0]"};
  auto nodes = genus4_nodes(c);
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (eval_eps(c, nodes[n]).is_zero()) {
      out.push_back({ErrorCode::EpsVanishesAtNode, std::string("eps vanishes at ") + names[n]});
    }
  }
  return out;
}

Genus4Curve validate_genus4(const Genus4Input& in) {
  auto v = check_genus4(in);
  if (!v.empty()) throw Error(v.front().code, v.front().message);
  Genus4Curve c;
  c.input = in;
  c.k = make_field_of_order(in.q, in.field_limit);
  c.i_rational = power_residue(-c.k.one(), 2);
  c.working = c.i_rational ? c.k : make_field(c.k.p(), 2 * c.k.m(), in.field_limit);
  c.embed = Embedding(c.k, c.working);
  for (const auto& x : in.eps) c.eps_bar.push_back(c.embed.map(reduce(c.k, x)));
  c.i = roots(Poly::from_ints(c.working, {1, 0, 1})).front();
  return c;
}

FieldElement eval_eps(const Genus4Curve& c, const ProjPoint& pt) {
  const auto& mons = cubic_monomials();
  FieldElement acc = c.working.zero();
  for (std::size_t n = 0; n < mons.size(); ++n) {
    if (c.eps_bar[n].is_zero()) continue;
    FieldElement term = c.eps_bar[n];
    for (int j = 0; j < 4; ++j) term *= pt[j].pow(static_cast<std::int64_t>(mons[n][j]));
    acc += term;
  }
  return acc;
}

std::vector<ProjPoint> genus4_nodes(const Genus4Curve& c) {
  const FieldElement o = c.working.one(), z = c.working.zero(), i = c.i;
  return {{o, o, o, o}, {-o, -o, o, o}, {i, i, -o, o}, {-i, -i, -o, o}, {o, z, z, z}, {z, o, z, z}};
}

const std::vector<std::string>& genus4_table_rows() {
  static const std::vector<std::string> rows = {
      "div X+Y",           "div Z-W",           "div Z+W",
      "div (Z-W)/(Z+W)",   "div (X+Y)/(Z+W)",   "div (Z-W)/(X+Y)",
      "div (Z^2-W^2)/(X+Y)", "div (Z+W)^2/(Z-W)",
  };
  return rows;
}

Genus4Table genus4_table_closed(const Genus4Curve& c, bool literal) {
  const FieldElement o = c.working.one(), z = c.working.zero();
  const FieldElement ex = eval_eps(c, {o, z, z, z}), ey = eval_eps(c, {z, o, z, z});
  const FieldElement e1 = eval_eps(c, {o, o, o, o}), em = eval_eps(c, {-o, -o, o, o});
  const FieldElement s = literal ? o : -o;
  auto ei = [&](const FieldElement& j) { return eval_eps(c, {j, j, -o, o}); };
  auto third = [&](int row, const FieldElement& j) -> FieldElement {
    switch (row) {
      case 0: return -j;
      case 1: return e1 / ey;
      case 2: return j * ey / ei(j);
      case 3: return -j * e1 * ei(j) / (ey * ey);
      case 4: return -ei(j) / ey;
      case 5: return j * e1 / ey;
      case 6: return -e1 / ei(j);
      default: return -(ey * ey * ey) / (ei(j) * ei(j) * e1);
    }
  };
  const std::array<FieldElement, 8> g1 = {-o, s * e1 / em, o, s * e1 / em, -o, -s * e1 / em, -s * e1 / em, s * em / e1};
  const std::array<FieldElement, 8> g2 = {-o, ex / ey, -ey / ex, -(ex * ex) / (ey * ey), ex / ey, -ex / ey, o,
                                          (ey * ey * ey) / (ex * ex * ex)};
  Genus4Table t;
  t.field = c.working;
  for (int row = 0; row < 8; ++row) t.values.push_back({g1[row], g2[row], third(row, c.i), third(row, -c.i)});
  return t;
}

Genus4Table genus4_table_direct(const Genus4Curve& c) {
  const FieldElement o = c.working.one();
  auto plus = local_functions(c.working, c.i);
  auto minus = local_functions(c.working, -c.i);
  std::array<std::vector<LocalFunction>, 4> loops = {plus[0], plus[1], plus[2], minus[2]};
  // Per basic divisor D1 = div(X+Y), D2 = div(Z-W), D3 = div(Z+W).
  std::array<std::array<FieldElement, 4>, 3> base;
  for (int d = 0; d < 3; ++d) {
    auto div = direct_divisor(c, d);
    for (int g = 0; g < 4; ++g) base[d][g] = loop_value(loops[g], div, o);
  }
  // Row r = prod_d base[d]^exponent[r][d].
  static const int exponents[8][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1},  {0, 1, -1},
                                      {1, 0, -1}, {-1, 1, 0}, {-1, 1, 1}, {0, -1, 2}};
  Genus4Table t;
  t.field = c.working;
  for (const auto& ex : exponents) {
    std::array<FieldElement, 4> row;
    for (int g = 0; g < 4; ++g) {
      row[g] = o;
      for (int d = 0; d < 3; ++d) row[g] *= base[d][g].pow(static_cast<std::int64_t>(ex[d]));
    }
    t.values.push_back(row);
  }
  return t;
}

FiberModel genus4_fiber(const Genus4Curve& c) {
  const FieldElement o = c.working.one(), z = c.working.zero(), i = c.i;
  std::vector<Edge> edges = {{0, 1, "[1:1:1:1]"},  {0, 1, "[-1:-1:1:1]"}, {2, 0, "[i:i:-1:1]"},
                             {2, 0, "[-i:-i:-1:1]"}, {1, 2, "[1:0:0:0]"},  {1, 2, "[0:1:0:0]"}};
  std::vector<int> perm = {0, 1, 2, 3, 4, 5};
  if (!c.i_rational) std::swap(perm[2], perm[3]);
  FiberModel f;
  f.graph = make_graph(3, edges, {0, 1, 2}, perm);
  f.base = c.k;
  f.working = c.working;
  auto at = [](const FieldElement& x) { return P1Point::at(x); };
  f.node_coords = {{at(o), at(o)}, {at(-o), at(-o)}, {at(i), at(i)},
                   {at(-i), at(-i)}, {P1Point::infinity(), P1Point::infinity()}, {at(z), at(z)}};
  f.intersection = intersection_matrix(f.graph);
  return f;
}

SpecializedDivisor genus4_divisor(const Genus4Curve& c, Genus4Divisor which) {
  const FieldElement o = c.working.one(), z = c.working.zero(), i = c.i;
  SpecializedDivisor d;
  switch (which) {
    case Genus4Divisor::XPlusY:
      d.points = {{0, P1Point::infinity(), 1}, {0, P1Point::at(z), 1}, {1, P1Point::at(i), 1},
                  {1, P1Point::at(-i), 1},     {2, P1Point::at(-o), 1}, {2, P1Point::at(o), 1}};
      break;
    case Genus4Divisor::ZMinusW: d.clusters = {{1, h_zw(c, false).monic(), 1}}; break;
    case Genus4Divisor::ZPlusW: d.clusters = {{2, h_zw(c, true).monic(), 1}}; break;
    case Genus4Divisor::XMinusY: {
      Poly p = eps_on_xy(c);
      if (p.degree() > 0) d.clusters = {{0, p.monic(), 1}};
      if (p.degree() < 6) d.points = {{0, P1Point::infinity(), 6 - p.degree()}};
      break;
    }
  }
  return d;
}

std::vector<Cycle> genus4_loops() {
  return {{1, -1, 0, 0, 0, 0}, {0, 0, 0, 0, -1, 1}, {1, 0, 1, 0, 0, 1}, {1, 0, 0, 1, 0, 1}};
}

DescentContext genus4_context(const Genus4Curve& c, int base_point_rank) {
  FiberModel fiber = genus4_fiber(c);
  H1Basis h1 = h1_basis(fiber.graph);
  auto loops = genus4_loops();
  if (!c.i_rational) loops.pop_back();
  std::vector<IntVector> chis;
  for (const auto& l : loops) chis.push_back(h1.coordinates(l));
  SpecializedDivisor xy = genus4_divisor(c, Genus4Divisor::XPlusY);
  std::vector<SpecializedDivisor> rows = {xy - genus4_divisor(c, Genus4Divisor::XMinusY),
                                          xy - genus4_divisor(c, Genus4Divisor::ZMinusW),
                                          xy - genus4_divisor(c, Genus4Divisor::ZPlusW)};
  return make_context(std::move(fiber), chis, std::move(rows), base_point_rank);
}

ClosedVerdict genus4_theta(const Genus4Curve& c) {
  Genus4Table t = genus4_table_closed(c);
  for (int row : {0, 1, 2, 6}) {
    if (subgroup_in_powers(row_generators(c, t.values[row]), 2)) {
      return {Truth::True, "subgroup of row '" + genus4_table_rows()[row] + "' lies in the squares"};
    }
  }
  return {Truth::False, "no row subgroup lies in the squares"};
}

ClosedVerdict genus4_cuberoot(const Genus4Curve& c) {
  const std::uint64_t q = c.k.q();
  if (!c.i_rational && (q - 1) % 3 != 0) {
    // Every gamma of div(Z - W) is k-rational, and k^x lies in the cubes of GF(q^2),
    // so div(Z - W) is already divisible without a component-group shift.
    return {Truth::True, "row 'div Z-W' is k-rational and k^x lies in the cubes of GF(q^2)"};
  }
  Genus4Table t = genus4_table_closed(c);
  for (int row : {1, 2, 7}) {
    if (subgroup_in_powers(row_generators(c, t.values[row]), 3)) {
      return {Truth::True, "subgroup of row '" + genus4_table_rows()[row] + "' lies in the cubes"};
    }
  }
  return {Truth::False, "no row subgroup lies in the cubes"};
}

ClosedVerdict genus4_root_engine(const Genus4Curve& c, const Int& r) {
  DescentContext ctx = genus4_context(c);
  Genus4Divisor which = r == 3 ? Genus4Divisor::ZMinusW : Genus4Divisor::XPlusY;
  DescentVerdict v = divisibility_verdict(ctx, genus4_divisor(c, which), r);
  switch (v.outcome) {
    case Outcome::Divisible: return {Truth::True, "descent engine"};
    case Outcome::NotDivisible: return {Truth::False, "descent engine"};
    case Outcome::NotInPicBracketR: return {Truth::False, "GeometricObstruction"};
    case Outcome::Undetermined: break;
  }
  return {Truth::Undetermined, v.reason};
}

TorsionResult genus4_torsion(const Genus4Curve& c) {
  const Int q = c.k.q();
  Genus4Table t = genus4_table_closed(c);
  if (c.i_rational) {
    auto h1 = row_generators(c, t.values[3]);
    auto h2 = row_generators(c, t.values[4]);
    auto h3 = row_generators(c, t.values[5]);
    Int a1 = class_group_order(c.k, h1, 6), a0 = 6 / a1;
    Int b1 = 1, b0 = 2;
    if (!subgroup_in_powers(h3, 2)) {
      b1 = class_group_order(c.k, h2, 2);
      b0 = 2 / b1;
    }
    IntVector cyc = {a0, b0, a1 * (q - 1), b1 * (q - 1), q - 1, q - 1};
    return {abelian_invariants(cyc), "closed form, i in k"};
  }
  const FieldElement o = c.working.one();
  FieldElement ei = eval_eps(c, {c.i, c.i, -o, o});
  auto h1 = row_generators(c, t.values[3]);
  auto h3 = row_generators(c, t.values[5]);
  bool c_trivial = (q - 1) % 3 == 0 ? subgroup_in_powers(h1, 3) : ei.pow((q * q - 1) / 3).is_one();
  Int c0 = c_trivial ? 3 : 1, c3 = 3 / c0;
  Int b1 = is_power_in_k(c, norm_to_k(c, ei), 2) ? 2 : 1, b3 = 2 / b1;
  Int a0 = subgroup_in_powers(h3, 2) ? 2 : 1, a1 = 2 / a0;
  IntVector cyc = {a0, c0, a1 * (q - 1), b1 * (q - 1), b3 * c3 * (q * q - 1)};
  return {abelian_invariants(cyc), "closed form, i not in k"};
}

TorsionResult genus4_torsion_engine(const Genus4Curve& c) {
  return {torsion_structure(genus4_context(c)), "descent engine"};
}

FamilyReport genus4_report(const Genus4Input& in) {
  FamilyReport rep;
  rep.family = "genus4";
  rep.input["q"] = std::to_string(in.q);
  rep.input["mode"] = in.p_adic ? "p-adic" : "residue-field";
  rep.input["eps"] = in.eps.size() == cubic_monomials().size() ? format_cubic_form(in.eps) : "";
  rep.input["r"] = in.r.str();
  for (const auto& v : check_genus4(in)) rep.violations.push_back(std::string(error_code_name(v.code)));
  if (!rep.violations.empty()) return rep;
  Genus4Curve c = validate_genus4(in);
  rep.valid = true;

  DescentContext ctx = genus4_context(c);
  rep.graph_vertices = ctx.fiber.graph.num_vertices;
  rep.graph_edges = static_cast<int>(ctx.fiber.graph.edges.size());
  rep.galois_order = ctx.fiber.graph.galois_order;
  rep.phi = ctx.phi.invariants;
  rep.char_poly = frobenius_char_poly(ctx.h1.lattice);
  rep.torus_order = torus_order(ctx.h1.lattice, c.k.q());
  for (std::size_t j = 0; j < ctx.decomposition.components.size(); ++j) {
    const auto& comp = ctx.decomposition.components[j];
    rep.decomposition.push_back({"gamma_" + std::to_string(j + 1), comp.relation, ctx.mu[j].order});
  }

  ClosedVerdict closed = in.r == 2 ? genus4_theta(c) : genus4_cuberoot(c);
  ClosedVerdict engine = genus4_root_engine(c, in.r);
  VerdictEntry v{closed.value, closed.path, "", std::nullopt};
  if (engine.value != Truth::Undetermined) v.engine = engine.value;
  rep.verdicts[in.r == 2 ? "theta" : "cube_root"] = v;

  TorsionResult tor = genus4_torsion(c);
  rep.torsion = *tor.invariants;
  rep.torsion_path = tor.path;
  rep.torsion_engine = torsion_structure(ctx);

  Genus4Table t = genus4_table_closed(c);
  rep.table_field = c.working.describe();
  rep.table_columns = {"gamma_1", "gamma_2", "gamma_3", "gamma_4"};
  for (std::size_t row = 0; row < t.values.size(); ++row) {
    TableRow tr{genus4_table_rows()[row], {}};
    for (const auto& x : t.values[row]) tr.values.push_back(x.index());
    rep.tables.push_back(tr);
  }
  if (genus4_table_direct(c).values != t.values) {
    rep.warnings.push_back("closed-form table disagrees with direct evaluation");
  }
  if (in.p_adic) {
    rep.warnings.push_back(
        "K = Q_p: the kernel of reduction is torsion-free for p != 2 and p does not divide |Phi| = 12, so "
        "J(K)(p') is the full prime-to-p rational torsion");
  } else {
    rep.warnings.push_back("torsion is J(K)(p') for any K with residue field GF(q); p-primary torsion is not computed");
  }
  return rep;
}

}  // namespace degen
