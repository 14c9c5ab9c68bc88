#include "degen/hyperelliptic.hpp"

#include <algorithm>
#include <numeric>

#include "degen/parse.hpp"

namespace degen {

namespace {

FieldElement reduce(const FiniteField& k, const Int& c) {
  Int p = k.p();
  Int r = c % p;
  if (r < 0) r += p;
  return k.from_int(r.convert_to<std::int64_t>());
}

Poly reduce_poly(const FiniteField& k, const std::vector<Int>& coeffs) {
  std::vector<FieldElement> out;
  for (const auto& c : coeffs) out.push_back(reduce(k, c));
  return Poly(k, out);
}

int int_degree(const std::vector<Int>& coeffs) {
  int d = static_cast<int>(coeffs.size()) - 1;
  while (d >= 0 && coeffs[d] == 0) --d;
  return d;
}

// Cyclic subgroup order generated by the classes of xs in k^x / k^(x n).
Int class_group_order(const FiniteField& k, const std::vector<FieldElement>& xs, const Int& n) {
  const std::uint64_t qm1 = k.q() - 1;
  Int g = int_gcd(n, Int(qm1));
  if (g == 1) return 1;
  FieldElement w = k.primitive_element();
  Int common = g;
  for (const auto& x : xs) common = int_gcd(common, Int(discrete_log(w, x, qm1)));
  return g / common;
}

bool all_powers(const std::vector<FieldElement>& xs, std::uint64_t r) {
  return std::all_of(xs.begin(), xs.end(), [&](const FieldElement& x) { return power_residue(x, r); });
}

}  // namespace

std::vector<HypothesisViolation> check_hyperelliptic(const HyperellipticInput& in) {
  std::vector<HypothesisViolation> out;
  auto pp = prime_power(in.q);
  if (!pp) {
    out.push_back({ErrorCode::InvalidInput, "q = " + std::to_string(in.q) + " is not a prime power"});
    return out;
  }
  if (in.p_adic && pp->second != 1) out.push_back({ErrorCode::NotPrime, "p-adic mode needs a prime p"});
  FiniteField k;
  try {
    k = make_field_of_order(in.q, in.field_limit);
  } catch (const Error& e) {
    out.push_back({e.code(), e.what()});
    return out;
  }
  const int d = int_degree(in.g);
  if (d < 0 || in.g[d] != 1) {
    out.push_back({ErrorCode::InvalidInput, "g must be monic"});
    return out;
  }
  if (d < 3) out.push_back({ErrorCode::InvalidInput, "g must have degree at least 3"});
  const std::int64_t p = k.p();
  if ((2 * d) % p == 0) out.push_back({ErrorCode::CharDividesTwoD, "p divides 2d"});
  const int e = int_degree(in.h);
  if (e > 2 * d) out.push_back({ErrorCode::DegreeTooLarge, "deg h exceeds 2d"});
  Poly gb = reduce_poly(k, in.g);
  Poly hb = reduce_poly(k, in.h);
  if (!coprime(gb, gb.derivative())) out.push_back({ErrorCode::NotSeparableReduction, "g-bar is not separable"});
  if (hb.is_zero() || !coprime(gb, hb)) out.push_back({ErrorCode::CommonFactorGH, "g-bar and h-bar share a factor"});
  if (in.r < 1) out.push_back({ErrorCode::InvalidInput, "r must be positive"});
  if (in.r >= 1 && in.r % p == 0) out.push_back({ErrorCode::InvalidInput, "r must be prime to p"});
  return out;
}

HyperellipticCurve validate_hyperelliptic(const HyperellipticInput& in) {
  auto v = check_hyperelliptic(in);
  if (!v.empty()) throw Error(v.front().code, v.front().message);
  HyperellipticCurve c;
  c.input = in;
  c.k = make_field_of_order(in.q, in.field_limit);
  c.g_bar = reduce_poly(c.k, in.g);
  c.h_bar = reduce_poly(c.k, in.h);
  c.d = c.g_bar.degree();
  c.e = c.h_bar.degree();
  c.factors = factor(c.g_bar);
  for (const auto& f : c.factors) {
    if (f.factor.degree() == 1) c.rational_roots.push_back(-f.factor.coeff(0));
  }
  std::sort(c.rational_roots.begin(), c.rational_roots.end());
  if (!c.rational_roots.empty()) {
    if (in.alpha0_rank < 0 || static_cast<std::size_t>(in.alpha0_rank) >= c.rational_roots.size()) {
      throw Error(ErrorCode::InvalidInput, "alpha0 rank out of range");
    }
    std::rotate(c.rational_roots.begin(), c.rational_roots.begin() + in.alpha0_rank,
                c.rational_roots.begin() + in.alpha0_rank + 1);
  }
  int block = 0;
  for (std::size_t i = 0; i < c.rational_roots.size(); ++i) c.block_of.push_back(block++);
  for (const auto& f : c.factors) {
    if (f.factor.degree() == 1) continue;
    for (int j = 0; j < f.factor.degree(); ++j) c.block_of.push_back(block);
    ++block;
  }
  return c;
}

DualGraph bd_graph(const HyperellipticCurve& c) {
  std::vector<int> perm(c.d);
  for (int j = 0; j < c.d; ++j) {
    int next = j + 1;
    if (next == c.d || c.block_of[next] != c.block_of[j]) {
      next = j;
      while (next > 0 && c.block_of[next - 1] == c.block_of[j]) --next;
    }
    perm[j] = next;
  }
  return banana_graph(c.d, perm);
}

FiberModel bd_fiber(const HyperellipticCurve& c) {
  int l = 1;
  for (const auto& f : c.factors) l = std::lcm(l, f.factor.degree());
  FiberModel fiber;
  fiber.graph = bd_graph(c);
  fiber.base = c.k;
  fiber.working = make_field(c.k.p(), c.k.m() * l, c.input.field_limit);
  Embedding emb(c.k, fiber.working);
  std::vector<FieldElement> alphas;
  for (const auto& a : c.rational_roots) alphas.push_back(emb.map(a));
  for (const auto& f : c.factors) {
    if (f.factor.degree() == 1) continue;
    FieldElement rho = roots(f.factor.map(emb)).front();
    for (int j = 0; j < f.factor.degree(); ++j) {
      alphas.push_back(rho);
      rho = rho.frobenius(c.k.m());
    }
  }
  for (const auto& a : alphas) fiber.node_coords.push_back({P1Point::at(a), P1Point::at(a)});
  fiber.intersection = intersection_matrix(fiber.graph);
  return fiber;
}

SpecializedDivisor bd_div_y_minus_g(const HyperellipticCurve& c, const FiniteField& working) {
  SpecializedDivisor d;
  if (c.e > 0) d.clusters.push_back({0, c.h_bar.monic().map(Embedding(c.k, working)), 1});
  if (c.d != c.e) d.points.push_back({0, P1Point::infinity(), c.d - c.e});
  d.points.push_back({1, P1Point::infinity(), -c.d});
  return d;
}

SpecializedDivisor bd_canonical_divisor(const HyperellipticCurve& c, const FiniteField& working) {
  SpecializedDivisor d;
  if (c.e > 0) d.clusters.push_back({0, c.h_bar.monic().map(Embedding(c.k, working)), 1});
  if (2 * c.d - 2 != c.e) d.points.push_back({0, P1Point::infinity(), 2 * c.d - 2 - c.e});
  d.points.push_back({1, P1Point::infinity(), -2});
  return d;
}

DescentContext bd_context(const HyperellipticCurve& c, int base_point_rank) {
  FiberModel fiber = bd_fiber(c);
  H1Basis h1 = h1_basis(fiber.graph);
  PrincipalDecomposition dec = banana_decomposition(fiber.graph, h1);
  std::vector<IntVector> chis;
  for (const auto& comp : dec.components) chis.push_back(comp.chi);
  SpecializedDivisor dy = bd_div_y_minus_g(c, fiber.working);
  return make_context(std::move(fiber), chis, {dy.scaled(-1), dy}, base_point_rank);
}

ClosedVerdict theta_bd(const HyperellipticCurve& c) {
  if (c.d % 2 == 0) return {Truth::True, "d even"};
  if (c.factors.size() == 1) return {Truth::True, "g-bar irreducible of odd degree"};
  if (c.rational_roots.empty()) return {Truth::Undetermined, "OddDegreeWithoutRationalRoot"};
  const FieldElement& a0 = c.rational_roots.front();
  FieldElement h0 = c.h_bar.eval(a0);
  std::vector<FieldElement> norms;
  for (const auto& f : c.factors) {
    if (f.factor.degree() == 1 && -f.factor.coeff(0) == a0) continue;
    // Res(f, h) = N(h(alpha)) for monic f.
    norms.push_back(h0.pow(static_cast<std::int64_t>(f.factor.degree())) * resultant(f.factor, c.h_bar));
  }
  return {truth_of(all_powers(norms, 2)), "norm criterion at rational root alpha_0"};
}

ClosedVerdict root_bd_engine(const HyperellipticCurve& c, const Int& r) {
  try {
    DescentContext ctx = bd_context(c);
    DescentVerdict v = divisibility_verdict(ctx, bd_canonical_divisor(c, ctx.fiber.working), r);
    switch (v.outcome) {
      case Outcome::Divisible: return {Truth::True, "descent engine"};
      case Outcome::NotDivisible: return {Truth::False, "descent engine"};
      case Outcome::NotInPicBracketR: return {Truth::False, "GeometricObstruction"};
      case Outcome::Undetermined: return {Truth::Undetermined, v.reason};
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotSupported || e.code() == ErrorCode::SizeLimitExceeded) {
      return {Truth::Undetermined, std::string(error_code_name(e.code()))};
    }
    throw;
  }
  return {Truth::Undetermined, "Unknown"};
}

TorsionResult torsion_bd_engine(const HyperellipticCurve& c) {
  try {
    return {torsion_structure(bd_context(c)), "descent engine"};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotSupported || e.code() == ErrorCode::SizeLimitExceeded) {
      return {std::nullopt, std::string(error_code_name(e.code()))};
    }
    throw;
  }
}

TorsionResult torsion_bd(const HyperellipticCurve& c) {
  const Int q = c.k.q();
  const bool split = std::all_of(c.factors.begin(), c.factors.end(),
                                 [](const PolyFactor& f) { return f.factor.degree() == 1; });
  // For d > 3 the split formula needs mu_d in k: with d not dividing q - 1 a lift of
  // the Phi generator can have order d (q - 1) even though nu has order n < d.
  if (split && (c.d == 3 || (q - 1) % c.d == 0)) {
    FieldElement h0 = c.h_bar.eval(c.rational_roots.front());
    std::vector<FieldElement> ratios;
    for (std::size_t i = 1; i < c.rational_roots.size(); ++i) ratios.push_back(c.h_bar.eval(c.rational_roots[i]) / h0);
    Int n = class_group_order(c.k, ratios, c.d);
    Int m = c.d / n;
    IntVector cyc(c.d - 2, q - 1);
    cyc.push_back(n * (q - 1));
    cyc.push_back(m);
    return {abelian_invariants(cyc), "closed form, g-bar split"};
  }
  if (c.d == 3 && c.rational_roots.size() == 1) {
    const FieldElement& a0 = c.rational_roots.front();
    const Poly& g2 = c.factors.back().factor;
    bool trivial;
    if (q % 3 == 1) {
      trivial = power_residue(c.h_bar.eval(a0).pow(2) / resultant(g2, c.h_bar), 3);
    } else {
      // h(alpha_1)^((q^2-1)/3) = 1, with no alpha_0 correction.
      FiniteField l = make_field(c.k.p(), 2 * c.k.m(), c.input.field_limit);
      Embedding emb(c.k, l);
      FieldElement a1 = roots(g2.map(emb)).front();
      trivial = c.h_bar.map(emb).eval(a1).pow((q * q - 1) / 3).is_one();
    }
    IntVector cyc = trivial ? IntVector{q * q - 1, 3} : IntVector{3 * (q * q - 1)};
    return {abelian_invariants(cyc), "closed form, d = 3 with one rational root"};
  }
  if (c.d == 3 && c.factors.size() == 1) {
    bool trivial = true;
    if (q % 3 == 1) {
      FiniteField l = make_field(c.k.p(), 3 * c.k.m(), c.input.field_limit);
      Embedding emb(c.k, l);
      FieldElement a0 = roots(c.g_bar.map(emb)).front();
      trivial = c.h_bar.map(emb).eval(a0).pow((q * q * q - 1) / 3).is_one();
    }
    Int f = q * q + q + 1;
    IntVector cyc = trivial ? IntVector{f, 3} : IntVector{3 * f};
    return {abelian_invariants(cyc), "closed form, d = 3 irreducible"};
  }
  return torsion_bd_engine(c);
}

FamilyReport hyperelliptic_report(const HyperellipticInput& in) {
  FamilyReport rep;
  rep.family = "hyperelliptic";
  rep.input["q"] = std::to_string(in.q);
  rep.input["mode"] = in.p_adic ? "p-adic" : "residue-field";
  rep.input["g"] = format_univariate(in.g);
  rep.input["h"] = format_univariate(in.h);
  rep.input["r"] = in.r.str();
  rep.input["alpha0_rank"] = std::to_string(in.alpha0_rank);
  for (const auto& v : check_hyperelliptic(in)) rep.violations.push_back(std::string(error_code_name(v.code)));
  if (!rep.violations.empty()) return rep;
  HyperellipticCurve c = validate_hyperelliptic(in);
  rep.valid = true;

  DualGraph graph = bd_graph(c);
  H1Basis h1 = h1_basis(graph);
  rep.graph_vertices = graph.num_vertices;
  rep.graph_edges = static_cast<int>(graph.edges.size());
  rep.galois_order = graph.galois_order;
  rep.phi = component_group(intersection_matrix(graph)).invariants;
  rep.char_poly = frobenius_char_poly(h1.lattice);
  rep.torus_order = torus_order(h1.lattice, c.k.q());
  try {
    PrincipalDecomposition dec = banana_decomposition(graph, h1);
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
      const auto& comp = dec.components[i];
      rep.decomposition.push_back(
          {"chi_" + std::to_string(i + 1), comp.relation, eval_int_poly(comp.relation, Int(c.k.q()))});
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotSupported) throw;
    rep.warnings.push_back("torus has no supported principal decomposition on this graph");
  }

  if (in.r == 2) {
    ClosedVerdict closed = theta_bd(c);
    ClosedVerdict engine = root_bd_engine(c, 2);
    VerdictEntry v{closed.value, closed.path, "", std::nullopt};
    if (closed.value == Truth::Undetermined) {
      v.reason = closed.path;
      v.path = "";
    }
    if (engine.value != Truth::Undetermined) v.engine = engine.value;
    rep.verdicts["theta"] = v;
  } else {
    ClosedVerdict engine = root_bd_engine(c, in.r);
    VerdictEntry v{engine.value, engine.path, "", std::nullopt};
    if (engine.value == Truth::Undetermined) {
      v.reason = engine.path;
      v.path = "";
    } else {
      v.engine = engine.value;
    }
    rep.verdicts["root_of_canonical"] = v;
  }

  TorsionResult tor = torsion_bd(c);
  if (tor.invariants) {
    rep.torsion = *tor.invariants;
    rep.torsion_path = tor.path;
  } else {
    rep.torsion_path = "undetermined";
    rep.warnings.push_back("torsion undetermined: " + tor.path);
  }
  if (tor.path != "descent engine") {
    TorsionResult eng = torsion_bd_engine(c);
    if (eng.invariants) rep.torsion_engine = *eng.invariants;
  } else if (tor.invariants) {
    rep.torsion_engine = *tor.invariants;
  }

  try {
    FiberModel fiber = bd_fiber(c);
    Embedding emb(c.k, fiber.working);
    Poly hw = c.h_bar.map(emb);
    rep.table_field = fiber.working.describe();
    TableRow alpha{"alpha", {}}, hval{"h(alpha)", {}};
    for (std::size_t j = 0; j < fiber.node_coords.size(); ++j) {
      rep.table_columns.push_back("alpha_" + std::to_string(j));
      alpha.values.push_back(fiber.node_coords[j][0].x.index());
      hval.values.push_back(hw.eval(fiber.node_coords[j][0].x).index());
    }
    rep.tables = {alpha, hval};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SizeLimitExceeded) throw;
    rep.warnings.push_back("splitting field of g-bar exceeds the field-size limit");
  }

  if (c.d == 3 && c.rational_roots.size() == 1 && c.k.q() % 3 == 2) {
    rep.warnings.push_back("one-rational-root torsion test h(alpha_1)^((q^2-1)/3) = 1 uses no alpha_0 correction");
  }
  if (in.p_adic) {
    rep.warnings.push_back(
        "K = Q_p: the kernel of reduction is torsion-free for p != 2 and p does not divide |Phi|, so J(K)(p') "
        "is the full prime-to-p rational torsion");
  } else {
    rep.warnings.push_back("torsion is J(K)(p') for any K with residue field GF(q); p-primary torsion is not computed");
  }
  return rep;
}

}  // namespace degen
