#include "degen/descent.hpp"

#include <algorithm>
#include <map>

#include "degen/error.hpp"

namespace degen {

namespace {

Int mod_pos(const Int& a, const Int& n) {
  Int r = a % n;
  return r < 0 ? Int(r + n) : r;
}

int source_of(const DualGraph& g, int e, int dir) { return dir > 0 ? g.edges[e].tail : g.edges[e].head; }
int target_of(const DualGraph& g, int e, int dir) { return dir > 0 ? g.edges[e].head : g.edges[e].tail; }

// Coordinate of node e on its source (leaving) or target (entering) side.
const P1Point& leaving_coord(const FiberModel& f, int e, int dir) { return f.node_coords[e][dir > 0 ? 0 : 1]; }
const P1Point& entering_coord(const FiberModel& f, int e, int dir) { return f.node_coords[e][dir > 0 ? 1 : 0]; }

FieldElement cluster_value(const MobiusFactor& f, const Poly& poly) {
  Poly p = poly.monic();
  const int n = p.degree();
  FiniteField w = f.scale.field();
  FieldElement value = f.scale.pow(static_cast<std::int64_t>(n));
  FieldElement sign = (n % 2 == 0) ? w.one() : -w.one();
  std::optional<FieldElement> pa, pb;
  if (!f.zero.infinite) pa = p.eval(f.zero.x);
  if (!f.pole.infinite) pb = p.eval(f.pole.x);
  if ((pa && pa->is_zero()) || (pb && pb->is_zero())) {
    throw Error(ErrorCode::DivisorMeetsNode, "divisor cluster passes through a node");
  }
  if (pa && pb) return value * *pa / *pb;
  if (pb) return value * sign / *pb;
  return value * sign * *pa;
}

}  // namespace

void validate_fiber(const FiberModel& fiber) {
  const auto& g = fiber.graph;
  if (fiber.node_coords.size() != g.edges.size()) {
    throw Error(ErrorCode::MissingNodeCoordinates, "every node needs coordinates on both branches");
  }
  for (int v = 0; v < g.num_vertices; ++v) {
    if (g.vertex_perm[v] != v) throw Error(ErrorCode::InvalidGraph, "components must be defined over k");
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (const auto& pt : fiber.node_coords[e]) {
      if (!pt.infinite && pt.x.field() != fiber.working) {
        throw Error(ErrorCode::MissingNodeCoordinates, "node coordinate outside the working field");
      }
    }
  }
  // Distinct nodes on one component sit at distinct coordinates.
  for (std::size_t a = 0; a < g.edges.size(); ++a) {
    for (std::size_t b = a + 1; b < g.edges.size(); ++b) {
      for (int sa = 0; sa < 2; ++sa) {
        for (int sb = 0; sb < 2; ++sb) {
          int va = sa ? g.edges[a].head : g.edges[a].tail;
          int vb = sb ? g.edges[b].head : g.edges[b].tail;
          if (va == vb && fiber.node_coords[a][sa] == fiber.node_coords[b][sb]) {
            throw Error(ErrorCode::InvalidGraph, "two nodes share a coordinate on component " + std::to_string(va));
          }
        }
      }
    }
  }
}

IntVector SpecializedDivisor::multidegree(int num_components) const {
  IntVector deg(num_components, 0);
  for (const auto& t : points) deg.at(t.component) += t.multiplicity;
  for (const auto& c : clusters) deg.at(c.component) += c.multiplicity * c.poly.degree();
  return deg;
}

SpecializedDivisor SpecializedDivisor::operator+(const SpecializedDivisor& o) const {
  SpecializedDivisor out = *this;
  out.points.insert(out.points.end(), o.points.begin(), o.points.end());
  out.clusters.insert(out.clusters.end(), o.clusters.begin(), o.clusters.end());
  return out;
}

SpecializedDivisor SpecializedDivisor::operator-(const SpecializedDivisor& o) const { return *this + o.scaled(-1); }

SpecializedDivisor SpecializedDivisor::scaled(const Int& k) const {
  SpecializedDivisor out;
  if (k == 0) return out;
  out = *this;
  for (auto& t : out.points) t.multiplicity *= k;
  for (auto& c : out.clusters) c.multiplicity *= k;
  return out;
}

std::vector<std::vector<std::pair<int, int>>> closed_walks(const DualGraph& graph, const Cycle& cycle) {
  if (!is_cycle(graph, cycle)) throw Error(ErrorCode::InvalidInput, "chain has nonzero boundary");
  const std::size_t ne = graph.edges.size();
  std::vector<Int> remaining(ne);
  std::vector<int> dir(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    remaining[e] = int_abs(cycle[e]);
    dir[e] = cycle[e] >= 0 ? 1 : -1;
  }
  auto next_arc = [&](int v) {
    for (std::size_t e = 0; e < ne; ++e) {
      if (remaining[e] > 0 && source_of(graph, static_cast<int>(e), dir[e]) == v) return static_cast<int>(e);
    }
    return -1;
  };
  std::vector<std::vector<std::pair<int, int>>> walks;
  for (;;) {
    int first = -1;
    for (std::size_t e = 0; e < ne && first < 0; ++e) {
      if (remaining[e] > 0) first = static_cast<int>(e);
    }
    if (first < 0) break;
    // Hierholzer: stack of (vertex, arriving edge).
    std::vector<std::pair<int, int>> stack{{source_of(graph, first, dir[first]), -1}};
    std::vector<int> circuit;
    while (!stack.empty()) {
      int v = stack.back().first;
      int e = next_arc(v);
      if (e >= 0) {
        remaining[e] -= 1;
        stack.emplace_back(target_of(graph, e, dir[e]), e);
      } else {
        if (stack.back().second >= 0) circuit.push_back(stack.back().second);
        stack.pop_back();
      }
    }
    std::reverse(circuit.begin(), circuit.end());
    std::vector<std::pair<int, int>> walk;
    for (int e : circuit) walk.emplace_back(e, dir[e]);
    walks.push_back(std::move(walk));
  }
  return walks;
}

LocalFunctionSystem build_raw_local_function_system(const FiberModel& fiber, const Cycle& cycle) {
  if (fiber.node_coords.size() != fiber.graph.edges.size()) {
    throw Error(ErrorCode::MissingNodeCoordinates, "node coordinates missing");
  }
  LocalFunctionSystem sys;
  sys.cycle = cycle;
  sys.field = fiber.working;
  for (const auto& walk : closed_walks(fiber.graph, cycle)) {
    const std::size_t n = walk.size();
    for (std::size_t j = 0; j < n; ++j) {
      auto [e_in, d_in] = walk[j];
      auto [e_out, d_out] = walk[(j + 1) % n];
      MobiusFactor f;
      f.component = target_of(fiber.graph, e_in, d_in);
      f.entering_edge = e_in;
      f.leaving_edge = e_out;
      f.zero = entering_coord(fiber, e_in, d_in);
      f.pole = leaving_coord(fiber, e_out, d_out);
      f.scale = fiber.working.one();
      sys.factors.push_back(f);
    }
  }
  return sys;
}

LocalFunctionSystem build_local_function_system(const FiberModel& fiber, const Cycle& cycle, const MuGroup& mu,
                                                int base_point_rank) {
  LocalFunctionSystem sys = build_raw_local_function_system(fiber, cycle);
  if (mu.host != fiber.working) throw Error(ErrorCode::FieldMismatch, "mu group must live in the working field");
  Embedding emb(fiber.base, fiber.working);
  for (auto& f : sys.factors) {
    int seen = 0;
    std::optional<P1Point> chosen;
    for (std::uint64_t i = 0; i < fiber.base.q() && !chosen; ++i) {
      P1Point cand = P1Point::at(emb.map(fiber.base.element(i)));
      if (cand == f.zero || cand == f.pole) continue;
      if (seen++ == base_point_rank) chosen = cand;
    }
    if (!chosen) {
      P1Point inf = P1Point::infinity();
      if (inf != f.zero && inf != f.pole && seen == base_point_rank) chosen = inf;
    }
    if (!chosen) throw Error(ErrorCode::NoRationalBasePoint, "no rational base point on component");
    f.base_point = *chosen;
    FieldElement u = evaluate_factor(f, f.base_point);
    if (!u.pow(mu.order).is_one()) f.scale = u.inverse();
  }
  return sys;
}

FieldElement evaluate_factor(const MobiusFactor& f, const P1Point& pt) {
  if (pt == f.zero || pt == f.pole) throw Error(ErrorCode::DivisorMeetsNode, "point " + pt.to_string() + " is a node");
  if (pt.infinite) return f.scale;
  FieldElement num = f.zero.infinite ? pt.x.field().one() : pt.x - f.zero.x;
  FieldElement den = f.pole.infinite ? pt.x.field().one() : pt.x - f.pole.x;
  return f.scale * num / den;
}

FieldElement evaluate_cycle(const LocalFunctionSystem& t, const SpecializedDivisor& d) {
  FieldElement acc = t.field.one();
  for (const auto& f : t.factors) {
    FieldElement v = f.scale.field().one();
    for (const auto& term : d.points) {
      if (term.component != f.component || term.multiplicity == 0) continue;
      v *= evaluate_factor(f, term.point).pow(term.multiplicity);
    }
    for (const auto& c : d.clusters) {
      if (c.component != f.component || c.multiplicity == 0) continue;
      v *= cluster_value(f, c.poly).pow(c.multiplicity);
    }
    acc *= v;
  }
  return acc;
}

DescentContext make_context(FiberModel fiber, const std::vector<IntVector>& chis,
                            std::vector<SpecializedDivisor> row_functions, int base_point_rank) {
  validate_fiber(fiber);
  DescentContext ctx;
  ctx.h1 = h1_basis(fiber.graph);
  ctx.decomposition = make_decomposition(ctx.h1.lattice, chis);
  auto check = verify_principal_decomposition(ctx.h1.lattice, ctx.decomposition);
  if (!check.ok) throw Error(ErrorCode::NotPrincipal, check.reason);
  for (const auto& comp : ctx.decomposition.components) {
    Int order = eval_int_poly(comp.relation, Int(fiber.base.q()));
    ctx.mu.push_back(mu_group_in(fiber.working, order));
    ctx.generators.push_back(ctx.h1.cycle_of(comp.chi));
  }
  ctx.phi = component_group(fiber.intersection);
  const int v = fiber.graph.num_vertices;
  if (row_functions.size() != static_cast<std::size_t>(v)) {
    throw Error(ErrorCode::DegreeMismatch, "one principal divisor per row of the intersection matrix is required");
  }
  for (int i = 0; i < v; ++i) {
    if (row_functions[i].multidegree(v) != fiber.intersection[i]) {
      throw Error(ErrorCode::DegreeMismatch, "row function " + std::to_string(i) + " has the wrong multidegree");
    }
  }
  ctx.row_functions = std::move(row_functions);
  ctx.fiber = std::move(fiber);
  for (std::size_t i = 0; i < ctx.generators.size(); ++i) {
    ctx.systems.push_back(build_local_function_system(ctx.fiber, ctx.generators[i], ctx.mu[i], base_point_rank));
  }
  return ctx;
}

IntVector class_moduli(const DescentContext& ctx, const Int& r) {
  IntVector out;
  for (const auto& mu : ctx.mu) out.push_back(int_gcd(r, mu.order));
  return out;
}

Int gamma_class(const DescentContext& ctx, std::size_t component, const SpecializedDivisor& d, const Int& r) {
  const int v = ctx.fiber.graph.num_vertices;
  for (const auto& x : d.multidegree(v)) {
    if (x % r != 0) throw Error(ErrorCode::NotDivRDivisor, "multidegree not divisible by " + r.str());
  }
  const MuGroup& mu = ctx.mu.at(component);
  FieldElement u = evaluate_cycle(ctx.systems.at(component), d);
  if (!u.pow(mu.order).is_one()) {
    throw Error(ErrorCode::ValueOutsideMu, "evaluation " + u.to_string() + " is not in mu_" + mu.order.str());
  }
  Int modulus = int_gcd(r, mu.order);
  if (modulus == 1) return 0;
  std::uint64_t e = discrete_log(mu.generator, u, mu.order.convert_to<std::uint64_t>());
  return mod_pos(Int(e), modulus);
}

IntVector gamma_classes(const DescentContext& ctx, const SpecializedDivisor& d, const Int& r) {
  IntVector out;
  for (std::size_t i = 0; i < ctx.mu.size(); ++i) out.push_back(gamma_class(ctx, i, d, r));
  return out;
}

NuRow compute_nu(const DescentContext& ctx, const PhiElement& delta, const SpecializedDivisor& div_f, const Int& r) {
  const int v = ctx.fiber.graph.num_vertices;
  IntVector deg = div_f.multidegree(v);
  for (int i = 0; i < v; ++i) {
    if (deg[i] != -r * delta.multidegree[i]) {
      throw Error(ErrorCode::DegreeMismatch, "deg(div f) must equal -r deg(D_delta)");
    }
  }
  return {delta.coords, gamma_classes(ctx, div_f, r)};
}

SpecializedDivisor principal_divisor_with_degree(const DescentContext& ctx, const IntVector& target) {
  // t M = target  <=>  M^T t = target.
  const IntMatrix& m = ctx.fiber.intersection;
  SmithForm s = smith_normal_form(transpose(m));
  IntVector rhs = mat_vec(s.U, target);
  IntVector sol(m.size(), 0);
  for (std::size_t k = 0; k < m.size(); ++k) {
    Int d = k < s.diagonal.size() ? s.diagonal[k] : Int(0);
    if (d == 0) {
      if (rhs[k] != 0) throw Error(ErrorCode::DegreeMismatch, "multidegree is not fibral");
      continue;
    }
    if (rhs[k] % d != 0) throw Error(ErrorCode::DegreeMismatch, "multidegree is not fibral");
    sol[k] = rhs[k] / d;
  }
  IntVector t = mat_vec(s.V, sol);
  SpecializedDivisor out;
  for (std::size_t i = 0; i < t.size(); ++i) out = out + ctx.row_functions[i].scaled(t[i]);
  return out;
}

NuRow compute_nu(const DescentContext& ctx, const PhiElement& delta, const Int& r) {
  IntVector target;
  for (const auto& x : delta.multidegree) target.push_back(-r * x);
  return compute_nu(ctx, delta, principal_divisor_with_degree(ctx, target), r);
}

std::vector<NuRow> nu_closure(const DescentContext& ctx, const std::vector<NuRow>& rows, const Int& r) {
  IntVector moduli = class_moduli(ctx, r);
  auto norm_classes = [&](IntVector c) {
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = moduli[j] == 0 ? c[j] : mod_pos(c[j], moduli[j]);
    return c;
  };
  std::map<IntVector, IntVector> seen;
  std::vector<NuRow> order;
  NuRow zero{IntVector(ctx.phi.invariants.size(), 0), IntVector(ctx.mu.size(), 0)};
  seen[zero.delta] = zero.classes;
  order.push_back(zero);
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    for (const auto& g : rows) {
      IntVector d = ctx.phi.add(order[idx].delta, g.delta);
      IntVector c(order[idx].classes.size());
      for (std::size_t j = 0; j < c.size(); ++j) c[j] = order[idx].classes[j] + g.classes[j];
      c = norm_classes(c);
      auto it = seen.find(d);
      if (it == seen.end()) {
        seen[d] = c;
        order.push_back({d, c});
      } else if (it->second != c) {
        throw Error(ErrorCode::InvalidInput, "nu data is not additive");
      }
    }
  }
  Int expected = 1;
  for (const auto& d : ctx.phi.invariants) expected *= int_gcd(d, r);
  if (Int(order.size()) != expected) {
    throw Error(ErrorCode::IncompleteNuData,
                "nu rows generate " + std::to_string(order.size()) + " of " + expected.str() + " elements of Phi[r]");
  }
  return order;
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Divisible: return "Divisible";
    case Outcome::NotDivisible: return "NotDivisible";
    case Outcome::NotInPicBracketR: return "NotInPicBracketR";
    case Outcome::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

DescentVerdict divisibility_verdict(const DescentContext& ctx, const SpecializedDivisor& d, const Int& r,
                                    const std::vector<NuRow>& nu_rows) {
  if (r < 1) throw Error(ErrorCode::InvalidInput, "r must be positive");
  if (r % ctx.fiber.base.p() == 0) throw Error(ErrorCode::InvalidInput, "r must be prime to the characteristic");
  DescentVerdict out;
  out.moduli = class_moduli(ctx, r);
  if (r == 1) {
    out.outcome = Outcome::Divisible;
    out.witness = IntVector(ctx.phi.invariants.size(), 0);
    return out;
  }
  const int v = ctx.fiber.graph.num_vertices;
  IntVector deg = d.multidegree(v);
  bool in_r = std::all_of(deg.begin(), deg.end(), [&](const Int& x) { return x % r == 0; });
  SpecializedDivisor shifted = d;
  if (!in_r) {
    auto t = fibral_lattice_witness(deg, r, ctx.fiber.intersection);
    if (!t) {
      out.outcome = Outcome::NotInPicBracketR;
      out.reason = "GeometricObstruction";
      return out;
    }
    // D - div(f) with deg(div f) = t M lands in r Z^v and has the same class.
    shifted = d - principal_divisor_with_degree(ctx, vec_mat(*t, ctx.fiber.intersection));
    out.reason = "ShiftedByFibralDivisor";
  }
  out.divisor_classes = gamma_classes(ctx, shifted, r);
  out.table = nu_closure(ctx, nu_rows, r);
  for (const auto& row : out.table) {
    bool ok = true;
    for (std::size_t j = 0; j < out.moduli.size() && ok; ++j) {
      ok = mod_pos(out.divisor_classes[j] + row.classes[j], out.moduli[j]) == 0;
    }
    if (ok) {
      out.outcome = Outcome::Divisible;
      out.witness = row.delta;
      return out;
    }
  }
  out.outcome = Outcome::NotDivisible;
  return out;
}

DescentVerdict divisibility_verdict(const DescentContext& ctx, const SpecializedDivisor& d, const Int& r) {
  std::vector<NuRow> rows;
  if (r % ctx.fiber.base.p() != 0 && r > 1) {
    for (const auto& delta : phi_torsion_representatives(ctx.phi, r)) rows.push_back(compute_nu(ctx, delta, r));
  }
  return divisibility_verdict(ctx, d, r, rows);
}

IntVector torsion_from_relations(const IntVector& torus_orders, const IntVector& phi_orders, const IntMatrix& ell) {
  const std::size_t nt = torus_orders.size(), np = phi_orders.size();
  const std::size_t n = nt + np;
  if (n == 0) return {};
  IntMatrix rel = zero_matrix(n, n);
  for (std::size_t i = 0; i < nt; ++i) rel[i][i] = torus_orders[i];
  for (std::size_t k = 0; k < np; ++k) {
    rel[nt + k][nt + k] = phi_orders[k];
    for (std::size_t i = 0; i < nt; ++i) rel[nt + k][i] = -ell[k][i];
  }
  IntVector out;
  for (const auto& d : smith_normal_form(rel).diagonal) {
    if (d != 1) out.push_back(d);
  }
  return out;
}

IntVector phi_prime_to_p(const ComponentGroup& phi, std::int64_t p) {
  IntVector out;
  for (auto d : phi.invariants) {
    while (d % p == 0) d /= p;
    out.push_back(d);
  }
  return out;
}

IntVector torsion_structure(const DescentContext& ctx) {
  IntVector torus_orders;
  for (const auto& mu : ctx.mu) torus_orders.push_back(mu.order);
  IntVector prime_to_p = phi_prime_to_p(ctx.phi, ctx.fiber.base.p());
  IntVector phi_orders;
  IntMatrix ell;
  for (std::size_t k = 0; k < prime_to_p.size(); ++k) {
    const Int& o = prime_to_p[k];
    if (o == 1) continue;
    IntVector coords(ctx.phi.invariants.size(), 0);
    coords[k] = ctx.phi.invariants[k] / o;
    PhiElement h{coords, ctx.phi.representative(coords)};
    NuRow row = compute_nu(ctx, h, o);
    phi_orders.push_back(o);
    ell.push_back(row.classes);
  }
  return torsion_from_relations(torus_orders, phi_orders, ell);
}

}  // namespace degen
