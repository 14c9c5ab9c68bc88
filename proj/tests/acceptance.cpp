// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#define DOCTEST_CONFIG_DISABLE
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "brute.hpp"
#include "descent_instances.hpp"
#include "fixtures.hpp"
#include "degen/oracle.hpp"

using namespace degen;
using namespace descent_instances;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

using Criterion = std::function<void(Check&)>;

Int product(const IntVector& v) {
  Int p = 1;
  for (const auto& x : v) p *= x;
  return p;
}

IntVector unit(int g, int i) {
  IntVector v(g, 0);
  v[i] = 1;
  return v;
}

// Component groups of the reduction graphs.
void component_groups(Check& o) {
  o.expect(component_group({{-3, 3}, {3, -3}}).invariants == IntVector{3}, "[[-3,3],[3,-3]] -> Z/3");
  for (int d = 3; d <= 8; ++d) {
    auto phi = component_group(intersection_matrix(banana_graph(d)));
    o.expect(phi.invariants == IntVector{d}, "B_" + std::to_string(d) + " -> Z/d");
  }
  auto c = fixtures::genus4(7, fixtures::eps0());
  auto fiber = genus4_fiber(c);
  auto phi = component_group(fiber.intersection);
  o.expect(phi.invariants == IntVector{2, 6}, "genus-4 matrix -> Z/6 + Z/2");

  // Realize both generators by rational points off the nodes, then project.
  auto realize = [&](const IntVector& md) {
    SpecializedDivisor d;
    for (int comp = 0; comp < 3; ++comp) {
      auto pts = fixtures::rational_points(fiber, comp);
      if (pts.empty()) return IntVector{};
      if (md[comp] != 0) d.points.push_back({comp, pts.front(), md[comp]});
    }
    return d.multidegree(3);
  };
  auto md1 = realize({0, 1, -1}), md2 = realize({-1, -1, 2});
  o.expect(md1 == IntVector{0, 1, -1} && md2 == IntVector{-1, -1, 2}, "generators realizable over k");
  auto d1 = phi.project(md1), d2 = phi.project(md2);
  o.expect(phi.element_order(d1) == 6 && phi.element_order(d2) == 2, "generator orders 6 and 2");
  std::set<IntVector> span;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 2; ++b) span.insert(phi.add(phi.scale(d1, a), phi.scale(d2, b)));
  o.expect(span.size() == 12, "generators span Phi");
  o.detail << "B_3..B_8 cyclic, genus-4 Phi = Z/6 + Z/2";
}

// Enumerated rational points of tori against f(q) and the mu decomposition.
void torus_orders(Check& o) {
  struct Fixture {
    CharacterLattice lattice;
    std::vector<IntVector> chis;
  };
  std::vector<Fixture> fixtures;
  for (int g = 1; g <= 4; ++g) {
    Fixture f{split_lattice(g), {}};
    for (int i = 0; i < g; ++i) f.chis.push_back(unit(g, i));
    fixtures.push_back(f);
  }
  for (int g = 2; g <= 4; ++g) fixtures.push_back({norm_lattice(g), {unit(g, 0)}});
  fixtures.push_back({make_lattice({{0, -1}, {1, -1}}, "B3-irreducible"), {unit(2, 0)}});

  int checked = 0;
  for (const auto& fx : fixtures) {
    auto dec = make_decomposition(fx.lattice, fx.chis);
    o.expect(verify_principal_decomposition(fx.lattice, dec).ok, "principal decomposition " + fx.lattice.label);
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 7ull, 9ull}) {
      const std::string tag = fx.lattice.label + " q=" + std::to_string(q);
      Int f = torus_order(fx.lattice, q);
      auto pts = enumerate_rational_points(fx.lattice, q);
      auto oracle = enumerate_torus(fx.lattice, q);
      o.expect(Int(pts.size()) == f, "enumeration = f(q) for " + tag);
      o.expect(Int(oracle.size()) == f, "oracle enumeration = f(q) for " + tag);

      std::vector<Int> fi;
      for (const auto& comp : dec.components) fi.push_back(eval_int_poly(comp.relation, Int(q)));
      std::set<std::vector<std::uint64_t>> images;
      bool in_mu = true;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<std::uint64_t> image;
        for (std::size_t j = 0; j < dec.components.size(); ++j) {
          auto v = pts.evaluate(i, dec.components[j].chi);
          in_mu = in_mu && v.pow(fi[j]).is_one();
          image.push_back(v.index());
        }
        images.insert(image);
      }
      o.expect(in_mu, "chi_i lands in mu_{f_i(q)} for " + tag);
      o.expect(images.size() == pts.size() && product(IntVector(fi.begin(), fi.end())) == Int(pts.size()),
               "sum of chi_i is bijective for " + tag);
      o.expect(pts.invariants == abelian_invariants(IntVector(fi.begin(), fi.end())), "group structure for " + tag);
      ++checked;
    }
  }
  o.detail << checked << " (lattice, q) pairs";
}

// Theta characteristics for g = x^3 - x over all primes 5 <= p <= 200.
void theta_rule(Check& o) {
  int primes = 0, rational = 0;
  for (std::uint64_t p = 5; p <= 200; ++p) {
    if (!is_prime(p)) continue;
    ++primes;
    bool expected = p % 24 == 1 || p % 24 == 23;
    auto twisted = theta_bd(fixtures::hyper(p, "x^3-x", "x+2"));
    o.expect(twisted.value == truth_of(expected), "h = x+2 at p = " + std::to_string(p));
    o.expect(theta_bd(fixtures::hyper(p, "x^3-x", "1")).value == Truth::True, "h = 1 at p = " + std::to_string(p));
    rational += expected;
  }
  o.detail << primes << " primes, " << rational << " with a rational theta for h = x+2";
}

// Monic squarefree cubic over GF(q) with the given number of rational roots.
std::vector<Int> cubic_with_roots(std::uint64_t q, int want) {
  auto f = make_field_of_order(q);
  for (const auto& m : brute::monic_polys(f, 3)) {
    if (!is_squarefree(m)) continue;
    int count = 0;
    for (const auto& a : f.elements())
      if (m.eval(a).is_zero()) ++count;
    if (count != want) continue;
    std::vector<Int> out;
    for (const auto& c : m.coeffs()) out.push_back(Int(c.index()));
    return out;
  }
  return {};
}

// Torsion orders for the three factorization types of a cubic.
void torsion_formulas(Check& o) {
  int cases = 0;
  for (std::uint64_t q : {5ull, 7ull, 11ull, 13ull}) {
    Int qq = q;
    for (int roots : {3, 1, 0}) {
      Int f = roots == 3 ? Int((qq - 1) * (qq - 1)) : roots == 1 ? Int(qq * qq - 1) : Int(qq * qq + qq + 1);
      auto g = cubic_with_roots(q, roots);
      int done = 0;
      for (std::int64_t h0 = 1; h0 < static_cast<std::int64_t>(q) && done < 2; ++h0) {
        auto in = fixtures::hyper_input(q, g, {h0, 1});
        if (!check_hyperelliptic(in).empty()) continue;
        auto t = torsion_bd(validate_hyperelliptic(in));
        o.expect(t.invariants && product(*t.invariants) == 3 * f,
                 "order 3 f(q) at q = " + std::to_string(q) + ", " + std::to_string(roots) + " roots");
        ++done;
        ++cases;
      }
      o.expect(done > 0, "an admissible h exists");
    }
  }
  auto t7 = torsion_bd(fixtures::hyper(7, "x^3-x", "x+2"));
  o.expect(t7.invariants && *t7.invariants == IntVector{6, 18}, "q = 7 split cubic gives Z/6 + Z/18");
  o.detail << cases << " cubics, q = 7 example Z/6 + Z/18";
}

// Closed-form genus-4 tables against direct evaluation of the local functions.
void genus4_tables(Check& o) {
  std::mt19937_64 rng(5005);
  int curves = 0;
  for (std::uint64_t q : {7ull, 11ull, 13ull}) {
    int done = 0;
    while (done < 100) {
      auto c = fixtures::random_genus4(rng, q);
      if (!c) continue;
      ++done;
      ++curves;
      auto closed = genus4_table_closed(*c);
      auto direct = genus4_table_direct(*c);
      o.expect(closed.values == direct.values, "closed = direct at q = " + std::to_string(q));
      const auto& w = c->working;
      const auto& row = direct.values[0];
      o.expect(row[0] == -w.one() && row[1] == -w.one() && row[2] == -c->i,
               "fixed entries of div X+Y at q = " + std::to_string(q));
    }
  }
  o.detail << curves << " random eps";
}

// Rational cube roots of the canonical class when p = 5 mod 12.
void cube_roots(Check& o) {
  std::mt19937_64 rng(6006);
  int curves = 0;
  for (std::uint64_t p : {5ull, 17ull, 29ull, 41ull}) {
    int done = 0;
    while (done < 50) {
      auto c = fixtures::random_genus4(rng, p);
      if (!c) continue;
      ++done;
      ++curves;
      o.expect(genus4_cuberoot(*c).value == Truth::True, "cube root at p = " + std::to_string(p));
    }
  }
  o.detail << curves << " random eps";
}

// Exhaustive oracle against the descent engine, and chain against cycle evaluation.
void oracle_agreement(Check& o) {
  std::mt19937_64 rng(7007);
  const std::vector<std::uint64_t> qs = {3, 5, 7};
  int instances = 0, divisible = 0, not_divisible = 0, obstructed = 0;
  while (instances < 200) {
    const std::uint64_t q = qs[rng() % qs.size()];
    const int d = 3 + static_cast<int>(rng() % 2);
    const Int r = (rng() % 2) ? 2 : 3;
    if (Int(q) % r == 0) continue;
    auto c = fixtures::random_hyper(rng, q, d);
    if (!c) continue;
    DescentContext ctx;
    try {
      ctx = bd_context(*c);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotSupported) throw;
      continue;
    }
    // Mostly divisors already in Div^r so the torus comparison is exercised.
    auto div = instances % 4 == 0   ? bd_canonical_divisor(*c, ctx.fiber.working)
               : instances % 4 == 1 ? fixtures::random_divisor(rng, ctx.fiber)
                                    : fixtures::random_div_r(rng, ctx.fiber, r);
    OracleVerdict ov;
    try {
      ov = oracle_divisibility(ctx, div, r);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooLarge && e.code() != ErrorCode::NotSupported) throw;
      continue;
    }
    ++instances;
    auto ev = divisibility_verdict(ctx, div, r);
    bool agree = ev.outcome != Outcome::Undetermined && ov.geometric_ok == (ev.outcome != Outcome::NotInPicBracketR) &&
                 (!ov.geometric_ok || ov.divisible == (ev.outcome == Outcome::Divisible));
    o.expect(agree, "oracle and engine agree (q = " + std::to_string(q) + ", d = " + std::to_string(d) + ")");
    if (!ov.geometric_ok) ++obstructed;
    else if (ov.divisible) ++divisible;
    else ++not_divisible;
  }

  std::vector<DescentContext> contexts = {bd_context(fixtures::hyper(5, "x^3-x", "x+2")),
                                          bd_context(fixtures::hyper(7, "x^4+3*x+1", "x+5")),
                                          bd_context(fixtures::hyper(11, "x^3+x+1", "x")),
                                          genus4_context(fixtures::genus4(7, fixtures::eps0())),
                                          genus4_context(fixtures::genus4(13, fixtures::eps0()))};
  int divisors = 0;
  for (const auto& ctx : contexts) {
    std::vector<LocalFunctionSystem> raw;
    for (const auto& gamma : ctx.h1.cycles) raw.push_back(build_raw_local_function_system(ctx.fiber, gamma));
    for (int it = 0; it < 200; ++it, ++divisors) {
      auto d = fixtures::random_degree_zero(rng, ctx.fiber);
      for (std::size_t i = 0; i < raw.size(); ++i)
        o.expect(chain_evaluate(ctx.h1.cycles[i], d, ctx.fiber) == evaluate_cycle(raw[i], d), "chain = cycle evaluation");
    }
  }
  o.detail << instances << " instances (" << divisible << " divisible, " << not_divisible << " not, " << obstructed
           << " obstructed), " << divisors << " chain divisors";
}

void smith_certificates(Check& o, int& cases) {
  std::mt19937_64 rng(8008);
  for (int it = 0; it < 500; ++it, ++cases) {
    std::size_t n = 1 + rng() % 5, m = 1 + rng() % 5;
    auto a = brute::random_matrix(rng, n, m, -20, 20);
    auto s = smith_normal_form(a);
    bool ok = mat_mul(mat_mul(s.U, a), s.V) == s.D && mat_mul(s.U, s.U_inv) == identity_matrix(n) &&
              mat_mul(s.V, s.V_inv) == identity_matrix(m);
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i)
      if (s.diagonal[i] != 0) ok = ok && s.diagonal[i + 1] % s.diagonal[i] == 0;
    o.expect(ok, "Smith certificate");
  }
}

// Property suites of the descent engine.
void invariant_suites(Check& o) {
  std::mt19937_64 rng(9009);
  auto pool = instances(rng, 50);
  int base = 0, principal = 0, additive = 0, flip = 0, smith = 0;
  for (auto& inst : pool) {
    const auto& ctx = inst.ctx;
    const Int& r = inst.r;
    auto moduli = class_moduli(ctx, r);
    auto zero_rows = sum_of_rows(ctx);
    auto reps = phi_torsion_representatives(ctx.phi, r);
    std::vector<IntVector> flipped;
    for (const auto& comp : ctx.decomposition.components) {
      IntVector chi = comp.chi;
      for (auto& x : chi) x = -x;
      flipped.push_back(chi);
    }
    auto ctx_neg = make_context(ctx.fiber, flipped, ctx.row_functions);
    for (int k = 0; k < 10; ++k) {
      auto d = fixtures::random_div_r(rng, ctx.fiber, r);
      o.expect(gamma_classes(ctx, d, r) == gamma_classes(inst.ctx_alt, d, r), "base-point independence");
      ++base;

      auto p = zero_rows.scaled(Int(1 + static_cast<int>(rng() % 3)));
      for (const auto& t : ctx.systems) o.expect(evaluate_cycle(t, p).is_one(), "principal triviality");
      ++principal;

      const auto& e1 = reps[rng() % reps.size()];
      const auto& e2 = reps[rng() % reps.size()];
      auto target = [&](const IntVector& md) {
        IntVector t(md.size());
        for (std::size_t i = 0; i < md.size(); ++i) t[i] = -r * md[i];
        return t;
      };
      auto f1 = principal_divisor_with_degree(ctx, target(e1.multidegree));
      auto f2 = principal_divisor_with_degree(ctx, target(e2.multidegree));
      PhiElement sum;
      sum.coords = ctx.phi.add(e1.coords, e2.coords);
      for (std::size_t i = 0; i < e1.multidegree.size(); ++i) sum.multidegree.push_back(e1.multidegree[i] + e2.multidegree[i]);
      auto row12 = compute_nu(ctx, sum, f1 + f2, r);
      o.expect(mod_vec(row12.classes, moduli) ==
                   add_mod(compute_nu(ctx, e1, f1, r).classes, compute_nu(ctx, e2, f2, r).classes, moduli),
               "nu additivity");
      ++additive;

      o.expect(gamma_classes(ctx_neg, d, r) == neg_mod(gamma_classes(ctx, d, r), moduli), "orientation flip classes");
      auto any = fixtures::random_divisor(rng, ctx.fiber);
      o.expect(divisibility_verdict(ctx, any, r).outcome == divisibility_verdict(ctx_neg, any, r).outcome,
               "orientation flip verdict");
      ++flip;
    }
  }
  smith_certificates(o, smith);
  for (int n : {base, principal, additive, flip, smith}) o.expect(n >= 500, "at least 500 cases per suite");
  o.detail << base << " base-point, " << principal << " principal, " << additive << " additivity, " << flip
           << " orientation, " << smith << " Smith cases";
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    double limit_seconds;
    Criterion run;
  };
  const std::vector<Entry> entries = {
      {1, "component groups", 1, component_groups},
      {2, "torus orders vs enumeration", 30, torus_orders},
      {3, "theta rule for 5 <= p <= 200", 10, theta_rule},
      {4, "torsion formulas", 10, torsion_formulas},
      {5, "genus-4 tables", 60, genus4_tables},
      {6, "cube-root rule", 60, cube_roots},
      {7, "oracle agreement", 300, oracle_agreement},
      {8, "invariant suites", 300, invariant_suites},
  };
  int failures = 0;
  for (const auto& e : entries) {
    Check o;
    auto start = std::chrono::steady_clock::now();
    try {
      e.run(o);
    } catch (const std::exception& ex) {
      o.expect(false, std::string("exception: ") + ex.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(secs < e.limit_seconds, "time limit");
    std::printf("criterion %d (%s): %s [%.2f s of %.0f s] %s\n", e.id, e.name, o.ok ? "PASS" : "FAIL", secs,
                e.limit_seconds, o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
