#include <random>

#include "brute.hpp"
#include "descent_instances.hpp"
#include "fixtures.hpp"

using namespace degen;
using namespace descent_instances;

namespace {

// Discrete log of a value of mu_i reduced to the class group Z/gcd(r, #mu_i).
Int class_of(const DescentContext& ctx, std::size_t i, const FieldElement& value, const Int& r) {
  const auto& mu = ctx.mu[i];
  Int modulus = int_gcd(r, mu.order);
  auto log = discrete_log(mu.generator, value, static_cast<std::uint64_t>(mu.order));
  return Int(log) % modulus;
}

}  // namespace

TEST_CASE("local functions on the split B_3 fiber") {
  auto c = fixtures::hyper(7, "x^3-x", "x+2");
  auto ctx = bd_context(c);
  REQUIRE(ctx.systems.size() == 2);
  const auto& alpha = c.rational_roots;
  REQUIRE(alpha.size() == 3);
  CHECK(alpha[0].is_zero());
  // gamma_1 = e_1 - e_0 enters C^+ through alpha_0 and leaves through alpha_1.
  const auto& t = ctx.systems[0];
  REQUIRE(t.factors.size() == 2);
  for (const auto& f : t.factors) {
    if (f.component == 0) {
      CHECK(f.zero == P1Point::at(alpha[0]));
      CHECK(f.pole == P1Point::at(alpha[1]));
    } else {
      CHECK(f.zero == P1Point::at(alpha[1]));
      CHECK(f.pole == P1Point::at(alpha[0]));
    }
    auto at_base = evaluate_factor(f, f.base_point);
    CHECK(at_base.pow(ctx.mu[0].order).is_one());
  }
  SpecializedDivisor empty;
  CHECK(evaluate_cycle(t, empty).is_one());
}

TEST_CASE("gamma classes of the canonical divisor, q = 7") {
  auto c = fixtures::hyper(7, "x^3-x", "x+2");
  auto ctx = bd_context(c);
  auto k = bd_canonical_divisor(c, ctx.fiber.working);
  auto classes = gamma_classes(ctx, k, 2);
  // h(0) h(1) = 6 is a nonsquare mod 7; h(0) h(-1) = 2 is a square.
  CHECK(classes == IntVector{1, 0});
  SpecializedDivisor empty;
  CHECK(gamma_classes(ctx, empty, 2) == IntVector{0, 0});
  SpecializedDivisor odd;
  odd.points.push_back({0, P1Point::infinity(), 1});
  odd.points.push_back({1, P1Point::infinity(), -1});
  CHECK_ERROR_CODE(gamma_classes(ctx, odd, 2), ErrorCode::NotDivRDivisor);
}

TEST_CASE("nu of the generator of Phi[3] on split B_3") {
  auto c = fixtures::hyper(7, "x^3-x", "x+2");
  auto ctx = bd_context(c);
  auto f = bd_div_y_minus_g(c, ctx.fiber.working);
  auto deg = f.multidegree(2);
  CHECK(deg == IntVector{3, -3});
  // deg div(y - g) = -3 (-1, 1); any representative of the class works.
  std::optional<PhiElement> delta = PhiElement{ctx.phi.project({-1, 1}), {-1, 1}};
  CHECK_FALSE(ctx.phi.is_zero(delta->coords));
  auto row = compute_nu(ctx, *delta, f, 3);
  Embedding emb(c.k, ctx.fiber.working);
  auto h = c.h_bar;
  for (std::size_t i = 0; i < 2; ++i) {
    auto ratio = emb.map(h.eval(c.rational_roots[0]) / h.eval(c.rational_roots[i + 1]));
    CHECK(row.classes[i] == class_of(ctx, i, ratio, 3));
  }
  PhiElement wrong = *delta;
  wrong.multidegree = {-2, 2};
  CHECK_ERROR_CODE(compute_nu(ctx, wrong, f, 3), ErrorCode::DegreeMismatch);

  auto identity = phi_torsion_representatives(ctx.phi, 3).front();
  SpecializedDivisor one;
  CHECK(compute_nu(ctx, identity, one, 3).classes == IntVector{0, 0});
}

TEST_CASE("divisibility verdicts for the canonical class") {
  auto c7 = fixtures::hyper(7, "x^3-x", "x+2");
  auto ctx7 = bd_context(c7);
  auto v7 = divisibility_verdict(ctx7, bd_canonical_divisor(c7, ctx7.fiber.working), 2);
  CHECK(v7.outcome == Outcome::NotDivisible);

  auto c23 = fixtures::hyper(23, "x^3-x", "x+2");
  auto ctx23 = bd_context(c23);
  auto v23 = divisibility_verdict(ctx23, bd_canonical_divisor(c23, ctx23.fiber.working), 2);
  CHECK(v23.outcome == Outcome::Divisible);
  CHECK(v23.witness.has_value());

  auto v1 = divisibility_verdict(ctx7, bd_canonical_divisor(c7, ctx7.fiber.working), 1);
  CHECK(v1.outcome == Outcome::Divisible);

  SpecializedDivisor obstructed;
  obstructed.points.push_back({0, P1Point::infinity(), 1});
  obstructed.points.push_back({1, P1Point::infinity(), 1});
  auto vo = divisibility_verdict(ctx7, obstructed, 3);
  CHECK(vo.outcome == Outcome::NotInPicBracketR);
  CHECK_ERROR_CODE(divisibility_verdict(ctx7, obstructed, 7), ErrorCode::InvalidInput);
}

TEST_CASE("torsion structure examples") {
  auto c = fixtures::hyper(7, "x^3-x", "x+2");
  CHECK(torsion_structure(bd_context(c)) == IntVector{6, 18});
  // nu = 0 splits the extension.
  CHECK(torsion_from_relations({6, 6}, {3}, {{0, 0}}) == IntVector{3, 6, 6});
  // Trivial Phi leaves T(k).
  CHECK(torsion_from_relations({4, 6}, {}, {}) == IntVector{2, 12});
}

TEST_CASE("base-point independence on 500 divisors") {
  std::mt19937_64 rng(301);
  auto pool = instances(rng, 50);
  int cases = 0;
  for (auto& inst : pool) {
    for (int k = 0; k < 10; ++k, ++cases) {
      auto d = fixtures::random_div_r(rng, inst.ctx.fiber, inst.r);
      CHECK(gamma_classes(inst.ctx, d, inst.r) == gamma_classes(inst.ctx_alt, d, inst.r));
    }
    // The alternative base points really differ somewhere.
    bool moved = false;
    for (std::size_t i = 0; i < inst.ctx.systems.size(); ++i)
      for (std::size_t j = 0; j < inst.ctx.systems[i].factors.size(); ++j)
        if (inst.ctx.systems[i].factors[j].base_point != inst.ctx_alt.systems[i].factors[j].base_point) moved = true;
    CHECK(moved);
  }
  CHECK(cases >= 500);
}

TEST_CASE("principal divisors: degree-zero ones evaluate to 1, equal degrees agree") {
  std::mt19937_64 rng(307);
  auto pool = instances(rng, 50);
  int cases = 0;
  for (auto& inst : pool) {
    const auto& ctx = inst.ctx;
    auto zero_rows = sum_of_rows(ctx);
    for (int k = 0; k < 10; ++k, ++cases) {
      SpecializedDivisor principal = zero_rows.scaled(Int(1 + static_cast<int>(rng() % 3)));
      if (inst.hyper) {
        for (int j = 0; j < 3; ++j) {
          auto pts = fixtures::rational_points(ctx.fiber, 0);
          auto p = fixtures::pick(rng, pts);
          // x - a with a off the nodes of both components.
          if (p.infinite) continue;
          bool clash = false;
          for (const auto& n : fixtures::node_points(ctx.fiber, 1))
            if (n == p) clash = true;
          if (clash) continue;
          principal = principal + div_x_minus(p.x).scaled(Int(static_cast<int>(rng() % 5) - 2));
        }
      }
      for (const auto& t : ctx.systems) CHECK(evaluate_cycle(t, principal).is_one());

      // Two principal divisors of the same multidegree.
      IntVector coeffs(ctx.row_functions.size());
      SpecializedDivisor a;
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        a = a + ctx.row_functions[i].scaled(brute::random_int(rng, -2, 2));
      auto b = a + principal;
      for (const auto& t : ctx.systems) CHECK(evaluate_cycle(t, a) == evaluate_cycle(t, b));
    }
  }
  CHECK(cases >= 500);
}

TEST_CASE("nu is additive on Phi[r]") {
  std::mt19937_64 rng(311);
  auto pool = instances(rng, 60);
  int cases = 0;
  for (auto& inst : pool) {
    const auto& ctx = inst.ctx;
    const Int& r = inst.r;
    auto moduli = class_moduli(ctx, r);
    auto reps = phi_torsion_representatives(ctx.phi, r);
    auto noise = sum_of_rows(ctx);
    for (int k = 0; k < 10; ++k, ++cases) {
      const auto& d1 = reps[rng() % reps.size()];
      const auto& d2 = reps[rng() % reps.size()];
      auto target = [&](const IntVector& md) {
        IntVector t(md.size());
        for (std::size_t i = 0; i < md.size(); ++i) t[i] = -r * md[i];
        return t;
      };
      auto f1 = principal_divisor_with_degree(ctx, target(d1.multidegree)) + noise.scaled(Int(static_cast<int>(rng() % 3)));
      auto f2 = principal_divisor_with_degree(ctx, target(d2.multidegree));
      auto row1 = compute_nu(ctx, d1, f1, r);
      auto row2 = compute_nu(ctx, d2, f2, r);
      PhiElement sum;
      sum.coords = ctx.phi.add(d1.coords, d2.coords);
      sum.multidegree.resize(d1.multidegree.size());
      for (std::size_t i = 0; i < sum.multidegree.size(); ++i) sum.multidegree[i] = d1.multidegree[i] + d2.multidegree[i];
      auto row12 = compute_nu(ctx, sum, f1 + f2, r);
      CHECK(mod_vec(row12.classes, moduli) == add_mod(row1.classes, row2.classes, moduli));
    }
  }
  CHECK(cases >= 500);
}

TEST_CASE("orientation flip inverts evaluations and keeps verdicts") {
  std::mt19937_64 rng(313);
  auto pool = instances(rng, 50);
  int cases = 0;
  for (auto& inst : pool) {
    const auto& ctx = inst.ctx;
    std::vector<IntVector> flipped;
    for (const auto& comp : ctx.decomposition.components) {
      IntVector chi = comp.chi;
      for (auto& x : chi) x = -x;
      flipped.push_back(chi);
    }
    auto ctx_neg = make_context(ctx.fiber, flipped, ctx.row_functions);
    auto moduli = class_moduli(ctx, inst.r);
    for (int k = 0; k < 10; ++k, ++cases) {
      auto z = fixtures::random_degree_zero(rng, ctx.fiber);
      for (std::size_t i = 0; i < ctx.generators.size(); ++i) {
        Cycle neg = ctx.generators[i];
        for (auto& x : neg) x = -x;
        auto fwd = evaluate_cycle(build_raw_local_function_system(ctx.fiber, ctx.generators[i]), z);
        auto back = evaluate_cycle(build_raw_local_function_system(ctx.fiber, neg), z);
        CHECK((fwd * back).is_one());
      }
      auto d = fixtures::random_div_r(rng, ctx.fiber, inst.r);
      CHECK(gamma_classes(ctx_neg, d, inst.r) == neg_mod(gamma_classes(ctx, d, inst.r), moduli));
      auto d_any = fixtures::random_divisor(rng, ctx.fiber);
      CHECK(divisibility_verdict(ctx, d_any, inst.r).outcome == divisibility_verdict(ctx_neg, d_any, inst.r).outcome);
    }
  }
  CHECK(cases >= 500);
}

TEST_CASE("verdicts are stable under adding r times a divisor") {
  std::mt19937_64 rng(317);
  auto pool = instances(rng, 30);
  for (auto& inst : pool) {
    for (int k = 0; k < 10; ++k) {
      auto d = fixtures::random_divisor(rng, inst.ctx.fiber);
      auto e = fixtures::random_divisor(rng, inst.ctx.fiber, 2);
      auto v1 = divisibility_verdict(inst.ctx, d, inst.r);
      auto v2 = divisibility_verdict(inst.ctx, d + e.scaled(inst.r), inst.r);
      CHECK(v1.outcome == v2.outcome);
    }
  }
}

TEST_CASE("nu closure rejects incomplete data") {
  auto c = fixtures::hyper(7, "x^3-x", "x+2");
  auto ctx = bd_context(c);
  CHECK_ERROR_CODE(nu_closure(ctx, {}, 3), ErrorCode::IncompleteNuData);
  auto reps = phi_torsion_representatives(ctx.phi, 3);
  std::vector<NuRow> rows;
  for (const auto& e : reps) rows.push_back(compute_nu(ctx, e, 3));
  CHECK(nu_closure(ctx, rows, 3).size() == 3);
}
