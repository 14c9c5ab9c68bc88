#include <random>

#include "brute.hpp"
#include "fixtures.hpp"

using namespace degen;

namespace {

bool has_violation(const Genus4Input& in, ErrorCode code) {
  for (const auto& v : check_genus4(in))
    if (v.code == code) return true;
  return false;
}

Genus4Input input_of(std::uint64_t q, std::vector<Int> eps) {
  Genus4Input in;
  in.q = q;
  in.eps = std::move(eps);
  return in;
}

Int product(const IntVector& v) {
  Int p = 1;
  for (const auto& x : v) p *= x;
  return p;
}

}  // namespace

TEST_CASE("hypothesis checks") {
  CHECK(check_genus4(input_of(7, fixtures::eps0())).empty());
  CHECK(has_violation(input_of(7, parse_cubic_form("X^3")), ErrorCode::EpsVanishesAtNode));
  CHECK(has_violation(input_of(3, fixtures::eps0()), ErrorCode::CharTooSmall));
  CHECK(has_violation(input_of(7, {1, 2}), ErrorCode::InvalidInput));
  // X^3 vanishes at [0:1:0:0] only.
  int vanishing = 0;
  for (const auto& v : check_genus4(input_of(7, parse_cubic_form("X^3"))))
    if (v.code == ErrorCode::EpsVanishesAtNode) ++vanishing;
  CHECK(vanishing == 1);
}

TEST_CASE("eps_0 at the nodes") {
  auto c = fixtures::genus4(7, fixtures::eps0());
  auto nodes = genus4_nodes(c);
  REQUIRE(nodes.size() == 6);
  CHECK(eval_eps(c, nodes[0]) == c.working.from_int(3));
  CHECK_FALSE(c.i_rational);
  CHECK(c.working.q() == 49);
  CHECK((c.i * c.i + c.working.one()).is_zero());

  auto c13 = fixtures::genus4(13, fixtures::eps0());
  CHECK(c13.i_rational);
  CHECK(c13.i == c13.working.from_int(5));
}

TEST_CASE("loop table for eps_0 over GF(13)") {
  auto c = fixtures::genus4(13, fixtures::eps0());
  auto closed = genus4_table_closed(c);
  auto direct = genus4_table_direct(c);
  CHECK(closed.values == direct.values);
  const auto& w = c.working;
  // Row div Z-W: gamma_2 = eps(1,0,0,0)/eps(0,1,0,0) = 1 and gamma_1 = -eps(1,1,1,1)/eps(-1,-1,1,1) = 3.
  CHECK(closed.values[1][1] == w.one());
  CHECK(closed.values[1][0] == w.from_int(3));
  // The opposite sign convention gives 10 instead.
  CHECK(genus4_table_closed(c, true).values[1][0] == w.from_int(10));
}

TEST_CASE("fixed entries of row div X+Y") {
  std::mt19937_64 rng(503);
  for (std::uint64_t q : {7ull, 11ull, 13ull, 17ull, 49ull}) {
    for (int it = 0; it < 10; ++it) {
      auto c = fixtures::random_genus4(rng, q);
      if (!c) continue;
      auto t = genus4_table_direct(*c);
      const auto& w = c->working;
      CHECK(t.values[0][0] == -w.one());
      CHECK(t.values[0][1] == -w.one());
      CHECK(t.values[0][2] == -c->i);
      CHECK(t.values[0][3] == c->i);
    }
  }
}

TEST_CASE("closed forms equal direct evaluation and the table is multiplicative") {
  std::mt19937_64 rng(509);
  for (std::uint64_t q : {7ull, 11ull, 13ull}) {
    int done = 0;
    while (done < 100) {
      auto c = fixtures::random_genus4(rng, q);
      if (!c) continue;
      ++done;
      auto closed = genus4_table_closed(*c);
      auto t = genus4_table_direct(*c);
      CHECK(closed.values == t.values);
      const auto& v = t.values;
      for (int j = 0; j < 4; ++j) {
        CHECK(v[3][j] == v[1][j] / v[2][j]);
        CHECK(v[4][j] == v[0][j] / v[2][j]);
        CHECK(v[5][j] == v[1][j] / v[0][j]);
        CHECK(v[6][j] == v[1][j] * v[2][j] / v[0][j]);
        CHECK(v[7][j] == v[2][j] * v[2][j] / v[1][j]);
      }
      // gamma_4 is gamma_3 with i replaced by -i: conjugation when i is not in k.
      if (!c->i_rational)
        for (const auto& row : v) CHECK(row[3] == row[2].frobenius(c->k.m()));
    }
  }
}

TEST_CASE("theta characteristics for eps_0") {
  auto c13 = fixtures::genus4(13, fixtures::eps0());
  CHECK(genus4_theta(c13).value == Truth::True);
  CHECK(genus4_root_engine(c13, 2).value == Truth::True);
  auto c7 = fixtures::genus4(7, fixtures::eps0());
  CHECK(genus4_theta(c7).value == Truth::False);
  CHECK(genus4_root_engine(c7, 2).value == Truth::False);
}

TEST_CASE("cube roots of the canonical class") {
  auto c13 = fixtures::genus4(13, fixtures::eps0(), 3);
  CHECK(genus4_cuberoot(c13).value == Truth::False);
  CHECK(genus4_root_engine(c13, 3).value == Truth::False);
  auto c7 = fixtures::genus4(7, fixtures::eps0(), 3);
  CHECK(genus4_cuberoot(c7).value == genus4_root_engine(c7, 3).value);

  std::mt19937_64 rng(521);
  for (std::uint64_t p : {5ull, 17ull, 29ull}) {
    int done = 0;
    while (done < 10) {
      auto c = fixtures::random_genus4(rng, p);
      if (!c) continue;
      ++done;
      CHECK(genus4_cuberoot(*c).value == Truth::True);
    }
  }
}

TEST_CASE("torsion for eps_0") {
  auto c13 = fixtures::genus4(13, fixtures::eps0());
  auto t = genus4_torsion(c13);
  REQUIRE(t.invariants);
  CHECK(*t.invariants == IntVector{12, 12, 24, 72});
  CHECK(product(*t.invariants) == Int(12) * 12 * 12 * 12 * 12);
  auto c7 = fixtures::genus4(7, fixtures::eps0());
  auto t7 = genus4_torsion(c7);
  REQUIRE(t7.invariants);
  CHECK(*t7.invariants == IntVector{6, 12, 288});
}

TEST_CASE("closed-form verdicts and torsion agree with the engine, 100 random eps per field") {
  std::mt19937_64 rng(523);
  for (std::uint64_t q : {7ull, 11ull, 13ull}) {
    int done = 0;
    while (done < 100) {
      auto c = fixtures::random_genus4(rng, q);
      if (!c) continue;
      ++done;
      CAPTURE(q);
      CHECK(genus4_theta(*c).value == genus4_root_engine(*c, 2).value);
      CHECK(genus4_cuberoot(*c).value == genus4_root_engine(*c, 3).value);
      auto t = genus4_torsion(*c);
      auto te = genus4_torsion_engine(*c);
      REQUIRE(t.invariants);
      REQUIRE(te.invariants);
      CHECK(*t.invariants == *te.invariants);
      Int qm1 = Int(q) - 1;
      Int f = c->i_rational ? qm1 * qm1 * qm1 * qm1 : qm1 * qm1 * (Int(q) * q - 1);
      CHECK(product(*t.invariants) == 12 * f);
    }
  }
}

TEST_CASE("the family report") {
  Genus4Input in = input_of(13, fixtures::eps0());
  in.r = 3;
  auto rep = genus4_report(in);
  CHECK(rep.valid);
  CHECK(rep.phi == std::vector<Int>{2, 6});
  REQUIRE(rep.verdicts.count("cube_root"));
  CHECK(rep.verdicts["cube_root"].value == Truth::False);
  CHECK(rep.tables.size() == 8);
  CHECK(rep.torsion == std::vector<Int>{12, 12, 24, 72});
  for (const auto& w : rep.warnings) CHECK(w.find("disagrees") == std::string::npos);

  auto bad = genus4_report(input_of(7, parse_cubic_form("X^3")));
  CHECK_FALSE(bad.valid);
}
