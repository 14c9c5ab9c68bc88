#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "degen/descent.hpp"
#include "degen/hyperelliptic.hpp"
#include "degen/report.hpp"

namespace degen {

// XY = ZW and (X - Y)(Z - W)(Z + W) = pi eps, eps a cubic form in X, Y, Z, W.
struct Genus4Input {
  std::uint64_t q = 0;
  bool p_adic = false;
  std::vector<Int> eps;  // 20 coefficients, indexed like cubic_monomials()
  Int r = 2;
  std::uint64_t field_limit = kDefaultFieldLimit;
};

using ProjPoint = std::array<FieldElement, 4>;

struct Genus4Curve {
  Genus4Input input;
  FiniteField k;
  // k itself when -1 is a square in k, else GF(q^2).
  FiniteField working;
  Embedding embed;  // k -> working
  std::vector<FieldElement> eps_bar;  // coefficients in working
  FieldElement i;  // root of x^2 + 1 of smallest index in working
  bool i_rational = false;
};

// CharTooSmall; EpsVanishesAtNode (one entry per vanishing node); InvalidInput.
std::vector<HypothesisViolation> check_genus4(const Genus4Input& in);
Genus4Curve validate_genus4(const Genus4Input& in);

FieldElement eval_eps(const Genus4Curve& c, const ProjPoint& pt);
// The six nodes [1:1:1:1], [-1:-1:1:1], [i:i:-1:1], [-i:-i:-1:1], [1:0:0:0], [0:1:0:0].
std::vector<ProjPoint> genus4_nodes(const Genus4Curve& c);

// Rows of the loop-evaluation table, in this order.
const std::vector<std::string>& genus4_table_rows();

struct Genus4Table {
  FiniteField field;
  std::vector<std::array<FieldElement, 4>> values;  // per row, gamma_1 .. gamma_4
};

// Closed forms in eps at the nodes. gamma_4 is the gamma_3 formula evaluated at -i.
// The gamma_1 entries carry the sign that direct evaluation produces; literal = true
// flips them to the opposite convention (a factor -1 in rows 2, 4, 6, 7, 8).
Genus4Table genus4_table_closed(const Genus4Curve& c, bool literal = false);
// Evaluation of the fixed local functions on the specialized divisors, using
// resultants for the clusters of points over extensions.
Genus4Table genus4_table_direct(const Genus4Curve& c);

// Components 0 = C_XY (t = X/W), 1 = C_ZW (x = X/Z), 2 = C_-ZW (b = X/W).
FiberModel genus4_fiber(const Genus4Curve& c);

enum class Genus4Divisor { XPlusY, ZMinusW, ZPlusW, XMinusY };
SpecializedDivisor genus4_divisor(const Genus4Curve& c, Genus4Divisor which);
// Loops e0 - e1, e5 - e4, e0 + e5 + e2, e0 + e5 + e3 as edge vectors.
std::vector<Cycle> genus4_loops();
DescentContext genus4_context(const Genus4Curve& c, int base_point_rank = 0);

ClosedVerdict genus4_theta(const Genus4Curve& c);
ClosedVerdict genus4_cuberoot(const Genus4Curve& c);
// Engine verdict on div(X + Y) for r = 2 and div(Z - W) for r = 3; other r use div(X + Y).
ClosedVerdict genus4_root_engine(const Genus4Curve& c, const Int& r);

TorsionResult genus4_torsion(const Genus4Curve& c);
TorsionResult genus4_torsion_engine(const Genus4Curve& c);

FamilyReport genus4_report(const Genus4Input& in);

}  // namespace degen
