#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degen/descent.hpp"
#include "degen/error.hpp"
#include "degen/poly.hpp"
#include "degen/report.hpp"

namespace degen {

// y^2 = g(x)^2 + pi h(x) over a local field with residue field GF(q).
struct HyperellipticInput {
  std::uint64_t q = 0;
  bool p_adic = false;  // K = Q_p, so q = p
  std::vector<Int> g;   // monic, low-to-high
  std::vector<Int> h;
  Int r = 2;
  int alpha0_rank = 0;  // which rational root of g-bar plays alpha_0, in index order
  std::uint64_t field_limit = kDefaultFieldLimit;
};

struct HypothesisViolation {
  ErrorCode code;
  std::string message;
};

// Reduction data for an input that satisfies the hypotheses.
struct HyperellipticCurve {
  HyperellipticInput input;
  FiniteField k;
  int d = 0;
  int e = 0;  // degree of h-bar
  Poly g_bar;
  Poly h_bar;
  std::vector<PolyFactor> factors;         // of g-bar, canonical order
  std::vector<FieldElement> rational_roots;  // alpha_0 first, then ascending index
  // Edge j belongs to factor block_of[j]; edges of one block form a Frobenius cycle.
  std::vector<int> block_of;
};

// All violated hypotheses, empty when the input is valid: CharDividesTwoD,
// NotSeparableReduction, CommonFactorGH, DegreeTooLarge, InvalidInput (shape of g, h, q).
std::vector<HypothesisViolation> check_hyperelliptic(const HyperellipticInput& in);
// Throws the first violation.
HyperellipticCurve validate_hyperelliptic(const HyperellipticInput& in);

// B_d with Frobenius cycling the roots of each factor; edge j is the node at alpha_j.
DualGraph bd_graph(const HyperellipticCurve& c);
// Vertex 0 is C^+ (containing infinity^+), vertex 1 is C^-; both use the coordinate x.
// Node coordinates lie in the splitting field of g-bar. Errors: SizeLimitExceeded.
FiberModel bd_fiber(const HyperellipticCurve& c);
// div(y - g) specialized: roots of h-bar on C^+, (d - e) infinity^+, -d infinity^-.
SpecializedDivisor bd_div_y_minus_g(const HyperellipticCurve& c, const FiniteField& working);
// Canonical representative: roots of h-bar on C^+, (2d - 2 - e) infinity^+, -2 infinity^-.
SpecializedDivisor bd_canonical_divisor(const HyperellipticCurve& c, const FiniteField& working);
// Errors: NotSupported when the torus has no principal decomposition on the banana graph.
DescentContext bd_context(const HyperellipticCurve& c, int base_point_rank = 0);

struct ClosedVerdict {
  Truth value = Truth::Undetermined;
  std::string path;
};

// Closed-form rationality of theta characteristics.
ClosedVerdict theta_bd(const HyperellipticCurve& c);
// Engine verdict for r-divisibility of the canonical class; Undetermined when the
// decomposition is unsupported or the splitting field is too large.
ClosedVerdict root_bd_engine(const HyperellipticCurve& c, const Int& r);

struct TorsionResult {
  std::optional<IntVector> invariants;  // nullopt when undetermined
  std::string path;
};

// Closed form where one exists (d = 3, or g-bar split with d | q - 1), else the engine.
TorsionResult torsion_bd(const HyperellipticCurve& c);
TorsionResult torsion_bd_engine(const HyperellipticCurve& c);

// Validation, verdicts, torsion and engine cross-checks. Never throws on hypothesis
// violations; they are recorded in the report.
FamilyReport hyperelliptic_report(const HyperellipticInput& in);

}  // namespace degen
