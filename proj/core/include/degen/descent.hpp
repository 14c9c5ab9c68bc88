#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "degen/dual_graph.hpp"
#include "degen/finite_field.hpp"
#include "degen/poly.hpp"
#include "degen/torus.hpp"

namespace degen {

// Point of P^1 in an affine coordinate: an element of the working field, or infinity.
struct P1Point {
  bool infinite = false;
  FieldElement x;

  static P1Point at(const FieldElement& v) { return {false, v}; }
  static P1Point infinity() { return {true, {}}; }
  bool operator==(const P1Point& o) const { return infinite == o.infinite && (infinite || x == o.x); }
  bool operator!=(const P1Point& o) const { return !(*this == o); }
  std::string to_string() const { return infinite ? "inf" : x.to_string(); }
};

// Special fiber made of P^1 components over k, all fixed by Galois. Node
// coordinates live in the working field W, a finite extension of k.
struct FiberModel {
  DualGraph graph;
  FiniteField base;
  FiniteField working;
  // node_coords[e] = {coordinate on the tail component, coordinate on the head component}
  std::vector<std::array<P1Point, 2>> node_coords;
  IntMatrix intersection;
};

// Errors: MissingNodeCoordinates; InvalidGraph when a component is moved by Galois.
void validate_fiber(const FiberModel& fiber);

// Sum of multiplicity * (point) on a component.
struct PointTerm {
  int component = 0;
  P1Point point;
  Int multiplicity = 1;
};

// multiplicity * (sum of the roots of a monic polynomial over W) on a component.
// Keeps conjugate points together without leaving the working field.
struct ClusterTerm {
  int component = 0;
  Poly poly;
  Int multiplicity = 1;
};

struct SpecializedDivisor {
  std::vector<PointTerm> points;
  std::vector<ClusterTerm> clusters;

  IntVector multidegree(int num_components) const;
  SpecializedDivisor operator+(const SpecializedDivisor& o) const;
  SpecializedDivisor operator-(const SpecializedDivisor& o) const;
  SpecializedDivisor scaled(const Int& k) const;
  bool empty() const { return points.empty() && clusters.empty(); }
};

// c * (x - zero) / (x - pole) on one occurrence of a component.
struct MobiusFactor {
  int component = 0;
  int entering_edge = 0;
  int leaving_edge = 0;
  P1Point zero;
  P1Point pole;
  FieldElement scale;
  P1Point base_point;
};

struct LocalFunctionSystem {
  Cycle cycle;
  FiniteField field;
  std::vector<MobiusFactor> factors;  // in walk order
};

// Directed edge occurrences of the closed walks covering a cycle, lowest labels first.
// Each entry is (edge, +1 forward or -1 backward).
std::vector<std::vector<std::pair<int, int>>> closed_walks(const DualGraph& graph, const Cycle& cycle);

// Factors normalized so each value at its base point lies in mu. The base point is
// the candidate of rank base_point_rank among the elements of k in index order
// (then infinity) that differ from both nodes. Errors: MissingNodeCoordinates;
// NoRationalBasePoint; InvalidInput when cycle is not closed.
LocalFunctionSystem build_local_function_system(const FiberModel& fiber, const Cycle& cycle, const MuGroup& mu,
                                                int base_point_rank = 0);
// Unnormalized factors (c = 1).
LocalFunctionSystem build_raw_local_function_system(const FiberModel& fiber, const Cycle& cycle);

FieldElement evaluate_factor(const MobiusFactor& f, const P1Point& pt);
// Errors: DivisorMeetsNode.
FieldElement evaluate_cycle(const LocalFunctionSystem& t, const SpecializedDivisor& d);

// Fiber plus decomposition plus the mu groups inside W.
struct DescentContext {
  FiberModel fiber;
  H1Basis h1;
  PrincipalDecomposition decomposition;
  std::vector<Cycle> generators;  // cycle of each chi_i
  std::vector<MuGroup> mu;        // inside fiber.working
  std::vector<LocalFunctionSystem> systems;
  ComponentGroup phi;
  // row_functions[i] is a principal divisor whose multidegree is row i of M.
  std::vector<SpecializedDivisor> row_functions;
};

// Errors: NotPrincipal; InvalidInput when a mu group does not fit in W.
DescentContext make_context(FiberModel fiber, const std::vector<IntVector>& chis,
                            std::vector<SpecializedDivisor> row_functions, int base_point_rank = 0);

// Classes of gamma_i(D) in mu_i / r mu_i = Z/gcd(r, #mu_i), as discrete logs.
// Errors: NotDivRDivisor; ValueOutsideMu.
Int gamma_class(const DescentContext& ctx, std::size_t component, const SpecializedDivisor& d, const Int& r);
IntVector gamma_classes(const DescentContext& ctx, const SpecializedDivisor& d, const Int& r);
IntVector class_moduli(const DescentContext& ctx, const Int& r);

struct NuRow {
  IntVector delta;    // coordinates in Phi
  IntVector classes;  // per decomposition component
};

// Row for delta from an explicit principal divisor. Errors: DegreeMismatch.
NuRow compute_nu(const DescentContext& ctx, const PhiElement& delta, const SpecializedDivisor& div_f, const Int& r);
// Principal divisor with multidegree target assembled from the row functions.
// Errors: DegreeMismatch when target is not in the row span of M.
SpecializedDivisor principal_divisor_with_degree(const DescentContext& ctx, const IntVector& target);
NuRow compute_nu(const DescentContext& ctx, const PhiElement& delta, const Int& r);

// Additive closure of the rows. Errors: IncompleteNuData when the rows do not
// generate Phi[r]; InvalidInput when they contradict additivity.
std::vector<NuRow> nu_closure(const DescentContext& ctx, const std::vector<NuRow>& rows, const Int& r);

enum class Outcome { Divisible, NotDivisible, NotInPicBracketR, Undetermined };
std::string outcome_name(Outcome o);

struct DescentVerdict {
  Outcome outcome = Outcome::Undetermined;
  std::optional<IntVector> witness;  // delta that succeeded
  IntVector divisor_classes;
  IntVector moduli;
  std::vector<NuRow> table;
  std::string reason;
};

// A divisor with deg(D) in r Z^v + M_fib but not in r Z^v is first moved by a
// principal divisor built from the row functions. Errors: InvalidInput when p | r.
DescentVerdict divisibility_verdict(const DescentContext& ctx, const SpecializedDivisor& d, const Int& r,
                                    const std::vector<NuRow>& nu_rows);
// Same, with nu rows generated from the row functions.
DescentVerdict divisibility_verdict(const DescentContext& ctx, const SpecializedDivisor& d, const Int& r);

// Invariant factors of the extension of Phi(p') by T(k) = sum of mu_i, from the
// relation lattice N_i e_i = 0 and o_k lift_k = sum_i ell_ki e_i.
IntVector torsion_from_relations(const IntVector& torus_orders, const IntVector& phi_orders, const IntMatrix& ell);
IntVector torsion_structure(const DescentContext& ctx);
// Prime-to-p parts of the Phi invariants.
IntVector phi_prime_to_p(const ComponentGroup& phi, std::int64_t p);

}  // namespace degen
