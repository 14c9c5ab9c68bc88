#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "degen/descent.hpp"
#include "degen/dual_graph.hpp"
#include "degen/torus.hpp"

// Brute-force ground truth for small fields. Shares only the field layer and the
// graph/lattice data with the descent engine; nu images are the one shared input.
namespace degen {

inline constexpr std::uint64_t kOracleLimit = 1000000;

using TorusPoint = std::vector<FieldElement>;  // values on the lattice basis

struct EnumeratedTorus {
  FiniteField host;
  std::uint64_t q = 0;
  CharacterLattice lattice;
  std::vector<TorusPoint> points;  // identity first
  IntVector invariants;            // invariant factors of the point group

  std::size_t size() const { return points.size(); }
  bool contains(const TorusPoint& x) const;
  TorusPoint identity() const;
  TorusPoint multiply(const TorusPoint& a, const TorusPoint& b) const;
  TorusPoint power(const TorusPoint& a, const Int& e) const;
  // Value on an arbitrary character.
  FieldElement evaluate(const TorusPoint& x, const IntVector& chi) const;
};

// Every x: Z^g -> host^x with x(F chi) = x(chi)^q. Values on a basis vector are
// either forced by an earlier choice or run over mu_n, n = gcd(#T(k), #host - 1).
// host defaults to GF(q^N), N the Frobenius order, and must contain it.
// Errors: TooLarge when #T(k) or the search exceeds limit.
EnumeratedTorus enumerate_torus(const CharacterLattice& lattice, std::uint64_t q,
                                std::optional<FiniteField> host = std::nullopt,
                                std::uint64_t limit = kOracleLimit);
// Torus with character group H_1 of the graph.
EnumeratedTorus enumerate_torus(const DualGraph& graph, std::uint64_t q,
                                std::optional<FiniteField> host = std::nullopt,
                                std::uint64_t limit = kOracleLimit);

// Value of the cycle on a divisor with zero multidegree, from rational functions
// f_v on each component with div f_v = D restricted to C_v: the product over edges
// of (f_head / f_tail at the node) raised to the cycle coefficient.
// Errors: NonzeroMultidegree; DivisorMeetsNode.
FieldElement chain_evaluate(const Cycle& gamma, const SpecializedDivisor& d, const FiberModel& fiber);
// chain_evaluate on every basis cycle of h1.
TorusPoint chain_point(const H1Basis& h1, const SpecializedDivisor& d, const FiberModel& fiber);

// Whether x lies in the subgroup generated by r T(k) and nu, by explicit closure.
// Errors: TooLarge when the torus exceeds limit.
bool exhaustive_divisibility(const TorusPoint& x, const Int& r, const std::vector<TorusPoint>& nu,
                             const EnumeratedTorus& torus, std::uint64_t limit = kOracleLimit);

struct OracleVerdict {
  bool geometric_ok = false;  // deg D in r Z^v + M_fib
  bool divisible = false;
  TorusPoint x;               // class of D - r D' in T(k)
  std::vector<TorusPoint> nu;  // one per element of Phi[r]
  std::size_t torus_size = 0;
};

// Decides [D] in r Pic from scratch except for the principal divisors taken from
// the context's row functions. D' and the lifts of Phi[r] use the first rational
// non-node coordinate on each component. Errors: NoRationalBasePoint; TooLarge;
// NotSupported when the working field does not contain the torus host.
OracleVerdict oracle_divisibility(const DescentContext& ctx, const SpecializedDivisor& d, const Int& r,
                                  std::uint64_t limit = kOracleLimit);

}  // namespace degen
