#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "degen/finite_field.hpp"
#include "degen/smith.hpp"

namespace degen {

inline constexpr int kMaxFrobeniusOrder = 64;
inline constexpr std::uint64_t kDefaultEnumerationLimit = 1000000;

// Character lattice Z^g with Frobenius acting by v -> F v; column j of F holds
// the coordinates of the image of the j-th basis character.
struct CharacterLattice {
  int rank = 0;
  IntMatrix frobenius;
  std::string label;
};

// Errors: InvalidLattice (shape or det != +-1); FrobeniusOrderExceeded.
CharacterLattice make_lattice(const IntMatrix& frobenius, std::string label = "");
CharacterLattice split_lattice(int g);
// Weil restriction of G_m from the degree-g extension: cyclic shift of the basis.
CharacterLattice norm_lattice(int g);
// Frobenius is the companion matrix of a monic integer polynomial (low-to-high).
CharacterLattice companion_lattice(const std::vector<Int>& poly, std::string label = "");

// Smallest N >= 1 with F^N = I.
int frobenius_order(const CharacterLattice& lattice);

// Monic characteristic polynomial, coefficients low-to-high.
std::vector<Int> frobenius_char_poly(const CharacterLattice& lattice);
Int eval_int_poly(const std::vector<Int>& poly, const Int& x);
std::string int_poly_to_string(const std::vector<Int>& poly);

// f(q) = #T(k).
Int torus_order(const CharacterLattice& lattice, std::uint64_t q);

// chi generates a principal summand; rank is the dimension of its Frobenius span and
// relation is the monic integer polynomial of that degree annihilating chi.
struct PrincipalComponent {
  IntVector chi;
  int rank = 0;
  std::vector<Int> relation;
};

struct PrincipalDecomposition {
  std::vector<PrincipalComponent> components;
};

// Computes the Krylov rank and relation polynomial of chi.
PrincipalComponent make_component(const CharacterLattice& lattice, const IntVector& chi);
PrincipalDecomposition make_decomposition(const CharacterLattice& lattice, const std::vector<IntVector>& chis);

struct DecompositionCheck {
  bool ok = false;
  // Rows are F^j chi_i, components in order, j ascending.
  IntMatrix basis;
  Int det = 0;
  std::string reason;
};

DecompositionCheck verify_principal_decomposition(const CharacterLattice& lattice,
                                                  const PrincipalDecomposition& decomposition);

// Cyclic group mu_n inside its smallest host GF(q^s).
struct MuGroup {
  Int order;
  int s = 1;
  FiniteField host;
  FieldElement generator;
};

// Errors: InvalidInput when gcd(order, q) != 1; SizeLimitExceeded when the host is too big.
MuGroup mu_group_of_order(const Int& order, std::uint64_t q, std::uint64_t limit = kDefaultFieldLimit);
MuGroup mu_group(const PrincipalComponent& component, std::uint64_t q, std::uint64_t limit = kDefaultFieldLimit);
// mu_order inside a given field W; order must divide #W - 1.
MuGroup mu_group_in(const FiniteField& field, const Int& order);

// All equivariant homomorphisms X(T) -> GF(q^N)^x, N the Frobenius order, held as
// exponent vectors of a fixed primitive element omega on the lattice basis.
struct RationalPoints {
  FiniteField host;
  FieldElement omega;
  std::int64_t modulus = 1;  // #host - 1
  IntVector invariants;  // group structure, cyclic factors (1s dropped)
  std::vector<std::vector<std::int64_t>> logs;

  std::size_t size() const { return logs.size(); }
  // Value of the point on the character with coordinates chi.
  FieldElement evaluate(std::size_t point, const IntVector& chi) const;
};

// Errors: EnumerationLimitExceeded; SizeLimitExceeded for the host field.
RationalPoints enumerate_rational_points(const CharacterLattice& lattice, std::uint64_t q,
                                         std::uint64_t enumeration_limit = kDefaultEnumerationLimit,
                                         std::uint64_t field_limit = kDefaultFieldLimit);

// Invariant factors (1s dropped) of a finite abelian group given by cyclic orders.
IntVector abelian_invariants(const IntVector& cyclic_orders);

}  // namespace degen
