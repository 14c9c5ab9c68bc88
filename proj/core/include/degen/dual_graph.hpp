#pragma once

#include <optional>
#include <string>
#include <vector>

#include "degen/smith.hpp"
#include "degen/torus.hpp"

namespace degen {

struct Edge {
  int tail = 0;
  int head = 0;
  std::string label;
};

// Components are vertices, nodes are edges. The Galois generator permutes both;
// edge_sign[e] is -1 when sigma reverses the orientation of e.
struct DualGraph {
  int num_vertices = 0;
  std::vector<Edge> edges;
  std::vector<int> vertex_perm;
  std::vector<int> edge_perm;
  std::vector<int> edge_sign;
  int galois_order = 1;
};

// Identity permutations when the vectors are empty.
// Errors: InvalidGraph (bad indices, loops, incompatible permutation); Disconnected.
DualGraph make_graph(int num_vertices, std::vector<Edge> edges, std::vector<int> vertex_perm = {},
                     std::vector<int> edge_perm = {});

// Two vertices joined by d edges, all oriented 0 -> 1; vertices are fixed.
DualGraph banana_graph(int d, std::vector<int> edge_perm = {});

// Edge vectors with zero boundary.
using Cycle = IntVector;

bool is_cycle(const DualGraph& graph, const Cycle& c);
Cycle apply_galois(const DualGraph& graph, const Cycle& c);
// Sum of the Galois orbit of c over its minimal period.
Cycle norm_cycle(const DualGraph& graph, const Cycle& c);

struct H1Basis {
  std::vector<Cycle> cycles;   // one per cotree edge
  std::vector<int> tree_edges;
  std::vector<int> cotree_edges;
  CharacterLattice lattice;    // Frobenius on cycle coordinates

  // Coordinates of a cycle: its values on the cotree edges.
  IntVector coordinates(const Cycle& c) const;
  Cycle cycle_of(const IntVector& coords) const;
};

// Spanning tree grown greedily in edge-index order. Errors: Disconnected.
H1Basis h1_basis(const DualGraph& graph);

// Intersection matrix of a chain of P^1 components meeting transversally at the nodes.
IntMatrix intersection_matrix(const DualGraph& graph);
// Errors: InvalidMatrix unless symmetric, zero row sums, nonnegative off-diagonal.
void validate_intersection_matrix(const IntMatrix& m);

// Z^v_0 / rowspan(M), with v-th coordinate eliminated.
struct ComponentGroup {
  int v = 0;
  IntVector invariants;  // nontrivial invariant factors, ascending by divisibility
  Int order = 1;
  SmithForm snf;         // of M with the last column dropped
  std::vector<std::size_t> slots;  // diagonal positions of the nontrivial factors

  // Coordinates in the product of Z/invariants; total degree must vanish.
  IntVector project(const IntVector& multidegree) const;
  // Degree-zero multidegree with the given coordinates.
  IntVector representative(const IntVector& coords) const;
  bool is_zero(const IntVector& coords) const;
  IntVector add(const IntVector& a, const IntVector& b) const;
  IntVector scale(const IntVector& a, const Int& k) const;
  Int element_order(const IntVector& coords) const;
};

ComponentGroup component_group(const IntMatrix& m);

struct PhiElement {
  IntVector coords;
  IntVector multidegree;  // degree zero
};

// All of Phi[r], identity first.
std::vector<PhiElement> phi_torsion_representatives(const ComponentGroup& phi, const Int& r);

// True iff deg lies in r Z^v + rowspan(M).
bool fibral_lattice_membership(const IntVector& deg, const Int& r, const IntMatrix& m);
// An integer vector t with deg - t M in r Z^v, when one exists.
std::optional<IntVector> fibral_lattice_witness(const IntVector& deg, const Int& r, const IntMatrix& m);

// Principal decomposition of the banana-graph cycle lattice: with a Galois-fixed
// edge e0, one generator e_i - e0 per orbit of the other edges; with a single
// orbit, the generator e1 - e0. Errors: NotSupported otherwise.
PrincipalDecomposition banana_decomposition(const DualGraph& graph, const H1Basis& h1);

}  // namespace degen
