#include "degen/dual_graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "degen/error.hpp"

namespace degen {

namespace {

std::vector<int> identity_perm(std::size_t n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_permutation(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

Int mod_pos(const Int& a, const Int& n) {
  Int r = a % n;
  return r < 0 ? Int(r + n) : r;
}

}  // namespace

DualGraph make_graph(int num_vertices, std::vector<Edge> edges, std::vector<int> vertex_perm,
                     std::vector<int> edge_perm) {
  if (num_vertices < 1) throw Error(ErrorCode::InvalidGraph, "graph needs a vertex");
  DualGraph g;
  g.num_vertices = num_vertices;
  g.edges = std::move(edges);
  for (const auto& e : g.edges) {
    if (e.tail < 0 || e.head < 0 || e.tail >= num_vertices || e.head >= num_vertices) {
      throw Error(ErrorCode::InvalidGraph, "edge endpoint out of range");
    }
    if (e.tail == e.head) throw Error(ErrorCode::InvalidGraph, "self-intersecting component not supported");
  }
  g.vertex_perm = vertex_perm.empty() ? identity_perm(num_vertices) : std::move(vertex_perm);
  g.edge_perm = edge_perm.empty() ? identity_perm(g.edges.size()) : std::move(edge_perm);
  if (g.vertex_perm.size() != static_cast<std::size_t>(num_vertices) || !is_permutation(g.vertex_perm) ||
      g.edge_perm.size() != g.edges.size() || !is_permutation(g.edge_perm)) {
    throw Error(ErrorCode::InvalidGraph, "Galois action is not a permutation");
  }
  g.edge_sign.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& src = g.edges[e];
    const Edge& dst = g.edges[g.edge_perm[e]];
    int t = g.vertex_perm[src.tail], h = g.vertex_perm[src.head];
    if (dst.tail == t && dst.head == h) {
      g.edge_sign[e] = 1;
    } else if (dst.tail == h && dst.head == t) {
      g.edge_sign[e] = -1;
    } else {
      throw Error(ErrorCode::InvalidGraph, "Galois action does not respect incidence at edge " + std::to_string(e));
    }
  }
  // Connectivity.
  std::vector<int> parent = identity_perm(num_vertices);
  int parts = num_vertices;
  for (const auto& e : g.edges) {
    int a = find_root(parent, e.tail), b = find_root(parent, e.head);
    if (a != b) {
      parent[a] = b;
      --parts;
    }
  }
  if (parts != 1) throw Error(ErrorCode::Disconnected, "dual graph is disconnected");
  // Order of the signed action.
  Cycle probe(g.edges.size());
  for (std::size_t e = 0; e < probe.size(); ++e) probe[e] = static_cast<long>(e + 1);
  std::vector<int> vp = g.vertex_perm;
  Cycle cur = apply_galois(g, probe);
  int order = 1;
  while (cur != probe || vp != identity_perm(num_vertices)) {
    cur = apply_galois(g, cur);
    std::vector<int> next(vp.size());
    for (std::size_t i = 0; i < vp.size(); ++i) next[i] = g.vertex_perm[vp[i]];
    vp = next;
    if (++order > kMaxFrobeniusOrder) throw Error(ErrorCode::FrobeniusOrderExceeded, "Galois order too large");
  }
  g.galois_order = order;
  return g;
}

DualGraph banana_graph(int d, std::vector<int> edge_perm) {
  if (d < 1) throw Error(ErrorCode::InvalidGraph, "banana graph needs an edge");
  std::vector<Edge> edges;
  for (int j = 0; j < d; ++j) edges.push_back({0, 1, "e" + std::to_string(j)});
  return make_graph(2, std::move(edges), {0, 1}, std::move(edge_perm));
}

bool is_cycle(const DualGraph& graph, const Cycle& c) {
  if (c.size() != graph.edges.size()) return false;
  IntVector boundary(graph.num_vertices, 0);
  for (std::size_t e = 0; e < c.size(); ++e) {
    boundary[graph.edges[e].head] += c[e];
    boundary[graph.edges[e].tail] -= c[e];
  }
  return std::all_of(boundary.begin(), boundary.end(), [](const Int& v) { return v == 0; });
}

Cycle apply_galois(const DualGraph& graph, const Cycle& c) {
  Cycle out(c.size(), 0);
  for (std::size_t e = 0; e < c.size(); ++e) out[graph.edge_perm[e]] += graph.edge_sign[e] * c[e];
  return out;
}

Cycle norm_cycle(const DualGraph& graph, const Cycle& c) {
  Cycle sum = c;
  Cycle cur = apply_galois(graph, c);
  while (cur != c) {
    for (std::size_t e = 0; e < sum.size(); ++e) sum[e] += cur[e];
    cur = apply_galois(graph, cur);
  }
  return sum;
}

IntVector H1Basis::coordinates(const Cycle& c) const {
  IntVector out;
  out.reserve(cotree_edges.size());
  for (int e : cotree_edges) out.push_back(c[e]);
  return out;
}

Cycle H1Basis::cycle_of(const IntVector& coords) const {
  Cycle out(tree_edges.size() + cotree_edges.size(), 0);
  for (std::size_t j = 0; j < cycles.size(); ++j) {
    for (std::size_t e = 0; e < out.size(); ++e) out[e] += coords[j] * cycles[j][e];
  }
  return out;
}

H1Basis h1_basis(const DualGraph& graph) {
  const int v = graph.num_vertices;
  const std::size_t ne = graph.edges.size();
  H1Basis h;
  std::vector<int> parent = identity_perm(v);
  std::vector<std::vector<std::pair<int, int>>> adj(v);  // (neighbor, edge)
  for (std::size_t e = 0; e < ne; ++e) {
    const Edge& ed = graph.edges[e];
    int a = find_root(parent, ed.tail), b = find_root(parent, ed.head);
    if (a != b) {
      parent[a] = b;
      h.tree_edges.push_back(static_cast<int>(e));
      adj[ed.tail].emplace_back(ed.head, static_cast<int>(e));
      adj[ed.head].emplace_back(ed.tail, static_cast<int>(e));
    } else {
      h.cotree_edges.push_back(static_cast<int>(e));
    }
  }
  if (h.tree_edges.size() != static_cast<std::size_t>(v - 1)) {
    throw Error(ErrorCode::Disconnected, "dual graph is disconnected");
  }
  for (int e : h.cotree_edges) {
    const Edge& ed = graph.edges[e];
    // Tree path from head back to tail.
    std::vector<int> via(v, -1), prev(v, -1);
    std::vector<bool> seen(v, false);
    std::queue<int> bfs;
    bfs.push(ed.head);
    seen[ed.head] = true;
    while (!bfs.empty()) {
      int x = bfs.front();
      bfs.pop();
      for (auto [y, te] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = true;
        prev[y] = x;
        via[y] = te;
        bfs.push(y);
      }
    }
    Cycle c(ne, 0);
    c[e] = 1;
    for (int x = ed.tail; x != ed.head; x = prev[x]) {
      // Walking prev[x] -> x along edge via[x].
      const Edge& te = graph.edges[via[x]];
      c[via[x]] += (te.tail == prev[x] && te.head == x) ? 1 : -1;
    }
    h.cycles.push_back(std::move(c));
  }
  const std::size_t g = h.cycles.size();
  IntMatrix f = zero_matrix(g, g);
  for (std::size_t j = 0; j < g; ++j) {
    IntVector col = h.coordinates(apply_galois(graph, h.cycles[j]));
    for (std::size_t i = 0; i < g; ++i) f[i][j] = col[i];
  }
  h.lattice = make_lattice(f, "H1 of dual graph");
  return h;
}

IntMatrix intersection_matrix(const DualGraph& graph) {
  IntMatrix m = zero_matrix(graph.num_vertices, graph.num_vertices);
  for (const auto& e : graph.edges) {
    m[e.tail][e.head] += 1;
    m[e.head][e.tail] += 1;
    m[e.tail][e.tail] -= 1;
    m[e.head][e.head] -= 1;
  }
  return m;
}

void validate_intersection_matrix(const IntMatrix& m) {
  const std::size_t v = m.size();
  if (v == 0) throw Error(ErrorCode::InvalidMatrix, "empty intersection matrix");
  for (std::size_t i = 0; i < v; ++i) {
    if (m[i].size() != v) throw Error(ErrorCode::InvalidMatrix, "intersection matrix must be square");
    Int sum = 0;
    for (std::size_t j = 0; j < v; ++j) {
      sum += m[i][j];
      if (m[i][j] != m[j][i]) throw Error(ErrorCode::InvalidMatrix, "intersection matrix must be symmetric");
      if (i != j && m[i][j] < 0) throw Error(ErrorCode::InvalidMatrix, "off-diagonal entries must be nonnegative");
    }
    if (sum != 0) throw Error(ErrorCode::InvalidMatrix, "row " + std::to_string(i) + " does not sum to zero");
    if (v > 1 && m[i][i] >= 0) throw Error(ErrorCode::InvalidMatrix, "diagonal entries must be negative");
  }
}

ComponentGroup component_group(const IntMatrix& m) {
  validate_intersection_matrix(m);
  ComponentGroup phi;
  phi.v = static_cast<int>(m.size());
  IntMatrix r = zero_matrix(m.size(), m.size() - 1);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j + 1 < m.size(); ++j) r[i][j] = m[i][j];
  }
  phi.snf = smith_normal_form(r);
  if (phi.snf.rank != m.size() - 1) throw Error(ErrorCode::InvalidMatrix, "intersection matrix of a disconnected fiber");
  for (std::size_t k = 0; k < phi.snf.diagonal.size(); ++k) {
    const Int& d = phi.snf.diagonal[k];
    if (d == 1) continue;
    phi.invariants.push_back(d);
    phi.slots.push_back(k);
    phi.order *= d;
  }
  return phi;
}

IntVector ComponentGroup::project(const IntVector& multidegree) const {
  if (multidegree.size() != static_cast<std::size_t>(v)) throw Error(ErrorCode::InvalidInput, "multidegree has wrong length");
  Int total = 0;
  for (const auto& x : multidegree) total += x;
  if (total != 0) throw Error(ErrorCode::NonzeroMultidegree, "component group needs total degree zero");
  IntVector x(multidegree.begin(), multidegree.end() - 1);
  IntVector y = x.empty() ? IntVector{} : vec_mat(x, snf.V);
  IntVector out;
  for (std::size_t k = 0; k < slots.size(); ++k) out.push_back(mod_pos(y[slots[k]], invariants[k]));
  return out;
}

IntVector ComponentGroup::representative(const IntVector& coords) const {
  IntVector out(v, 0);
  Int total = 0;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    for (int j = 0; j + 1 < v; ++j) out[j] += coords[k] * snf.V_inv[slots[k]][j];
  }
  for (int j = 0; j + 1 < v; ++j) total += out[j];
  out[v - 1] = -total;
  return out;
}

bool ComponentGroup::is_zero(const IntVector& coords) const {
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (mod_pos(coords[k], invariants[k]) != 0) return false;
  }
  return true;
}

IntVector ComponentGroup::add(const IntVector& a, const IntVector& b) const {
  IntVector out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = mod_pos(a[k] + b[k], invariants[k]);
  return out;
}

IntVector ComponentGroup::scale(const IntVector& a, const Int& s) const {
  IntVector out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = mod_pos(a[k] * s, invariants[k]);
  return out;
}

Int ComponentGroup::element_order(const IntVector& coords) const {
  Int order = 1;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    Int c = mod_pos(coords[k], invariants[k]);
    Int ord = invariants[k] / int_gcd(c, invariants[k]);
    order = order / int_gcd(order, ord) * ord;
  }
  return order;
}

std::vector<PhiElement> phi_torsion_representatives(const ComponentGroup& phi, const Int& r) {
  if (r < 1) throw Error(ErrorCode::InvalidInput, "r must be positive");
  const std::size_t n = phi.invariants.size();
  std::vector<Int> step(n), count(n);
  for (std::size_t k = 0; k < n; ++k) {
    Int g = int_gcd(phi.invariants[k], r);
    count[k] = g;
    step[k] = phi.invariants[k] / g;
  }
  std::vector<PhiElement> out;
  IntVector digits(n, 0);
  for (;;) {
    IntVector coords(n);
    for (std::size_t k = 0; k < n; ++k) coords[k] = digits[k] * step[k];
    out.push_back({coords, phi.representative(coords)});
    std::size_t k = 0;
    while (k < n && ++digits[k] == count[k]) digits[k++] = 0;
    if (k == n) break;
  }
  return out;
}

std::optional<IntVector> fibral_lattice_witness(const IntVector& deg, const Int& r, const IntMatrix& m) {
  if (r < 1) throw Error(ErrorCode::InvalidInput, "r must be positive");
  const std::size_t v = m.size();
  if (deg.size() != v) throw Error(ErrorCode::InvalidInput, "multidegree has wrong length");
  // t M = deg (mod r)  <=>  D s = U deg (mod r) with M^T = U^-1 D V^-1, t = V s.
  SmithForm s = smith_normal_form(transpose(m));
  IntVector rhs = mat_vec(s.U, deg);
  IntVector sol(v, 0);
  for (std::size_t k = 0; k < v; ++k) {
    Int d = k < s.diagonal.size() ? mod_pos(s.diagonal[k], r) : Int(0);
    Int b = mod_pos(rhs[k], r);
    Int g = int_gcd(d, r);  // gcd(0, r) = r
    if (b % g != 0) return std::nullopt;
    Int rr = r / g;
    if (rr == 1) continue;
    Int dd = (d / g) % rr;
    Int inv = Int(inv_mod(dd.convert_to<std::int64_t>(), rr.convert_to<std::int64_t>()));
    sol[k] = mod_pos((b / g) * inv, rr);
  }
  return mat_vec(s.V, sol);
}

bool fibral_lattice_membership(const IntVector& deg, const Int& r, const IntMatrix& m) {
  return fibral_lattice_witness(deg, r, m).has_value();
}

PrincipalDecomposition banana_decomposition(const DualGraph& graph, const H1Basis& h1) {
  const int d = static_cast<int>(graph.edges.size());
  if (graph.num_vertices != 2 || graph.vertex_perm != std::vector<int>{0, 1}) {
    throw Error(ErrorCode::NotSupported, "not a banana graph with fixed components");
  }
  // Edge orbits, each listed from its smallest member.
  std::vector<int> orbit_of(d, -1);
  std::vector<std::vector<int>> orbits;
  for (int e = 0; e < d; ++e) {
    if (orbit_of[e] >= 0) continue;
    std::vector<int> orb;
    for (int x = e; orbit_of[x] < 0; x = graph.edge_perm[x]) {
      orbit_of[x] = static_cast<int>(orbits.size());
      orb.push_back(x);
    }
    orbits.push_back(orb);
  }
  auto edge_cycle = [&](int a, int b) {
    Cycle c(d, 0);
    c[a] += 1;
    c[b] -= 1;
    return h1.coordinates(c);
  };
  std::vector<IntVector> chis;
  int fixed = -1;
  for (const auto& orb : orbits) {
    if (orb.size() == 1) {
      fixed = orb[0];
      break;
    }
  }
  if (fixed >= 0) {
    for (const auto& orb : orbits) {
      if (orb.size() == 1 && orb[0] == fixed) continue;
      chis.push_back(edge_cycle(orb[0], fixed));
    }
  } else if (orbits.size() == 1) {
    chis.push_back(edge_cycle(orbits[0][1], orbits[0][0]));
  } else {
    throw Error(ErrorCode::NotSupported, "no Galois-fixed node and more than one node orbit");
  }
  PrincipalDecomposition dec = make_decomposition(h1.lattice, chis);
  auto check = verify_principal_decomposition(h1.lattice, dec);
  if (!check.ok) throw Error(ErrorCode::NotPrincipal, check.reason);
  return dec;
}

}  // namespace degen
