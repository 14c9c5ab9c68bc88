#include "degen/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "degen/error.hpp"

namespace degen {

namespace {

using Key = std::vector<std::uint64_t>;

Key key_of(const TorusPoint& x) {
  Key k;
  k.reserve(x.size());
  for (const auto& v : x) k.push_back(v.index());
  return k;
}

// |det(q I - F)| by fraction-free elimination.
Int char_value(const IntMatrix& f, std::uint64_t q) {
  const std::size_t n = f.size();
  IntMatrix a = f;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? Int(q) : Int(0)) - f[i][j];
  }
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  Int det = n == 0 ? Int(1) : a[n - 1][n - 1] * sign;
  return det < 0 ? Int(-det) : det;
}

struct Search {
  // Constraint j: prod_i y_i^coef[j][i] = 1.
  std::vector<std::vector<std::int64_t>> coef;
  std::vector<FieldElement> candidates;
  FieldElement one;
  std::vector<TorusPoint> found;
  std::uint64_t nodes = 0;
  std::uint64_t limit = 0;

  void run(std::vector<std::optional<FieldElement>> y) {
    if (++nodes > limit) throw Error(ErrorCode::TooLarge, "torus search exceeds the oracle limit");
    const std::size_t g = y.size();
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& row : coef) {
        std::size_t open = 0, last = 0;
        FieldElement known = one;
        for (std::size_t i = 0; i < g; ++i) {
          if (row[i] == 0) continue;
          if (y[i]) {
            known *= y[i]->pow(row[i]);
          } else {
            ++open;
            last = i;
          }
        }
        if (open == 0 && !known.is_one()) return;
        if (open == 1 && (row[last] == 1 || row[last] == -1)) {
          y[last] = row[last] == 1 ? known.inverse() : known;
          changed = true;
        }
      }
    }
    auto free = std::find_if(y.begin(), y.end(), [](const auto& v) { return !v.has_value(); });
    if (free == y.end()) {
      TorusPoint p;
      for (const auto& v : y) p.push_back(*v);
      found.push_back(std::move(p));
      if (found.size() > limit) throw Error(ErrorCode::TooLarge, "torus exceeds the oracle limit");
      return;
    }
    for (const auto& c : candidates) {
      auto next = y;
      next[static_cast<std::size_t>(free - y.begin())] = c;
      run(std::move(next));
    }
  }
};

// Invariant factors from the counts #{x : x^(p^j) = 1}.
IntVector group_invariants(const EnumeratedTorus& t) {
  std::vector<std::vector<int>> exps_by_prime;  // per prime, exponents of cyclic p-parts, descending
  std::vector<std::uint64_t> primes;
  for (auto [p, a] : factor_integer(t.size())) {
    std::vector<std::uint64_t> counts = {1};
    Int pk = 1;
    for (int j = 1; j <= a; ++j) {
      pk *= p;
      std::uint64_t c = 0;
      for (const auto& x : t.points) {
        if (std::all_of(x.begin(), x.end(), [&](const FieldElement& v) { return v.pow(pk).is_one(); })) ++c;
      }
      counts.push_back(c);
    }
    // at_least[j] = number of cyclic factors of order >= p^j.
    std::vector<int> at_least(a + 2, 0);
    for (int j = 1; j <= a; ++j) {
      std::uint64_t ratio = counts[j] / counts[j - 1];
      int e = 0;
      while (ratio > 1) {
        ratio /= p;
        ++e;
      }
      at_least[j] = e;
    }
    std::vector<int> exps;
    for (int j = a; j >= 1; --j) {
      for (int c = 0; c < at_least[j] - at_least[j + 1]; ++c) exps.push_back(j);
    }
    primes.push_back(p);
    exps_by_prime.push_back(exps);
  }
  std::size_t width = 0;
  for (const auto& e : exps_by_prime) width = std::max(width, e.size());
  IntVector out;
  for (std::size_t s = 0; s < width; ++s) {
    Int d = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (s < exps_by_prime[i].size()) {
        for (int c = 0; c < exps_by_prime[i][s]; ++c) d *= primes[i];
      }
    }
    out.push_back(d);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// f_v at a node: f_v is the product of (t - a)^m over the finite part of D on C_v.
// Zero multidegree makes f_v(infinity) = 1 when infinity is not in the support.
FieldElement component_value(const SpecializedDivisor& d, int component, const P1Point& at, const FieldElement& one) {
  FieldElement acc = one;
  for (const auto& t : d.points) {
    if (t.component != component || t.multiplicity == 0) continue;
    if (t.point.infinite) {
      if (at.infinite) throw Error(ErrorCode::DivisorMeetsNode, "divisor meets a node at infinity");
      continue;
    }
    if (at.infinite) continue;
    FieldElement v = at.x - t.point.x;
    if (v.is_zero()) throw Error(ErrorCode::DivisorMeetsNode, "divisor meets a node");
    acc *= v.pow(t.multiplicity);
  }
  for (const auto& c : d.clusters) {
    if (c.component != component || c.multiplicity == 0 || at.infinite) continue;
    FieldElement v = c.poly.eval(at.x);
    if (v.is_zero()) throw Error(ErrorCode::DivisorMeetsNode, "divisor meets a node");
    acc *= v.pow(c.multiplicity);
  }
  return acc;
}

P1Point rational_point(const FiberModel& fiber, const Embedding& embed, int component) {
  std::vector<P1Point> nodes;
  for (std::size_t e = 0; e < fiber.graph.edges.size(); ++e) {
    if (fiber.graph.edges[e].tail == component) nodes.push_back(fiber.node_coords[e][0]);
    if (fiber.graph.edges[e].head == component) nodes.push_back(fiber.node_coords[e][1]);
  }
  for (const auto& a : fiber.base.elements()) {
    P1Point pt = P1Point::at(embed.map(a));
    if (std::find(nodes.begin(), nodes.end(), pt) == nodes.end()) return pt;
  }
  if (std::find(nodes.begin(), nodes.end(), P1Point::infinity()) == nodes.end()) return P1Point::infinity();
  throw Error(ErrorCode::NoRationalBasePoint, "component " + std::to_string(component) + " has no rational non-node point");
}

SpecializedDivisor points_with_degree(const std::vector<P1Point>& pts, const IntVector& deg) {
  SpecializedDivisor d;
  for (std::size_t i = 0; i < deg.size(); ++i) {
    if (deg[i] != 0) d.points.push_back({static_cast<int>(i), pts[i], deg[i]});
  }
  return d;
}

}  // namespace

bool EnumeratedTorus::contains(const TorusPoint& x) const {
  if (x.size() != static_cast<std::size_t>(lattice.rank)) return false;
  Key k = key_of(x);
  return std::any_of(points.begin(), points.end(), [&](const TorusPoint& p) { return key_of(p) == k; });
}

TorusPoint EnumeratedTorus::identity() const { return TorusPoint(lattice.rank, host.one()); }

TorusPoint EnumeratedTorus::multiply(const TorusPoint& a, const TorusPoint& b) const {
  TorusPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

TorusPoint EnumeratedTorus::power(const TorusPoint& a, const Int& e) const {
  TorusPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i].pow(e);
  return out;
}

FieldElement EnumeratedTorus::evaluate(const TorusPoint& x, const IntVector& chi) const {
  FieldElement acc = host.one();
  for (std::size_t i = 0; i < x.size(); ++i) acc *= x[i].pow(chi[i]);
  return acc;
}

EnumeratedTorus enumerate_torus(const CharacterLattice& lattice, std::uint64_t q, std::optional<FiniteField> host,
                                std::uint64_t limit) {
  auto pm = prime_power(q);
  if (!pm) throw Error(ErrorCode::InvalidInput, std::to_string(q) + " is not a prime power");
  const int n_frob = frobenius_order(lattice);
  EnumeratedTorus t;
  t.q = q;
  t.lattice = lattice;
  t.host = host ? *host : make_field(static_cast<std::int64_t>(pm->first), pm->second * n_frob);
  if (t.host.p() != static_cast<std::int64_t>(pm->first) || t.host.m() % (pm->second * n_frob) != 0) {
    throw Error(ErrorCode::NotSupported, "host field does not contain GF(q^N)");
  }
  const Int order = char_value(lattice.frobenius, q);
  if (order > Int(limit)) throw Error(ErrorCode::TooLarge, "torus order " + order.str() + " exceeds the oracle limit");
  const int g = lattice.rank;
  if (g == 0) {
    t.points = {TorusPoint{}};
    return t;
  }

  // Point values have order dividing #T(k) and live in host^x.
  const std::uint64_t host_units = t.host.q() - 1;
  const std::uint64_t n = int_gcd(order, Int(host_units)).convert_to<std::uint64_t>();
  Search s;
  s.one = t.host.one();
  s.limit = limit;
  FieldElement zeta = t.host.primitive_element().pow(static_cast<std::int64_t>(host_units / n));
  FieldElement cur = s.one;
  for (std::uint64_t j = 0; j < n; ++j, cur *= zeta) s.candidates.push_back(cur);
  for (int j = 0; j < g; ++j) {
    std::vector<std::int64_t> row(g);
    for (int i = 0; i < g; ++i) {
      Int v = lattice.frobenius[i][j] - (i == j ? Int(q) : Int(0));
      row[i] = v.convert_to<std::int64_t>();
    }
    s.coef.push_back(row);
  }
  s.run(std::vector<std::optional<FieldElement>>(g));

  std::sort(s.found.begin(), s.found.end(), [](const TorusPoint& a, const TorusPoint& b) { return key_of(a) < key_of(b); });
  s.found.erase(std::unique(s.found.begin(), s.found.end(),
                            [](const TorusPoint& a, const TorusPoint& b) { return key_of(a) == key_of(b); }),
                s.found.end());
  auto id = std::find_if(s.found.begin(), s.found.end(), [](const TorusPoint& p) {
    return std::all_of(p.begin(), p.end(), [](const FieldElement& v) { return v.is_one(); });
  });
  if (id != s.found.end()) std::rotate(s.found.begin(), id, id + 1);
  t.points = std::move(s.found);
  t.invariants = group_invariants(t);
  return t;
}

EnumeratedTorus enumerate_torus(const DualGraph& graph, std::uint64_t q, std::optional<FiniteField> host,
                                std::uint64_t limit) {
  return enumerate_torus(h1_basis(graph).lattice, q, std::move(host), limit);
}

FieldElement chain_evaluate(const Cycle& gamma, const SpecializedDivisor& d, const FiberModel& fiber) {
  const auto& g = fiber.graph;
  IntVector deg = d.multidegree(g.num_vertices);
  if (std::any_of(deg.begin(), deg.end(), [](const Int& x) { return x != 0; })) {
    throw Error(ErrorCode::NonzeroMultidegree, "chain evaluation needs zero degree on every component");
  }
  if (gamma.size() != g.edges.size()) throw Error(ErrorCode::InvalidInput, "cycle length does not match the graph");
  FieldElement acc = fiber.working.one();
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (gamma[e] == 0) continue;
    FieldElement head = component_value(d, g.edges[e].head, fiber.node_coords[e][1], acc.field().one());
    FieldElement tail = component_value(d, g.edges[e].tail, fiber.node_coords[e][0], acc.field().one());
    acc *= (head / tail).pow(gamma[e]);
  }
  return acc;
}

TorusPoint chain_point(const H1Basis& h1, const SpecializedDivisor& d, const FiberModel& fiber) {
  TorusPoint out;
  for (const auto& c : h1.cycles) out.push_back(chain_evaluate(c, d, fiber));
  return out;
}

bool exhaustive_divisibility(const TorusPoint& x, const Int& r, const std::vector<TorusPoint>& nu,
                             const EnumeratedTorus& torus, std::uint64_t limit) {
  if (torus.size() > limit) throw Error(ErrorCode::TooLarge, "torus exceeds the oracle limit");
  if (r == 1) return true;
  std::set<Key> members;
  std::deque<TorusPoint> queue;
  for (const auto& y : torus.points) {
    TorusPoint yr = torus.power(y, r);
    if (members.insert(key_of(yr)).second) queue.push_back(yr);
  }
  while (!queue.empty()) {
    TorusPoint h = queue.front();
    queue.pop_front();
    for (const auto& n : nu) {
      TorusPoint hn = torus.multiply(h, n);
      if (members.insert(key_of(hn)).second) queue.push_back(hn);
    }
  }
  return members.count(key_of(x)) > 0;
}

OracleVerdict oracle_divisibility(const DescentContext& ctx, const SpecializedDivisor& d, const Int& r,
                                  std::uint64_t limit) {
  const FiberModel& fiber = ctx.fiber;
  const int v = fiber.graph.num_vertices;
  OracleVerdict out;
  IntVector deg = d.multidegree(v);
  SpecializedDivisor shifted = d;
  if (std::any_of(deg.begin(), deg.end(), [&](const Int& x) { return x % r != 0; })) {
    auto t = fibral_lattice_witness(deg, r, fiber.intersection);
    if (!t) return out;
    IntVector target(v, 0);
    for (int i = 0; i < v; ++i) {
      for (int j = 0; j < v; ++j) target[j] += (*t)[i] * fiber.intersection[i][j];
    }
    shifted = d - principal_divisor_with_degree(ctx, target);
  }
  out.geometric_ok = true;

  Embedding embed(fiber.base, fiber.working);
  std::vector<P1Point> base_points;
  for (int i = 0; i < v; ++i) base_points.push_back(rational_point(fiber, embed, i));

  IntVector sdeg = shifted.multidegree(v);
  for (auto& x : sdeg) x /= r;
  out.x = chain_point(ctx.h1, shifted - points_with_degree(base_points, sdeg).scaled(r), fiber);

  for (const auto& delta : phi_torsion_representatives(ctx.phi, r)) {
    IntVector target = delta.multidegree;
    for (auto& x : target) x *= -r;
    SpecializedDivisor div_f = principal_divisor_with_degree(ctx, target);
    out.nu.push_back(chain_point(ctx.h1, div_f + points_with_degree(base_points, delta.multidegree).scaled(r), fiber));
  }

  EnumeratedTorus torus = enumerate_torus(ctx.h1.lattice, fiber.base.q(), fiber.working, limit);
  out.torus_size = torus.size();
  if (!torus.contains(out.x)) throw Error(ErrorCode::InvalidInput, "divisor class is not rational");
  out.divisible = exhaustive_divisibility(out.x, r, out.nu, torus, limit);
  return out;
}

}  // namespace degen
