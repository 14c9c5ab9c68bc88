#pragma once

// Curve fixtures and random node-avoiding divisors shared by the descent,
// oracle and acceptance suites.

#include <optional>
#include <random>
#include <vector>

#include "degen/descent.hpp"
#include "degen/genus4.hpp"
#include "degen/hyperelliptic.hpp"
#include "degen/parse.hpp"

namespace fixtures {

using namespace degen;

inline HyperellipticInput hyper_input(std::uint64_t q, std::vector<Int> g, std::vector<Int> h, bool p_adic = false) {
  HyperellipticInput in;
  in.q = q;
  in.p_adic = p_adic;
  in.g = std::move(g);
  in.h = std::move(h);
  return in;
}

inline HyperellipticCurve hyper(std::uint64_t q, const char* g, const char* h) {
  return validate_hyperelliptic(hyper_input(q, parse_univariate(g), parse_univariate(h)));
}

inline std::vector<Int> eps0() { return parse_cubic_form("X^3+Y^3+W*Z^2"); }

inline Genus4Curve genus4(std::uint64_t q, std::vector<Int> eps, Int r = 2) {
  Genus4Input in;
  in.q = q;
  in.eps = std::move(eps);
  in.r = r;
  return validate_genus4(in);
}

// Random monic g of degree d and h of degree < 2d satisfying the hypotheses.
inline std::optional<HyperellipticCurve> random_hyper(std::mt19937_64& rng, std::uint64_t q, int d) {
  std::vector<Int> g(d + 1), h(1 + rng() % (2 * d));
  for (auto& x : g) x = Int(rng() % q);
  g[d] = 1;
  for (auto& x : h) x = Int(rng() % q);
  auto in = hyper_input(q, g, h);
  if (!check_hyperelliptic(in).empty()) return std::nullopt;
  return validate_hyperelliptic(in);
}

inline std::optional<Genus4Curve> random_genus4(std::mt19937_64& rng, std::uint64_t q) {
  Genus4Input in;
  in.q = q;
  in.eps.resize(20);
  for (auto& x : in.eps) x = Int(rng() % q);
  if (!check_genus4(in).empty()) return std::nullopt;
  return validate_genus4(in);
}

inline std::vector<P1Point> node_points(const FiberModel& fiber, int component) {
  std::vector<P1Point> out;
  for (std::size_t e = 0; e < fiber.graph.edges.size(); ++e) {
    if (fiber.graph.edges[e].tail == component) out.push_back(fiber.node_coords[e][0]);
    if (fiber.graph.edges[e].head == component) out.push_back(fiber.node_coords[e][1]);
  }
  return out;
}

// Points of the component defined over k, nodes excluded; infinity last.
inline std::vector<P1Point> rational_points(const FiberModel& fiber, int component) {
  auto nodes = node_points(fiber, component);
  auto is_node = [&](const P1Point& p) {
    for (const auto& n : nodes)
      if (n == p) return true;
    return false;
  };
  Embedding emb(fiber.base, fiber.working);
  std::vector<P1Point> out;
  for (const auto& a : fiber.base.elements()) {
    auto p = P1Point::at(emb.map(a));
    if (!is_node(p)) out.push_back(p);
  }
  if (!is_node(P1Point::infinity())) out.push_back(P1Point::infinity());
  return out;
}

inline P1Point pick(std::mt19937_64& rng, const std::vector<P1Point>& pts) { return pts[rng() % pts.size()]; }

// Sum of a few rational points with small multiplicities.
inline SpecializedDivisor random_divisor(std::mt19937_64& rng, const FiberModel& fiber, int terms = 4) {
  SpecializedDivisor d;
  const int v = fiber.graph.num_vertices;
  for (int t = 0; t < terms; ++t) {
    int comp = static_cast<int>(rng() % v);
    d.points.push_back({comp, pick(rng, rational_points(fiber, comp)), Int(static_cast<int>(rng() % 7) - 3)});
  }
  return d;
}

// Random divisor pushed into Div^{r} by topping up each component.
inline SpecializedDivisor random_div_r(std::mt19937_64& rng, const FiberModel& fiber, const Int& r, int terms = 4) {
  auto d = random_divisor(rng, fiber, terms);
  auto deg = d.multidegree(fiber.graph.num_vertices);
  for (int comp = 0; comp < fiber.graph.num_vertices; ++comp) {
    Int rem = deg[comp] % r;
    if (rem < 0) rem += r;
    if (rem != 0) d.points.push_back({comp, pick(rng, rational_points(fiber, comp)), r - rem});
  }
  return d;
}

// Random divisor of multidegree zero: a - b on each component.
inline SpecializedDivisor random_degree_zero(std::mt19937_64& rng, const FiberModel& fiber) {
  SpecializedDivisor d;
  for (int comp = 0; comp < fiber.graph.num_vertices; ++comp) {
    auto pts = rational_points(fiber, comp);
    Int m = Int(1 + static_cast<int>(rng() % 3));
    d.points.push_back({comp, pick(rng, pts), m});
    d.points.push_back({comp, pick(rng, pts), -m});
  }
  return d;
}

}  // namespace fixtures
