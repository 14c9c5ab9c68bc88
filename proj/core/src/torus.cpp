#include "degen/torus.hpp"

#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "degen/error.hpp"

namespace degen {

namespace {

using Rational = boost::multiprecision::cpp_rational;

bool is_identity(const IntMatrix& a) { return a == identity_matrix(a.size()); }

// Coefficients expressing target in the span of vs, or nullopt.
std::optional<std::vector<Rational>> solve_in_span(const std::vector<IntVector>& vs, const IntVector& target) {
  const std::size_t k = vs.size();
  const std::size_t g = target.size();
  std::vector<std::vector<Rational>> a(g, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < g; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = Rational(vs[c][r]);
    a[r][k] = Rational(target[r]);
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < g; ++c) {
    std::size_t piv = row;
    while (piv < g && a[piv][c] == 0) ++piv;
    if (piv == g) continue;
    std::swap(a[row], a[piv]);
    Rational inv = 1 / a[row][c];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t r = 0; r < g; ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t cc = 0; cc <= k; ++cc) a[r][cc] -= f * a[row][cc];
    }
    pivots.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < g; ++r) {
    if (a[r][k] != 0) return std::nullopt;
  }
  std::vector<Rational> x(k, Rational(0));
  for (std::size_t r = 0; r < row; ++r) x[pivots[r]] = a[r][k];
  return x;
}

}  // namespace

CharacterLattice make_lattice(const IntMatrix& frobenius, std::string label) {
  const std::size_t g = frobenius.size();
  for (const auto& row : frobenius) {
    if (row.size() != g) throw Error(ErrorCode::InvalidLattice, "Frobenius matrix must be square");
  }
  if (g > 0) {
    Int det = determinant(frobenius);
    if (det != 1 && det != -1) throw Error(ErrorCode::InvalidLattice, "Frobenius determinant must be +-1");
  }
  CharacterLattice lat{static_cast<int>(g), frobenius, std::move(label)};
  (void)frobenius_order(lat);
  return lat;
}

CharacterLattice split_lattice(int g) {
  return make_lattice(identity_matrix(static_cast<std::size_t>(g)), "split rank " + std::to_string(g));
}

CharacterLattice norm_lattice(int g) {
  IntMatrix f = zero_matrix(g, g);
  for (int j = 0; j < g; ++j) f[(j + 1) % g][j] = 1;
  return make_lattice(f, "norm torus degree " + std::to_string(g));
}

CharacterLattice companion_lattice(const std::vector<Int>& poly, std::string label) {
  if (poly.size() < 2 || poly.back() != 1) throw Error(ErrorCode::InvalidLattice, "companion needs a monic polynomial");
  const std::size_t g = poly.size() - 1;
  IntMatrix f = zero_matrix(g, g);
  for (std::size_t j = 0; j + 1 < g; ++j) f[j + 1][j] = 1;
  for (std::size_t i = 0; i < g; ++i) f[i][g - 1] = -poly[i];
  return make_lattice(f, std::move(label));
}

int frobenius_order(const CharacterLattice& lattice) {
  if (lattice.rank == 0) return 1;
  IntMatrix power = lattice.frobenius;
  for (int k = 1; k <= kMaxFrobeniusOrder; ++k) {
    if (is_identity(power)) return k;
    power = mat_mul(power, lattice.frobenius);
  }
  throw Error(ErrorCode::FrobeniusOrderExceeded,
              "Frobenius order exceeds " + std::to_string(kMaxFrobeniusOrder));
}

std::vector<Int> frobenius_char_poly(const CharacterLattice& lattice) {
  // Faddeev-LeVerrier; every division is exact over Z.
  const auto n = static_cast<std::size_t>(lattice.rank);
  std::vector<Int> c(n + 1, 0);
  c[n] = 1;
  IntMatrix m = zero_matrix(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix am = mat_mul(lattice.frobenius, m);
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = am;
    IntMatrix prod = mat_mul(lattice.frobenius, m);
    Int trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += prod[i][i];
    c[n - k] = -trace / static_cast<long>(k);
  }
  return c;
}

Int eval_int_poly(const std::vector<Int>& poly, const Int& x) {
  Int acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string int_poly_to_string(const std::vector<Int>& poly) {
  std::string out;
  for (std::size_t i = poly.size(); i-- > 0;) {
    const Int& c = poly[i];
    if (c == 0) continue;
    Int a = c < 0 ? Int(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? "-" : "+";
    }
    if (i == 0 || a != 1) out += a.str();
    if (i > 0 && a != 1) out += "*";
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

Int torus_order(const CharacterLattice& lattice, std::uint64_t q) {
  return eval_int_poly(frobenius_char_poly(lattice), Int(q));
}

PrincipalComponent make_component(const CharacterLattice& lattice, const IntVector& chi) {
  if (chi.size() != static_cast<std::size_t>(lattice.rank)) {
    throw Error(ErrorCode::InvalidLattice, "character has the wrong length");
  }
  bool zero = true;
  for (const auto& v : chi) zero = zero && v == 0;
  if (zero) throw Error(ErrorCode::NotPrincipal, "zero character generates nothing");
  std::vector<IntVector> krylov{chi};
  for (;;) {
    IntVector next = mat_vec(lattice.frobenius, krylov.back());
    if (auto coeffs = solve_in_span(krylov, next)) {
      PrincipalComponent comp;
      comp.chi = chi;
      comp.rank = static_cast<int>(krylov.size());
      comp.relation.assign(krylov.size() + 1, 0);
      comp.relation.back() = 1;
      for (std::size_t j = 0; j < coeffs->size(); ++j) {
        const Rational& a = (*coeffs)[j];
        if (boost::multiprecision::denominator(a) != 1) {
          throw Error(ErrorCode::InvalidLattice, "relation polynomial is not integral");
        }
        comp.relation[j] = -boost::multiprecision::numerator(a);
      }
      return comp;
    }
    krylov.push_back(next);
  }
}

PrincipalDecomposition make_decomposition(const CharacterLattice& lattice, const std::vector<IntVector>& chis) {
  PrincipalDecomposition d;
  for (const auto& chi : chis) d.components.push_back(make_component(lattice, chi));
  return d;
}

DecompositionCheck verify_principal_decomposition(const CharacterLattice& lattice,
                                                  const PrincipalDecomposition& decomposition) {
  DecompositionCheck out;
  for (const auto& comp : decomposition.components) {
    IntVector v = comp.chi;
    for (int j = 0; j < comp.rank; ++j) {
      out.basis.push_back(v);
      v = mat_vec(lattice.frobenius, v);
    }
  }
  if (out.basis.size() != static_cast<std::size_t>(lattice.rank)) {
    out.reason = "orbit vectors number " + std::to_string(out.basis.size()) + " but rank is " +
                 std::to_string(lattice.rank);
    return out;
  }
  out.det = determinant(out.basis);
  out.ok = out.det == 1 || out.det == -1;
  if (!out.ok) out.reason = "orbit vectors span a sublattice of index " + int_abs(out.det).str();
  return out;
}

MuGroup mu_group_of_order(const Int& order, std::uint64_t q, std::uint64_t limit) {
  auto pm = prime_power(q);
  if (!pm) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  if (order <= 0) throw Error(ErrorCode::InvalidInput, "mu order must be positive");
  if (order % pm->first == 0) throw Error(ErrorCode::InvalidInput, "mu order divisible by the characteristic");
  if (order > Int(limit)) {
    throw Error(ErrorCode::SizeLimitExceeded, "mu order " + order.str() + " exceeds the field limit");
  }
  auto n = order.convert_to<std::uint64_t>();
  MuGroup mu;
  mu.order = order;
  mu.s = n == 1 ? 1 : static_cast<int>(multiplicative_order(q % n, n));
  mu.host = make_field(static_cast<std::int64_t>(pm->first), pm->second * mu.s, limit);
  mu.generator = mu.host.element_of_order(n);
  return mu;
}

MuGroup mu_group(const PrincipalComponent& component, std::uint64_t q, std::uint64_t limit) {
  return mu_group_of_order(eval_int_poly(component.relation, Int(q)), q, limit);
}

MuGroup mu_group_in(const FiniteField& field, const Int& order) {
  if (order <= 0 || Int(field.q() - 1) % order != 0) {
    throw Error(ErrorCode::InvalidInput, "mu_" + order.str() + " is not inside " + field.describe());
  }
  MuGroup mu;
  mu.order = order;
  mu.s = 1;
  mu.host = field;
  mu.generator = field.element_of_order(order.convert_to<std::uint64_t>());
  return mu;
}

FieldElement RationalPoints::evaluate(std::size_t point, const IntVector& chi) const {
  Int e = 0;
  for (std::size_t j = 0; j < chi.size(); ++j) e += chi[j] * logs[point][j];
  return omega.pow(e);
}

RationalPoints enumerate_rational_points(const CharacterLattice& lattice, std::uint64_t q,
                                         std::uint64_t enumeration_limit, std::uint64_t field_limit) {
  auto pm = prime_power(q);
  if (!pm) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  Int expected = torus_order(lattice, q);
  if (expected > Int(enumeration_limit)) {
    throw Error(ErrorCode::EnumerationLimitExceeded,
                "torus has " + expected.str() + " points, limit " + std::to_string(enumeration_limit));
  }
  const int g = lattice.rank;
  const int big_n = frobenius_order(lattice);
  RationalPoints out;
  out.host = make_field(static_cast<std::int64_t>(pm->first), pm->second * big_n, field_limit);
  out.omega = out.host.primitive_element();
  out.modulus = static_cast<std::int64_t>(out.host.q() - 1);
  const Int n(out.modulus);
  if (g == 0) {
    out.logs.push_back({});
    return out;
  }
  // Equivariance e(F chi) = e(chi)^q on logs: (F^T - q I) a = 0 mod n.
  IntMatrix b = transpose(lattice.frobenius);
  for (int i = 0; i < g; ++i) b[i][i] -= Int(q);
  SmithForm s = smith_normal_form(b);
  std::vector<std::int64_t> orders;
  std::vector<IntVector> gens;
  for (int k = 0; k < g; ++k) {
    Int d = s.diagonal[k];
    Int ord = d == 0 ? n : int_gcd(d, n);
    if (ord == 1) continue;
    IntVector col(g);
    for (int i = 0; i < g; ++i) col[i] = s.V[i][k] * (n / ord);
    orders.push_back(ord.convert_to<std::int64_t>());
    gens.push_back(col);
  }
  IntVector ord_int(orders.begin(), orders.end());
  out.invariants = abelian_invariants(ord_int);
  std::vector<std::int64_t> digits(orders.size(), 0);
  for (;;) {
    std::vector<std::int64_t> logs(g, 0);
    for (std::size_t k = 0; k < orders.size(); ++k) {
      for (int i = 0; i < g; ++i) {
        Int v = (Int(digits[k]) * gens[k][i]) % n;
        logs[i] = mod_floor(logs[i] + mod_floor(v.convert_to<std::int64_t>(), out.modulus), out.modulus);
      }
    }
    out.logs.push_back(std::move(logs));
    std::size_t k = 0;
    while (k < orders.size() && ++digits[k] == orders[k]) digits[k++] = 0;
    if (k == orders.size()) break;
  }
  return out;
}

IntVector abelian_invariants(const IntVector& cyclic_orders) {
  IntMatrix d = zero_matrix(cyclic_orders.size(), cyclic_orders.size());
  for (std::size_t i = 0; i < cyclic_orders.size(); ++i) d[i][i] = cyclic_orders[i];
  IntVector out;
  if (d.empty()) return out;
  for (const auto& v : smith_normal_form(d).diagonal) {
    if (v != 1) out.push_back(v);
  }
  return out;
}

}  // namespace degen
