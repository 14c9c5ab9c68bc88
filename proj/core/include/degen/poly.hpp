#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "degen/finite_field.hpp"

namespace degen {

// Dense univariate polynomial over a finite field; coefficients low-to-high,
// never with a trailing zero. The zero polynomial has degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FiniteField f) : f_(std::move(f)) {}
  Poly(FiniteField f, std::vector<FieldElement> coeffs);

  static Poly from_ints(const FiniteField& f, const std::vector<std::int64_t>& coeffs);
  static Poly constant(const FieldElement& c);
  static Poly x(const FiniteField& f);
  // c * x^deg.
  static Poly monomial(const FieldElement& c, int deg);
  // x - a.
  static Poly linear(const FieldElement& a);

  const FiniteField& field() const { return f_; }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  FieldElement coeff(int i) const;
  // Errors: ZeroPolynomial.
  const FieldElement& leading() const;
  Poly monic() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const FieldElement& c) const;
  // Euclidean quotient and remainder. Errors: ZeroPolynomial.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly derivative() const;
  FieldElement eval(const FieldElement& a) const;
  Poly pow(std::uint64_t e) const;
  // Coefficient-wise image under a field embedding.
  Poly map(const Embedding& emb) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  FiniteField f_;
  std::vector<FieldElement> c_;
};

// base^e mod m.
Poly pow_mod(const Poly& base, const Int& e, const Poly& m);
// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
bool coprime(const Poly& a, const Poly& b);
// Res(a, b) via the Euclidean algorithm. Errors: ZeroPolynomial.
FieldElement resultant(const Poly& a, const Poly& b);

struct PolyFactor {
  Poly factor;  // monic irreducible
  int multiplicity = 0;
};

// Complete factorization of a nonzero polynomial into monic irreducibles,
// sorted by degree and then lexicographically from the constant term up.
// The unit leading coefficient is dropped. Errors: ZeroPolynomial.
std::vector<PolyFactor> factor(const Poly& f);
bool is_irreducible(const Poly& f);
bool is_squarefree(const Poly& f);

// Distinct roots in the field of f, ascending by index.
std::vector<FieldElement> roots(const Poly& f);
// Distinct roots in GF(q^s) where q is the size of f's field, ascending by index.
std::vector<FieldElement> roots_in_extension(const Poly& f, int s,
                                             std::uint64_t limit = kDefaultFieldLimit);

// Lexicographic comparison from the constant term, after degree.
bool poly_less(const Poly& a, const Poly& b);

}  // namespace degen
