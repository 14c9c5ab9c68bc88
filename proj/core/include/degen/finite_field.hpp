#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "degen/intmath.hpp"

namespace degen {

inline constexpr std::uint64_t kDefaultFieldLimit = 1ULL << 20;

namespace detail {
struct FieldImpl;
}

class FieldElement;

// GF(p^m) with the lexicographically smallest monic irreducible modulus.
// Cheap to copy; all copies share one immutable representation.
class FiniteField {
 public:
  FiniteField() = default;

  std::int64_t p() const;
  int m() const;
  std::uint64_t q() const;
  // Monic modulus over GF(p), coefficients low-to-high, length m + 1.
  const std::vector<std::int64_t>& modulus() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t n) const;
  FieldElement from_coeffs(const std::vector<std::int64_t>& coeffs) const;
  // Class of x modulo the defining polynomial.
  FieldElement gen() const;
  // Inverse of FieldElement::index(): base-p digits are coefficients.
  FieldElement element(std::uint64_t index) const;
  std::vector<FieldElement> elements() const;

  // Smallest-index generator of the multiplicative group.
  FieldElement primitive_element() const;
  // Element of exact multiplicative order n; n must divide q - 1.
  FieldElement element_of_order(std::uint64_t n) const;

  bool valid() const { return impl_ != nullptr; }
  bool operator==(const FiniteField& other) const;
  bool operator!=(const FiniteField& other) const { return !(*this == other); }
  std::string describe() const;

 private:
  friend class FieldElement;
  friend FiniteField make_field(std::int64_t p, int m, std::uint64_t limit);
  explicit FiniteField(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::FieldImpl> impl_;
};

// Errors: NotPrime, SizeLimitExceeded, InvalidInput (m < 1).
FiniteField make_field(std::int64_t p, int m, std::uint64_t limit = kDefaultFieldLimit);
// q must be a prime power.
FiniteField make_field_of_order(std::uint64_t q, std::uint64_t limit = kDefaultFieldLimit);

class FieldElement {
 public:
  FieldElement() = default;

  FiniteField field() const { return FiniteField(f_); }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  std::uint64_t index() const;

  bool is_zero() const;
  bool is_one() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
  // Total order by index; for deterministic sorting only.
  bool operator<(const FieldElement& o) const { return index() < o.index(); }

  FieldElement inverse() const;
  FieldElement pow(std::int64_t e) const;
  FieldElement pow(const Int& e) const;
  // x^(p^k).
  FieldElement frobenius(int k = 1) const;
  std::uint64_t multiplicative_order() const;
  // True when x lies in GF(p^s) inside GF(p^m).
  bool in_subfield(int s) const;

  std::string to_string() const;

 private:
  friend class FiniteField;
  FieldElement(std::shared_ptr<const detail::FieldImpl> f, std::vector<std::int64_t> c)
      : f_(std::move(f)), c_(std::move(c)) {}
  void check_same(const FieldElement& o) const;
  std::shared_ptr<const detail::FieldImpl> f_;
  std::vector<std::int64_t> c_;
};

// prod_{j < m/s} x^(p^(s j)), returned as an element of the subfield GF(p^s)
// (a separately constructed field, identified through the canonical embedding).
// Errors: NotASubfield when s does not divide m.
FieldElement norm_to_subfield(const FieldElement& x, int s);
// Same norm, left inside the field of x.
FieldElement norm_in_place(const FieldElement& x, int s);

// True iff x is an r-th power in its field. Errors: ZeroElement.
bool power_residue(const FieldElement& x, std::uint64_t r);

// Exponent e in [0, order) with g^e == h; g must have multiplicative order `order`.
// Baby-step giant-step. Errors: InvalidInput when h is not in <g>.
std::uint64_t discrete_log(const FieldElement& g, const FieldElement& h, std::uint64_t order);

// Embedding GF(p^a) -> GF(p^b), a | b, fixed by the first root (by index) of the
// base modulus in the extension.
class Embedding {
 public:
  Embedding() = default;
  Embedding(FiniteField base, FiniteField ext);

  const FiniteField& base() const { return base_; }
  const FiniteField& ext() const { return ext_; }
  FieldElement map(const FieldElement& x) const;
  // Inverse image, or nullopt when y is outside the image.
  std::optional<FieldElement> preimage(const FieldElement& y) const;

 private:
  FiniteField base_;
  FiniteField ext_;
  std::vector<FieldElement> powers_;  // images of 1, x, ..., x^(a-1)
};

}  // namespace degen
