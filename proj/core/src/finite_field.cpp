#include "degen/finite_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "degen/error.hpp"

namespace degen {

namespace detail {

struct FieldImpl {
  std::int64_t p = 0;
  int m = 0;
  std::uint64_t q = 0;
  std::vector<std::int64_t> modulus;  // monic, length m + 1
  std::vector<std::uint64_t> group_primes;  // prime divisors of q - 1
  std::uint64_t primitive_index = 0;
};

}  // namespace detail

namespace {

using Raw = std::vector<std::int64_t>;

void trim(Raw& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic-or-not b over GF(p); b nonzero.
Raw raw_mod(Raw a, const Raw& b, std::int64_t p) {
  trim(a);
  std::int64_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    std::int64_t c = mul_mod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = mod_floor(a[shift + i] - mul_mod(c, b[i], p), p);
    }
    trim(a);
  }
  return a;
}

Raw raw_mulmod(const Raw& a, const Raw& b, const Raw& f, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Raw c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mul_mod(a[i], b[j], p)) % p;
  }
  return raw_mod(std::move(c), f, p);
}

Raw raw_gcd(Raw a, Raw b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Raw r = raw_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// No factor of degree <= m/2 means irreducible.
bool raw_irreducible(const Raw& f, std::int64_t p) {
  int m = static_cast<int>(f.size()) - 1;
  Raw x = {0, 1};
  Raw h = raw_mod(x, f, p);
  for (int k = 1; 2 * k <= m; ++k) {
    Raw acc = {1};
    Raw base = h;
    for (std::int64_t e = p; e > 0; e >>= 1) {
      if (e & 1) acc = raw_mulmod(acc, base, f, p);
      base = raw_mulmod(base, base, f, p);
    }
    h = acc;
    Raw diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = mod_floor(diff[1] - 1, p);
    trim(diff);
    if (diff.empty()) return false;
    if (raw_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

Raw smallest_irreducible(std::int64_t p, int m) {
  if (m == 1) return {0, 1};
  std::uint64_t count = 1;
  for (int i = 0; i < m; ++i) count *= static_cast<std::uint64_t>(p);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // c0 is the most significant digit of idx: lex order on (c0, c1, ...).
    Raw f(m + 1, 0);
    std::uint64_t t = idx;
    for (int i = m - 1; i >= 0; --i) {
      f[i] = static_cast<std::int64_t>(t % static_cast<std::uint64_t>(p));
      t /= static_cast<std::uint64_t>(p);
    }
    f[m] = 1;
    if (f[0] == 0) continue;
    if (raw_irreducible(f, p)) return f;
  }
  throw Error(ErrorCode::InvalidInput, "no irreducible polynomial found");
}

std::mutex& cache_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::pair<std::int64_t, int>, std::shared_ptr<const detail::FieldImpl>>& cache() {
  static std::map<std::pair<std::int64_t, int>, std::shared_ptr<const detail::FieldImpl>> c;
  return c;
}

}  // namespace

FiniteField make_field(std::int64_t p, int m, std::uint64_t limit) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  }
  if (m < 1) throw Error(ErrorCode::InvalidInput, "extension degree must be positive");
  auto q = checked_pow(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(m), limit);
  if (!q) {
    throw Error(ErrorCode::SizeLimitExceeded,
                std::to_string(p) + "^" + std::to_string(m) + " exceeds field size limit " +
                    std::to_string(limit));
  }
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto key = std::make_pair(p, m);
  if (auto it = cache().find(key); it != cache().end()) return FiniteField(it->second);

  auto impl = std::make_shared<detail::FieldImpl>();
  impl->p = p;
  impl->m = m;
  impl->q = *q;
  impl->modulus = smallest_irreducible(p, m);
  for (auto [prime, e] : factor_integer(*q - 1)) {
    (void)e;
    impl->group_primes.push_back(prime);
  }
  FiniteField field(impl);
  for (std::uint64_t idx = 1; idx < *q; ++idx) {
    FieldElement g = field.element(idx);
    if (g.multiplicative_order() == *q - 1) {
      impl->primitive_index = idx;
      break;
    }
  }
  cache()[key] = impl;
  return field;
}

FiniteField make_field_of_order(std::uint64_t q, std::uint64_t limit) {
  auto pm = prime_power(q);
  if (!pm) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  return make_field(static_cast<std::int64_t>(pm->first), pm->second, limit);
}

std::int64_t FiniteField::p() const { return impl_->p; }
int FiniteField::m() const { return impl_->m; }
std::uint64_t FiniteField::q() const { return impl_->q; }
const std::vector<std::int64_t>& FiniteField::modulus() const { return impl_->modulus; }

FieldElement FiniteField::zero() const { return FieldElement(impl_, Raw(impl_->m, 0)); }

FieldElement FiniteField::one() const { return from_int(1); }

FieldElement FiniteField::from_int(std::int64_t n) const {
  Raw c(impl_->m, 0);
  c[0] = mod_floor(n, impl_->p);
  return FieldElement(impl_, std::move(c));
}

FieldElement FiniteField::from_coeffs(const std::vector<std::int64_t>& coeffs) const {
  Raw c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(mod_floor(v, impl_->p));
  c = raw_mod(std::move(c), impl_->modulus, impl_->p);
  c.resize(impl_->m, 0);
  return FieldElement(impl_, std::move(c));
}

FieldElement FiniteField::gen() const { return from_coeffs({0, 1}); }

FieldElement FiniteField::element(std::uint64_t index) const {
  if (index >= impl_->q) throw Error(ErrorCode::InvalidInput, "element index out of range");
  Raw c(impl_->m, 0);
  auto p = static_cast<std::uint64_t>(impl_->p);
  for (int i = 0; i < impl_->m; ++i) {
    c[i] = static_cast<std::int64_t>(index % p);
    index /= p;
  }
  return FieldElement(impl_, std::move(c));
}

std::vector<FieldElement> FiniteField::elements() const {
  std::vector<FieldElement> out;
  out.reserve(impl_->q);
  for (std::uint64_t i = 0; i < impl_->q; ++i) out.push_back(element(i));
  return out;
}

FieldElement FiniteField::primitive_element() const { return element(impl_->primitive_index); }

FieldElement FiniteField::element_of_order(std::uint64_t n) const {
  if (n == 0 || (impl_->q - 1) % n != 0) {
    throw Error(ErrorCode::InvalidInput,
                std::to_string(n) + " does not divide " + std::to_string(impl_->q - 1));
  }
  return primitive_element().pow(static_cast<std::int64_t>((impl_->q - 1) / n));
}

bool FiniteField::operator==(const FiniteField& other) const {
  if (impl_ == other.impl_) return true;
  if (!impl_ || !other.impl_) return false;
  return impl_->p == other.impl_->p && impl_->m == other.impl_->m;
}

std::string FiniteField::describe() const {
  if (!impl_) return "GF(?)";
  if (impl_->m == 1) return "GF(" + std::to_string(impl_->p) + ")";
  return "GF(" + std::to_string(impl_->p) + "^" + std::to_string(impl_->m) + ")";
}

void FieldElement::check_same(const FieldElement& o) const {
  if (f_ != o.f_ && !(f_ && o.f_ && f_->p == o.f_->p && f_->m == o.f_->m)) {
    throw Error(ErrorCode::FieldMismatch, "operands live in different fields");
  }
}

std::uint64_t FieldElement::index() const {
  std::uint64_t idx = 0;
  auto p = static_cast<std::uint64_t>(f_->p);
  for (int i = f_->m - 1; i >= 0; --i) idx = idx * p + static_cast<std::uint64_t>(c_[i]);
  return idx;
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
}

bool FieldElement::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](std::int64_t v) { return v == 0; });
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  Raw c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = c_[i] + o.c_[i];
    if (c[i] >= f_->p) c[i] -= f_->p;
  }
  return FieldElement(f_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  Raw c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = c_[i] - o.c_[i];
    if (c[i] < 0) c[i] += f_->p;
  }
  return FieldElement(f_, std::move(c));
}

FieldElement FieldElement::operator-() const {
  Raw c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = c_[i] == 0 ? 0 : f_->p - c_[i];
  return FieldElement(f_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  const std::int64_t p = f_->p;
  const int m = f_->m;
  if (m == 1) return FieldElement(f_, Raw{mul_mod(c_[0], o.c_[0], p)});
  Raw prod(2 * m - 1, 0);
  for (int i = 0; i < m; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + mul_mod(c_[i], o.c_[j], p)) % p;
  }
  // Reduce with the monic modulus from the top down.
  const Raw& f = f_->modulus;
  for (int k = 2 * m - 2; k >= m; --k) {
    std::int64_t c = prod[k];
    if (c == 0) continue;
    for (int i = 0; i < m; ++i) prod[k - m + i] = mod_floor(prod[k - m + i] - mul_mod(c, f[i], p), p);
    prod[k] = 0;
  }
  prod.resize(m);
  return FieldElement(f_, std::move(prod));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

bool FieldElement::operator==(const FieldElement& o) const {
  check_same(o);
  return c_ == o.c_;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroElement, "zero has no inverse");
  return pow(static_cast<std::int64_t>(f_->q - 2));
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-(e + 1)) * inverse();
  FieldElement result = field().one();
  FieldElement base = *this;
  auto u = static_cast<std::uint64_t>(e);
  if (!is_zero() && u >= f_->q - 1) u %= (f_->q - 1);
  while (u > 0) {
    if (u & 1U) result = result * base;
    base = base * base;
    u >>= 1U;
  }
  return result;
}

FieldElement FieldElement::pow(const Int& e) const {
  if (is_zero()) {
    if (e < 0) throw Error(ErrorCode::ZeroElement, "zero to a negative power");
    return e == 0 ? field().one() : *this;
  }
  Int n = Int(f_->q - 1);
  Int r = e % n;
  if (r < 0) r += n;
  return pow(r.convert_to<std::int64_t>());
}

FieldElement FieldElement::frobenius(int k) const {
  int steps = ((k % f_->m) + f_->m) % f_->m;
  FieldElement x = *this;
  for (int i = 0; i < steps; ++i) x = x.pow(f_->p);
  return x;
}

std::uint64_t FieldElement::multiplicative_order() const {
  if (is_zero()) throw Error(ErrorCode::ZeroElement, "zero has no multiplicative order");
  std::uint64_t order = f_->q - 1;
  for (auto prime : f_->group_primes) {
    while (order % prime == 0 && pow(static_cast<std::int64_t>(order / prime)).is_one()) order /= prime;
  }
  return order;
}

bool FieldElement::in_subfield(int s) const {
  if (s <= 0 || f_->m % s != 0) return false;
  return frobenius(s) == *this;
}

std::string FieldElement::to_string() const {
  if (f_->m == 1) return std::to_string(c_[0]);
  std::string out;
  for (int i = f_->m - 1; i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || c_[i] != 1) out += std::to_string(c_[i]);
    if (i >= 1) out += "a";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

FieldElement norm_in_place(const FieldElement& x, int s) {
  int m = x.field().m();
  if (s <= 0 || m % s != 0) {
    throw Error(ErrorCode::NotASubfield,
                "GF(p^" + std::to_string(s) + ") is not a subfield of " + x.field().describe());
  }
  FieldElement acc = x.field().one();
  FieldElement conj = x;
  for (int j = 0; j < m / s; ++j) {
    acc = acc * conj;
    conj = conj.frobenius(s);
  }
  return acc;
}

FieldElement norm_to_subfield(const FieldElement& x, int s) {
  FieldElement n = norm_in_place(x, s);
  FiniteField sub = make_field(x.field().p(), s, x.field().q());
  Embedding emb(sub, x.field());
  auto pre = emb.preimage(n);
  if (!pre) throw Error(ErrorCode::InvalidInput, "norm escaped the subfield");
  return *pre;
}

bool power_residue(const FieldElement& x, std::uint64_t r) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroElement, "power residue of zero");
  if (r == 0) throw Error(ErrorCode::InvalidInput, "r must be positive");
  std::uint64_t n = x.field().q() - 1;
  std::uint64_t d = std::gcd(r, n);
  return x.pow(static_cast<std::int64_t>(n / d)).is_one();
}

std::uint64_t discrete_log(const FieldElement& g, const FieldElement& h, std::uint64_t order) {
  if (h.is_zero()) throw Error(ErrorCode::ZeroElement, "discrete log of zero");
  if (order == 0) throw Error(ErrorCode::InvalidInput, "order must be positive");
  auto step = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(order))));
  if (step == 0) step = 1;
  std::unordered_map<std::uint64_t, std::uint64_t> baby;
  baby.reserve(step * 2);
  FieldElement cur = g.field().one();
  for (std::uint64_t j = 0; j < step; ++j) {
    baby.emplace(cur.index(), j);
    cur = cur * g;
  }
  FieldElement giant = g.pow(static_cast<std::int64_t>(step)).inverse();
  FieldElement gamma = h;
  for (std::uint64_t i = 0; i <= step; ++i) {
    if (auto it = baby.find(gamma.index()); it != baby.end()) {
      std::uint64_t e = (i * step + it->second) % order;
      if (g.pow(static_cast<std::int64_t>(e)) == h) return e;
    }
    gamma = gamma * giant;
  }
  throw Error(ErrorCode::InvalidInput, h.to_string() + " is not in the subgroup generated by " + g.to_string());
}

}  // namespace degen
