#include "degen/poly.hpp"

#include <algorithm>
#include <random>

#include "degen/error.hpp"

namespace degen {

Poly::Poly(FiniteField f, std::vector<FieldElement> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  for (const auto& c : c_) {
    if (c.field() != f_) throw Error(ErrorCode::FieldMismatch, "coefficient outside polynomial field");
  }
  normalize();
}

void Poly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::from_ints(const FiniteField& f, const std::vector<std::int64_t>& coeffs) {
  std::vector<FieldElement> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(f.from_int(v));
  return Poly(f, std::move(c));
}

Poly Poly::constant(const FieldElement& c) { return Poly(c.field(), {c}); }

Poly Poly::x(const FiniteField& f) { return Poly(f, {f.zero(), f.one()}); }

Poly Poly::monomial(const FieldElement& c, int deg) {
  FiniteField f = c.field();
  std::vector<FieldElement> v(static_cast<std::size_t>(deg) + 1, f.zero());
  v[deg] = c;
  return Poly(f, std::move(v));
}

Poly Poly::linear(const FieldElement& a) { return Poly(a.field(), {-a, a.field().one()}); }

FieldElement Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return f_.zero();
  return c_[i];
}

const FieldElement& Poly::leading() const {
  if (c_.empty()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no leading coefficient");
  return c_.back();
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return *this * leading().inverse();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<FieldElement> c(std::max(c_.size(), o.c_.size()), f_.zero());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return Poly(f_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<FieldElement> c;
  c.reserve(c_.size());
  for (const auto& v : c_) c.push_back(-v);
  return Poly(f_, std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  if (c_.empty() || o.c_.empty()) return Poly(f_);
  std::vector<FieldElement> c(c_.size() + o.c_.size() - 1, f_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  }
  return Poly(f_, std::move(c));
}

Poly Poly::operator*(const FieldElement& k) const {
  std::vector<FieldElement> c;
  c.reserve(c_.size());
  for (const auto& v : c_) c.push_back(v * k);
  return Poly(f_, std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  if (degree() < d.degree()) return {Poly(f_), *this};
  std::vector<FieldElement> r = c_;
  std::vector<FieldElement> q(c_.size() - d.c_.size() + 1, f_.zero());
  FieldElement lead_inv = d.leading().inverse();
  for (int k = degree(); k >= d.degree(); --k) {
    FieldElement c = r[k] * lead_inv;
    if (c.is_zero()) continue;
    int shift = k - d.degree();
    q[shift] = c;
    for (int i = 0; i <= d.degree(); ++i) r[shift + i] -= c * d.c_[i];
  }
  r.resize(static_cast<std::size_t>(d.degree()));
  return {Poly(f_, std::move(q)), Poly(f_, std::move(r))};
}

bool Poly::operator==(const Poly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != o.c_[i]) return false;
  }
  return true;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(f_);
  std::vector<FieldElement> c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * f_.from_int(static_cast<std::int64_t>(i)));
  return Poly(f_, std::move(c));
}

FieldElement Poly::eval(const FieldElement& a) const {
  FieldElement acc = a.field().zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * a + *it;
  return acc;
}

Poly Poly::pow(std::uint64_t e) const {
  Poly result = constant(f_.one());
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::map(const Embedding& emb) const {
  std::vector<FieldElement> c;
  c.reserve(c_.size());
  for (const auto& v : c_) c.push_back(emb.map(v));
  return Poly(emb.ext(), std::move(c));
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const FieldElement& c = c_[i];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool compound = cs.find('+') != std::string::npos;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (!c.is_one()) out += compound ? "(" + cs + ")*" : cs + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Poly pow_mod(const Poly& base, const Int& e, const Poly& m) {
  if (e < 0) throw Error(ErrorCode::InvalidInput, "negative exponent");
  Poly result = Poly::constant(m.field().one()) % m;
  if (e == 0) return result;
  Poly b = base % m;
  auto bits = static_cast<long>(boost::multiprecision::msb(e));
  for (long i = bits; i >= 0; --i) {
    result = (result * result) % m;
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result = (result * b) % m;
  }
  return result;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

bool coprime(const Poly& a, const Poly& b) { return gcd(a, b).degree() == 0; }

FieldElement resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "resultant with zero polynomial");
  FiniteField f = a.field();
  FieldElement acc = f.one();
  Poly x = a, y = b;
  for (;;) {
    if (y.degree() == 0) return acc * y.leading().pow(static_cast<std::int64_t>(x.degree()));
    if (x.degree() == 0) return acc * x.leading().pow(static_cast<std::int64_t>(y.degree()));
    Poly r = x % y;
    if (r.is_zero()) return f.zero();
    // Res(x, y) = (-1)^(deg x deg y) lc(y)^(deg x - deg r) Res(y, r).
    if ((x.degree() * y.degree()) % 2 == 1) acc = -acc;
    acc = acc * y.leading().pow(static_cast<std::int64_t>(x.degree() - r.degree()));
    x = std::move(y);
    y = std::move(r);
  }
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    auto ia = a.coeff(i).index(), ib = b.coeff(i).index();
    if (ia != ib) return ia < ib;
  }
  return false;
}

namespace {

// Input has every exponent divisible by p.
Poly pth_root(const Poly& f) {
  FiniteField k = f.field();
  auto p = static_cast<int>(k.p());
  std::vector<FieldElement> c;
  for (int i = 0; i <= f.degree(); i += p) c.push_back(f.coeff(i).frobenius(k.m() - 1));
  return Poly(k, std::move(c));
}

void squarefree_decomposition(const Poly& f, int scale, std::vector<PolyFactor>& out) {
  Poly c = gcd(f, f.derivative());
  Poly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * scale});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) squarefree_decomposition(pth_root(c.monic()), scale * static_cast<int>(f.field().p()), out);
}

// Pairs (g_d, d) where g_d is the product of all degree-d factors of squarefree monic f.
std::vector<std::pair<Poly, int>> distinct_degree(Poly f) {
  std::vector<std::pair<Poly, int>> out;
  FiniteField k = f.field();
  Poly x = Poly::x(k);
  Poly h = x % f;
  int d = 1;
  while (f.degree() >= 2 * d) {
    h = pow_mod(h, Int(k.q()), f);
    Poly g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
    ++d;
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

void equal_degree(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  FiniteField k = g.field();
  std::uniform_int_distribution<std::uint64_t> pick(0, k.q() - 1);
  Int exponent = (boost::multiprecision::pow(Int(k.q()), d) - 1) / 2;
  for (;;) {
    std::vector<FieldElement> c;
    for (int i = 0; i < g.degree(); ++i) c.push_back(k.element(pick(rng)));
    Poly a(k, std::move(c));
    if (a.degree() < 1) continue;
    Poly b(k);
    if (k.p() == 2) {
      // Absolute trace to GF(2) splits half of the residue classes.
      Poly cur = a % g;
      b = cur;
      for (int i = 1; i < k.m() * d; ++i) {
        cur = (cur * cur) % g;
        b = b + cur;
      }
    } else {
      b = pow_mod(a, exponent, g) - Poly::constant(k.one());
    }
    Poly h = gcd(g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<PolyFactor> factor(const Poly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
  std::vector<PolyFactor> sqf;
  if (f.degree() > 0) squarefree_decomposition(f.monic(), 1, sqf);
  std::mt19937_64 rng(0x5eedf00dULL);
  std::vector<PolyFactor> out;
  for (const auto& [g, mult] : sqf) {
    for (const auto& [gd, d] : distinct_degree(g)) {
      std::vector<Poly> pieces;
      equal_degree(gd, d, rng, pieces);
      for (auto& piece : pieces) out.push_back({piece.monic(), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    return poly_less(a.factor, b.factor);
  });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  auto fs = factor(f);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) return false;
  return gcd(f, f.derivative()).degree() == 0;
}

std::vector<FieldElement> roots(const Poly& f) {
  std::vector<FieldElement> out;
  for (const auto& pf : factor(f)) {
    if (pf.factor.degree() == 1) out.push_back(-pf.factor.coeff(0));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FieldElement> roots_in_extension(const Poly& f, int s, std::uint64_t limit) {
  FiniteField k = f.field();
  FiniteField ext = make_field(k.p(), k.m() * s, limit);
  Embedding emb(k, ext);
  return roots(f.map(emb));
}

Embedding::Embedding(FiniteField base, FiniteField ext) : base_(std::move(base)), ext_(std::move(ext)) {
  if (base_.p() != ext_.p() || ext_.m() % base_.m() != 0) {
    throw Error(ErrorCode::NotASubfield, base_.describe() + " does not embed in " + ext_.describe());
  }
  if (base_.m() == 1) {
    powers_ = {ext_.one()};
    return;
  }
  Poly modulus = Poly::from_ints(ext_, base_.modulus());
  auto rs = roots(modulus);
  FieldElement rho = rs.front();
  FieldElement cur = ext_.one();
  for (int i = 0; i < base_.m(); ++i) {
    powers_.push_back(cur);
    cur = cur * rho;
  }
}

FieldElement Embedding::map(const FieldElement& x) const {
  if (x.field() != base_) throw Error(ErrorCode::FieldMismatch, "element outside embedding base");
  FieldElement acc = ext_.zero();
  for (int i = 0; i < base_.m(); ++i) {
    if (x.coeffs()[i] != 0) acc += powers_[i] * ext_.from_int(x.coeffs()[i]);
  }
  return acc;
}

std::optional<FieldElement> Embedding::preimage(const FieldElement& y) const {
  if (y.field() != ext_) throw Error(ErrorCode::FieldMismatch, "element outside embedding target");
  const std::int64_t p = ext_.p();
  const int a = base_.m();
  const int b = ext_.m();
  // Columns are images of the base power basis; last column is y.
  std::vector<std::vector<std::int64_t>> mat(b, std::vector<std::int64_t>(a + 1, 0));
  for (int r = 0; r < b; ++r) {
    for (int c = 0; c < a; ++c) mat[r][c] = powers_[c].coeffs()[r];
    mat[r][a] = y.coeffs()[r];
  }
  std::vector<int> pivot_col;
  int row = 0;
  for (int c = 0; c < a && row < b; ++c) {
    int piv = -1;
    for (int r = row; r < b; ++r) {
      if (mat[r][c] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(mat[row], mat[piv]);
    std::int64_t inv = inv_mod(mat[row][c], p);
    for (auto& v : mat[row]) v = mul_mod(v, inv, p);
    for (int r = 0; r < b; ++r) {
      if (r == row || mat[r][c] == 0) continue;
      std::int64_t k = mat[r][c];
      for (int cc = 0; cc <= a; ++cc) mat[r][cc] = mod_floor(mat[r][cc] - mul_mod(k, mat[row][cc], p), p);
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (int r = row; r < b; ++r) {
    if (mat[r][a] != 0) return std::nullopt;
  }
  std::vector<std::int64_t> coeffs(a, 0);
  for (int r = 0; r < row; ++r) coeffs[pivot_col[r]] = mat[r][a];
  return base_.from_coeffs(coeffs);
}

}  // namespace degen
