#include "degen/parse.hpp"

#include <cctype>
#include <map>

#include "degen/error.hpp"

namespace degen {

namespace {

constexpr int kMaxExponent = 4096;

using Monomial = std::vector<int>;
using Sparse = std::map<Monomial, Int>;

void add_into(Sparse& acc, const Monomial& mono, const Int& c) {
  Int& slot = acc[mono];
  slot += c;
  if (slot == 0) acc.erase(mono);
}

Sparse add(const Sparse& a, const Sparse& b, int sign) {
  Sparse out = a;
  for (const auto& [m, c] : b) add_into(out, m, sign > 0 ? c : Int(-c));
  return out;
}

Sparse mul(const Sparse& a, const Sparse& b) {
  Sparse out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      add_into(out, m, ca * cb);
    }
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view vars) : s_(text), vars_(vars) {}

  Sparse run() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "empty expression");
    Sparse e = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected token");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    std::string tok = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
    throw SyntaxError(pos_, what + " " + tok);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Sparse constant(const Int& c) {
    Sparse out;
    if (c != 0) out[Monomial(vars_.size(), 0)] = c;
    return out;
  }

  Sparse expr() {
    Sparse acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc = add(acc, term(), +1);
      } else if (peek('-')) {
        ++pos_;
        acc = add(acc, term(), -1);
      } else {
        return acc;
      }
    }
  }

  Sparse term() {
    Sparse acc = unary();
    while (peek('*')) {
      ++pos_;
      acc = mul(acc, unary());
    }
    return acc;
  }

  Sparse unary() {
    if (peek('-')) {
      ++pos_;
      return add(constant(0), unary(), -1);
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Sparse power() {
    Sparse base = primary();
    if (!peek('^')) return base;
    ++pos_;
    skip();
    std::size_t start = pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent, found");
    long e = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      e = e * 10 + (s_[pos_] - '0');
      if (e > kMaxExponent) throw SyntaxError(start, "exponent too large");
      ++pos_;
    }
    Sparse out = constant(1);
    for (long i = 0; i < e; ++i) out = mul(out, base);
    return out;
  }

  Sparse primary() {
    skip();
    if (pos_ >= s_.size()) fail("expected operand, found");
    char c = s_[pos_];
    Sparse out;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = v * 10 + (s_[pos_] - '0');
        ++pos_;
      }
      out = constant(v);
    } else if (c == '(') {
      ++pos_;
      out = expr();
      if (!peek(')')) fail("expected ')', found");
      ++pos_;
    } else if (auto idx = vars_.find(c); idx != std::string_view::npos) {
      ++pos_;
      Monomial m(vars_.size(), 0);
      m[idx] = 1;
      out[m] = 1;
    } else {
      fail("unexpected token");
    }
    // Juxtaposition such as "2x" or "x y" is not part of the grammar.
    skip();
    if (pos_ < s_.size()) {
      char n = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(n)) || n == '(') fail("missing operator before");
    }
    return out;
  }

  std::string_view s_;
  std::string_view vars_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Int> parse_univariate(std::string_view text) {
  Sparse poly = Parser(text, "x").run();
  std::vector<Int> out;
  for (const auto& [m, c] : poly) {
    auto d = static_cast<std::size_t>(m[0]);
    if (out.size() <= d) out.resize(d + 1, 0);
    out[d] = c;
  }
  return out;
}

const std::vector<std::array<int, 4>>& cubic_monomials() {
  static const std::vector<std::array<int, 4>> monos = [] {
    std::vector<std::array<int, 4>> v;
    for (int a = 3; a >= 0; --a) {
      for (int b = 3 - a; b >= 0; --b) {
        for (int c = 3 - a - b; c >= 0; --c) v.push_back({a, b, c, 3 - a - b - c});
      }
    }
    return v;
  }();
  return monos;
}

std::vector<Int> parse_cubic_form(std::string_view text) {
  Sparse poly = Parser(text, "XYZW").run();
  const auto& monos = cubic_monomials();
  std::vector<Int> out(monos.size(), 0);
  for (const auto& [m, c] : poly) {
    if (m[0] + m[1] + m[2] + m[3] != 3) {
      throw Error(ErrorCode::InvalidInput, "form is not a homogeneous cubic in X, Y, Z, W");
    }
    for (std::size_t i = 0; i < monos.size(); ++i) {
      if (monos[i][0] == m[0] && monos[i][1] == m[1] && monos[i][2] == m[2] && monos[i][3] == m[3]) out[i] = c;
    }
  }
  return out;
}

namespace {

std::string format_terms(const std::vector<std::pair<std::string, Int>>& terms) {
  std::string out;
  for (const auto& [mono, c] : terms) {
    if (c == 0) continue;
    Int a = c < 0 ? Int(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? "-" : "+";
    }
    if (mono.empty()) {
      out += a.str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.str() + "*" + mono;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string format_univariate(const std::vector<Int>& coeffs, const std::string& var) {
  std::vector<std::pair<std::string, Int>> terms;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    terms.emplace_back(mono, coeffs[i]);
  }
  return format_terms(terms);
}

std::string format_cubic_form(const std::vector<Int>& coeffs) {
  static const char names[4] = {'X', 'Y', 'Z', 'W'};
  const auto& monos = cubic_monomials();
  std::vector<std::pair<std::string, Int>> terms;
  for (std::size_t i = 0; i < monos.size() && i < coeffs.size(); ++i) {
    std::string mono;
    for (int v = 0; v < 4; ++v) {
      if (monos[i][v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (monos[i][v] > 1) mono += "^" + std::to_string(monos[i][v]);
    }
    terms.emplace_back(mono, coeffs[i]);
  }
  return format_terms(terms);
}

}  // namespace degen
