#include "degen/intmath.hpp"

#include <limits>
#include <numeric>

#include "degen/error.hpp"

namespace degen {

namespace {
__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;
}  // namespace

std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>(
      (static_cast<i128>(mod_floor(a, n)) * mod_floor(b, n)) % n);
}

std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t n) {
  std::int64_t result = 1 % n;
  std::int64_t base = mod_floor(a, n);
  while (e > 0) {
    if (e & 1U) result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    e >>= 1U;
  }
  return result;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t n) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = n, new_r = mod_floor(a, n);
  while (new_r != 0) {
    std::int64_t quotient = r / new_r;
    std::int64_t tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw Error(ErrorCode::ZeroElement, "value not invertible modulo " + std::to_string(n));
  return mod_floor(t, n);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  auto mulm = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % n);
  };
  auto powm = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e > 0) {
      if (e & 1U) r = mulm(r, a);
      a = mulm(a, a);
      e >>= 1U;
    }
    return r;
  };
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powm(a % n, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulm(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, int>> factor_integer(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::optional<std::pair<std::uint64_t, int>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto f = factor_integer(q);
  if (f.size() != 1) return std::nullopt;
  return std::make_pair(f[0].first, f[0].second);
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 1;
  if (std::gcd(a % n, n) != 1) {
    throw Error(ErrorCode::InvalidInput, "multiplicative order requires a unit");
  }
  // Order divides phi(n); shrink phi(n) prime by prime.
  std::uint64_t phi = n;
  for (auto [p, e] : factor_integer(n)) phi = phi / p * (p - 1);
  std::uint64_t order = phi;
  for (auto [p, e] : factor_integer(phi)) {
    (void)e;
    while (order % p == 0 &&
           pow_mod(static_cast<std::int64_t>(a % n), order / p, static_cast<std::int64_t>(n)) == 1) {
      order /= p;
    }
  }
  return order;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t a, std::uint64_t e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (a != 0 && r > limit / a) return std::nullopt;
    r *= a;
  }
  if (r > limit) return std::nullopt;
  return r;
}

Int int_gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

bool fits_int64(const Int& a) {
  return a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t to_int64(const Int& a) {
  if (!fits_int64(a)) throw Error(ErrorCode::TooLarge, "integer exceeds 64 bits");
  return a.convert_to<std::int64_t>();
}

}  // namespace degen
