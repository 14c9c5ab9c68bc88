#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace degen {

// Arbitrary-precision integer for group orders and lattice work.
using Int = boost::multiprecision::cpp_int;

std::int64_t mod_floor(std::int64_t a, std::int64_t n);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n);
std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t n);
std::int64_t inv_mod(std::int64_t a, std::int64_t n);

bool is_prime(std::uint64_t n);

// Prime factorization by trial division; returns (prime, exponent) ascending.
std::vector<std::pair<std::uint64_t, int>> factor_integer(std::uint64_t n);

// (p, m) with q = p^m, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, int>> prime_power(std::uint64_t q);

// Smallest e >= 1 with a^e == 1 mod n; requires gcd(a, n) == 1 and n >= 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);

// a^e, or nullopt on overflow beyond limit.
std::optional<std::uint64_t> checked_pow(std::uint64_t a, std::uint64_t e,
                                         std::uint64_t limit = UINT64_MAX);

Int int_gcd(const Int& a, const Int& b);
Int int_abs(const Int& a);
bool fits_int64(const Int& a);
std::int64_t to_int64(const Int& a);

}  // namespace degen
