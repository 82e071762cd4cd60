#pragma once

// Exact integer and rational helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace kfree {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

using BigInt = mpz_class;
using Rational = mpq_class;

/// Inputs are accepted only while 2Z + 1 stays below this bound.
inline constexpr u64 kMaxArgument = (u64{1} << 62) - 1;

/// base^exp if it does not exceed `limit`, otherwise nullopt.
std::optional<u64> checked_pow(u64 base, unsigned exp, u64 limit = ~u64{0});

/// Largest r with r^k <= n.
u64 iroot(u64 n, unsigned k);

u64 gcd(u64 a, u64 b);

/// Inverse of a modulo m (m >= 1). Returns nullopt when gcd(a, m) != 1.
/// For m == 1 the inverse is 0.
std::optional<u64> mod_inverse(u64 a, u64 m);

/// num/den in lowest terms (gmpxx's two-argument constructor does not reduce).
Rational ratio(const BigInt& num, const BigInt& den);

BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);

/// Largest integer j with 2^j <= q, for q > 0.
long floor_log2(const Rational& q);

/// 2^j as a rational, j may be negative.
Rational pow2(long j);

Rational pow(const Rational& q, unsigned exp);
BigInt pow(const BigInt& q, unsigned exp);

/// Rational upper bound for sqrt(q) with absolute error below 2^-precision_bits.
Rational sqrt_upper(const Rational& q, unsigned precision_bits = 40);
/// Rational lower bound for sqrt(q) with absolute error below 2^-precision_bits.
Rational sqrt_lower(const Rational& q, unsigned precision_bits = 40);

/// Always "p/q", also for integers.
std::string to_string(const Rational& q);
/// Parses "p/q", "p" or a terminating decimal such as "0.1".
Rational parse_rational(const std::string& text);

u64 to_u64(const BigInt& n);

}  // namespace kfree
