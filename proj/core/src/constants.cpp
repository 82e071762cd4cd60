#include "kfree/constants.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "kfree/sieve.hpp"

namespace kfree {

namespace {

void check_k(unsigned k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2, got " + std::to_string(k));
}

void check_digits(int digits) {
  if (digits < 40) throw std::invalid_argument("enclosures need at least 40 digits");
}

BigInt power(u64 base, unsigned k) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, k);
  return out;
}

// d(n) for n <= limit.
std::vector<std::uint32_t> divisor_counts(u64 limit) {
  std::vector<std::uint32_t> d(limit + 1, 0);
  for (u64 i = 1; i <= limit; ++i) {
    for (u64 j = i; j <= limit; j += i) ++d[j];
  }
  return d;
}

}  // namespace

Decimal Enclosure::midpoint() const {
  return Decimal::from_rational((lower.to_rational() + upper.to_rational()) / 2, Rounding::Nearest,
                                lower.digits());
}

bool Enclosure::contains(const Rational& x) const {
  return lower.to_rational() <= x && x <= upper.to_rational();
}

Rational distance(const Enclosure& e, const Rational& x) {
  Rational lo = e.lower.to_rational(), hi = e.upper.to_rational();
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return Rational(0);
}

Enclosure euler_product_ck(unsigned k, u64 P, int digits) {
  check_k(k);
  check_digits(digits);
  if (P == 0) throw std::invalid_argument("euler_product_ck: cutoff must be positive");

  Decimal lower = Decimal::from_integer(1, digits);
  Decimal upper = lower;
  for (u64 p : primes_up_to(P)) {
    const BigInt pk = power(p, k);
    // 1 - 2/p^k is positive for every p >= 2 once k >= 2.
    const BigInt num = pk - 2;
    lower = lower.multiply(Decimal::from_ratio(num, pk, Rounding::Down, digits), Rounding::Down);
    upper = upper.multiply(Decimal::from_ratio(num, pk, Rounding::Up, digits), Rounding::Up);
  }

  // sum_{n > P} 2/n^k <= 2 / ((k - 1) P^(k-1))
  const BigInt tail_den = BigInt(k - 1) * power(P, k - 1);
  const Decimal tail = Decimal::from_ratio(2, tail_den, Rounding::Up, digits);
  const Decimal one = Decimal::from_integer(1, digits);
  const Decimal zero(digits);
  Decimal factor = one - tail;
  if (factor < zero) factor = zero;
  lower = max(zero, lower.multiply(factor, Rounding::Down));
  return Enclosure{lower, upper, P};
}

Enclosure zeta_enclosure(unsigned k, u64 N, int digits) {
  check_k(k);
  check_digits(digits);
  if (N == 0) throw std::invalid_argument("zeta_enclosure: N must be positive");

  Decimal lower(digits), upper(digits);
  for (u64 n = 1; n <= N; ++n) {
    const BigInt nk = power(n, k);
    lower = lower + Decimal::from_ratio(1, nk, Rounding::Down, digits);
    upper = upper + Decimal::from_ratio(1, nk, Rounding::Up, digits);
  }
  // integral_{N+1}^inf x^-k dx <= sum_{n > N} n^-k <= integral_N^inf x^-k dx
  const BigInt km1 = k - 1;
  lower = lower + Decimal::from_ratio(1, km1 * power(N + 1, k - 1), Rounding::Down, digits);
  upper = upper + Decimal::from_ratio(1, km1 * power(N, k - 1), Rounding::Up, digits);
  return Enclosure{lower, upper, N};
}

Decimal dirichlet_partial(unsigned k, u64 N, int digits) {
  check_k(k);
  if (N == 0) throw std::invalid_argument("dirichlet_partial: N must be positive");
  const auto mu = moebius_table(N);
  const auto d = divisor_counts(N);
  // Sum exactly at extra precision, round once at the end.
  const int work = digits + 10;
  Decimal sum(work);
  for (u64 n = 1; n <= N; ++n) {
    if (mu[n] == 0) continue;
    const BigInt num = BigInt(mu[n]) * BigInt(d[n]);
    sum = sum + Decimal::from_ratio(num, power(n, k), Rounding::Nearest, work);
  }
  return sum.rescale(digits, Rounding::Nearest);
}

}  // namespace kfree
