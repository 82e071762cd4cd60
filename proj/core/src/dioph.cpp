#include "kfree/dioph.hpp"

#include <stdexcept>
#include <string>

#include "kfree/sieve.hpp"

namespace kfree {

namespace {

void check_common(u64 Z, unsigned k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2, got " + std::to_string(k));
  if (Z == 0 || Z > kMaxArgument) {
    throw std::out_of_range("Z = " + std::to_string(Z) + " outside [1, 2^62)");
  }
}

// (lo, hi] -> inclusive integer range [floor(lo) + 1, floor(hi)], clamped to u64.
std::pair<u64, u64> integer_range(const Rational& lo, const Rational& hi) {
  BigInt first = floor_of(lo) + 1;
  BigInt last = floor_of(hi);
  if (first < 1) first = 1;
  if (last < first) return {1, 0};
  const BigInt cap = BigInt(std::to_string(kMaxArgument));
  if (first > cap) return {1, 0};
  if (last > cap) last = cap;
  return {to_u64(first), to_u64(last)};
}

// Count of j in (lo, hi] with j = r mod m.
u64 count_progression(u64 lo, u64 hi, u64 r, u64 m) {
  if (hi <= lo) return 0;
  auto upto = [&](u64 n) -> u64 {  // #{0 <= j <= n : j = r mod m}
    if (n < r) return 0;
    return (n - r) / m + 1;
  };
  return upto(hi) - upto(lo);
}

struct PairSetup {
  u64 xk = 0;
  u64 yk = 0;
  u64 residue = 0;  // a = residue mod yk
  u64 a_lo = 0;     // a in (a_lo, a_hi]
  u64 a_hi = 0;
};

// a x^k - b y^k = sign with b y^k in (Z, 2Z] means a x^k in (Z + sign, 2Z + sign]
// and a = sign * (x^k)^-1 mod y^k.
std::optional<PairSetup> setup_pair(const Box& box, u64 x, u64 y) {
  const u64 Z = box.Z;
  const auto xk = checked_pow(x, box.k, 2 * Z + 1);
  const auto yk = checked_pow(y, box.k, 2 * Z);
  if (!xk || !yk) return std::nullopt;
  if (gcd(x, y) != 1) return std::nullopt;
  const auto inv = mod_inverse(*xk % *yk, *yk);
  if (!inv) return std::nullopt;
  PairSetup s;
  s.xk = *xk;
  s.yk = *yk;
  s.residue = (box.sign > 0 || *inv == 0) ? *inv : *yk - *inv;
  const u64 lo_value = box.sign > 0 ? Z + 1 : Z - 1;
  const u64 hi_value = box.sign > 0 ? 2 * Z + 1 : 2 * Z - 1;
  s.a_lo = lo_value / s.xk;
  s.a_hi = hi_value / s.xk;
  return s;
}

bool in_range(u64 v, std::pair<u64, u64> r) { return r.first <= v && v <= r.second; }

}  // namespace

std::pair<u64, u64> Box::x_range() const { return integer_range(X, 2 * X); }
std::pair<u64, u64> Box::y_range() const { return integer_range(Y, 2 * Y); }

Box Box::swapped() const { return Box{Y, X, Z, k, -sign}; }

void Box::validate() const {
  check_common(Z, k);
  if (sgn(X) <= 0 || sgn(Y) <= 0) throw std::invalid_argument("box sides must be positive");
  if (sign != 1 && sign != -1) throw std::invalid_argument("box sign must be +1 or -1");
}

Rational Quadruple::v(unsigned k) const {
  return ratio(BigInt(1), BigInt(a) * pow(BigInt(y), k));
}

BigInt Quadruple::residual(unsigned k) const {
  return BigInt(a) * pow(BigInt(x), k) - BigInt(b) * pow(BigInt(y), k);
}

u64 exact_M(u64 x, u64 y, u64 Z, unsigned k) {
  check_common(Z, k);
  if (x == 0 || y == 0) throw std::invalid_argument("exact_M: x and y must be positive");
  if (gcd(x, y) != 1) return 0;
  // n = y^k j with n + 1 = 0 mod x^k; n + 1 <= 2Z + 1 and n <= 2Z bound both powers.
  const auto xk = checked_pow(x, k, 2 * Z + 1);
  const auto yk = checked_pow(y, k, 2 * Z);
  if (!xk || !yk) return 0;
  const auto inv = mod_inverse(*yk % *xk, *xk);
  if (!inv) return 0;
  const u64 r = (*inv == 0) ? 0 : *xk - *inv;  // j = -(y^k)^-1 mod x^k
  return count_progression(Z / *yk, 2 * Z / *yk, r, *xk);
}

std::vector<Quadruple> solutions_for_pair(const Box& box, u64 x, u64 y) {
  std::vector<Quadruple> out;
  if (!in_range(x, box.x_range()) || !in_range(y, box.y_range())) return out;
  const auto s = setup_pair(box, x, y);
  if (!s) return out;
  // smallest a > a_lo with a = residue mod yk
  u64 a = s->a_lo + 1;
  const u64 shift = (s->residue + s->yk - a % s->yk) % s->yk;
  for (a += shift; a <= s->a_hi; a += s->yk) {
    const u128 axk = static_cast<u128>(a) * s->xk;
    const u128 byk = box.sign > 0 ? axk - 1 : axk + 1;
    out.push_back(Quadruple{a, static_cast<u64>(byk / s->yk), x, y, box.sign});
  }
  return out;
}

u64 count_for_pair(const Box& box, u64 x, u64 y) {
  if (!in_range(x, box.x_range()) || !in_range(y, box.y_range())) return 0;
  const auto s = setup_pair(box, x, y);
  if (!s) return 0;
  return count_progression(s->a_lo, s->a_hi, s->residue, s->yk);
}

std::vector<Quadruple> enumerate_solutions(const Box& box) {
  box.validate();
  std::vector<Quadruple> out;
  const auto [x_lo, x_hi] = box.x_range();
  const auto [y_lo, y_hi] = box.y_range();
  const u64 x_cap = iroot(2 * box.Z + 1, box.k);
  const u64 y_cap = iroot(2 * box.Z, box.k);
  for (u64 x = x_lo; x <= x_hi && x <= x_cap; ++x) {
    for (u64 y = y_lo; y <= y_hi && y <= y_cap; ++y) {
      auto sols = solutions_for_pair(box, x, y);
      out.insert(out.end(), sols.begin(), sols.end());
    }
  }
  return out;
}

u64 count_N(const Box& box) {
  box.validate();
  u64 total = 0;
  const auto [x_lo, x_hi] = box.x_range();
  const auto [y_lo, y_hi] = box.y_range();
  const u64 x_cap = iroot(2 * box.Z + 1, box.k);
  const u64 y_cap = iroot(2 * box.Z, box.k);
  for (u64 x = x_lo; x <= x_hi && x <= x_cap; ++x) {
    for (u64 y = y_lo; y <= y_hi && y <= y_cap; ++y) total += count_for_pair(box, x, y);
  }
  return total;
}

std::vector<Box> dyadic_boxes(const Rational& P, u64 Z, unsigned k) {
  check_common(Z, k);
  if (sgn(P) <= 0) throw std::invalid_argument("dyadic_boxes: P must be positive");
  const u64 x_cap = iroot(2 * Z + 1, k);
  const u64 y_cap = iroot(2 * Z, k);
  const Rational half(1, 2);
  std::vector<Box> out;
  // Box side 2^i / 2 covers x in (2^(i-1), 2^i].
  for (Rational X = half; X < x_cap; X *= 2) {
    const u64 x_top = std::min<u64>(to_u64(floor_of(2 * X)), x_cap);
    for (Rational Y = half; Y < y_cap; Y *= 2) {
      const u64 y_top = std::min<u64>(to_u64(floor_of(2 * Y)), y_cap);
      if (Rational(BigInt(x_top) * BigInt(y_top)) > P) out.push_back(Box{X, Y, Z, k, 1});
    }
  }
  return out;
}

i64 tail_contribution(const Box& box, const Rational& P) {
  box.validate();
  const auto [x_lo, x_hi] = box.x_range();
  const auto [y_lo, y_hi] = box.y_range();
  const u64 x_cap = iroot(2 * box.Z + 1, box.k);
  const u64 y_cap = iroot(2 * box.Z, box.k);
  const auto mu = moebius_table(std::max(std::min(x_hi, x_cap), std::min(y_hi, y_cap)));
  const BigInt p_floor = floor_of(P);
  i64 total = 0;
  for (u64 x = x_lo; x <= x_hi && x <= x_cap; ++x) {
    if (mu[x] == 0) continue;
    for (u64 y = y_lo; y <= y_hi && y <= y_cap; ++y) {
      if (mu[y] == 0 || BigInt(x) * BigInt(y) <= p_floor) continue;
      total += mu[x] * mu[y] * static_cast<i64>(exact_M(x, y, box.Z, box.k));
    }
  }
  return total;
}

i64 inclusion_exclusion_Astar(u64 Z, unsigned k) {
  check_common(Z, k);
  const u64 x_cap = iroot(2 * Z + 1, k);
  const u64 y_cap = iroot(2 * Z, k);
  const auto mu = moebius_table(x_cap);
  i64 total = 0;
  for (u64 x = 1; x <= x_cap; ++x) {
    if (mu[x] == 0) continue;
    for (u64 y = 1; y <= y_cap; ++y) {
      if (mu[y] == 0) continue;
      total += mu[x] * mu[y] * static_cast<i64>(exact_M(x, y, Z, k));
    }
  }
  return total;
}

i64 main_term(const Rational& P, u64 Z, unsigned k) {
  check_common(Z, k);
  if (sgn(P) <= 0) throw std::invalid_argument("main_term: P must be positive");
  const u64 x_cap = iroot(2 * Z + 1, k);
  const u64 y_cap = iroot(2 * Z, k);
  const BigInt p_floor = floor_of(P);
  const u64 limit = p_floor > BigInt(std::to_string(kMaxArgument)) ? kMaxArgument : to_u64(p_floor);
  const auto mu = moebius_table(x_cap);
  i64 total = 0;
  for (u64 x = 1; x <= x_cap && x <= limit; ++x) {
    if (mu[x] == 0) continue;
    for (u64 y = 1; y <= y_cap && y <= limit / x; ++y) {
      if (mu[y] == 0 || gcd(x, y) != 1) continue;
      total += mu[x] * mu[y] * static_cast<i64>(exact_M(x, y, Z, k));
    }
  }
  return total;
}

}  // namespace kfree
