#pragma once

// Exact counting for a x^k - b y^k = sign inside dyadic boxes, the CRT count
// M(x, y, Z), and the inclusion-exclusion identity for A*_k(Z).

#include <optional>
#include <utility>
#include <vector>

#include "kfree/numeric.hpp"

namespace kfree {

/// x in (X, 2X], y in (Y, 2Y], b y^k in (Z, 2Z], for a x^k - b y^k = sign.
struct Box {
  Rational X;
  Rational Y;
  u64 Z = 1;
  unsigned k = 2;
  int sign = 1;

  /// Inclusive integer range of x (empty when first > second).
  std::pair<u64, u64> x_range() const;
  std::pair<u64, u64> y_range() const;

  /// Sides exchanged and sign flipped: the renamed equation b y^k - a x^k = 1.
  Box swapped() const;

  void validate() const;
};

/// A solution (a, b, x, y). With s = x/y, t = b/a and v = 1/(a y^k) the
/// equation dehomogenizes to t = s^k - sign * v.
struct Quadruple {
  u64 a = 0;
  u64 b = 0;
  u64 x = 0;
  u64 y = 0;
  int sign = 1;

  Rational s() const { return ratio(BigInt(x), BigInt(y)); }
  Rational t() const { return ratio(BigInt(b), BigInt(a)); }
  /// 1 / (a y^k).
  Rational v(unsigned k) const;

  /// a x^k - b y^k evaluated exactly.
  BigInt residual(unsigned k) const;

  auto operator<=>(const Quadruple& other) const {
    if (auto c = x <=> other.x; c != 0) return c;
    if (auto c = y <=> other.y; c != 0) return c;
    if (auto c = a <=> other.a; c != 0) return c;
    return b <=> other.b;
  }
  bool operator==(const Quadruple&) const = default;
};

/// Number of n in (Z, 2Z] with x^k | n + 1 and y^k | n.
u64 exact_M(u64 x, u64 y, u64 Z, unsigned k);

/// Solutions with the given (x, y), in increasing a. Empty unless both
/// coordinates lie in the box.
std::vector<Quadruple> solutions_for_pair(const Box& box, u64 x, u64 y);
u64 count_for_pair(const Box& box, u64 x, u64 y);

/// All solutions in the box, sorted by (x, y, a).
std::vector<Quadruple> enumerate_solutions(const Box& box);
u64 count_N(const Box& box);

/// Dyadic boxes X = 2^i / 2, Y = 2^j / 2 (sign +1) meeting
/// {(x, y) : xy > P, x^k <= 2Z + 1, y^k <= 2Z}.
std::vector<Box> dyadic_boxes(const Rational& P, u64 Z, unsigned k);

/// sum over (x, y) in the box with xy > P, x^k <= 2Z + 1, y^k <= 2Z of
/// mu(x) mu(y) M(x, y, Z).
i64 tail_contribution(const Box& box, const Rational& P);

/// sum over all x^k <= 2Z + 1, y^k <= 2Z of mu(x) mu(y) M(x, y, Z).
i64 inclusion_exclusion_Astar(u64 Z, unsigned k);

/// sum over xy <= P, gcd(x, y) = 1 of mu(x) mu(y) M(x, y, Z).
i64 main_term(const Rational& P, u64 Z, unsigned k);

}  // namespace kfree
