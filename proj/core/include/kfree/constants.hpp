#pragma once

// Rigorous enclosures for c_k = prod_p (1 - 2/p^k) and zeta(k).
//
// Partial products and sums are carried twice, once rounded down and once
// rounded up; the tail past the cutoff is bounded by an integral comparison
// over all integers, which is crude but valid.

#include "kfree/decimal.hpp"
#include "kfree/numeric.hpp"

namespace kfree {

struct Enclosure {
  Decimal lower;
  Decimal upper;
  /// Largest prime (or summation index) used.
  u64 cutoff = 0;

  Decimal width() const { return upper - lower; }
  Decimal midpoint() const;
  bool contains(const Decimal& x) const { return lower <= x && x <= upper; }
  bool contains(const Rational& x) const;
};

/// Distance from x to the enclosure (0 when inside).
Rational distance(const Enclosure& e, const Rational& x);

Enclosure euler_product_ck(unsigned k, u64 P, int digits = Decimal::kDefaultDigits);
Enclosure zeta_enclosure(unsigned k, u64 N, int digits = Decimal::kDefaultDigits);

/// sum_{n <= N} mu(n) d(n) / n^k, each term rounded to nearest.
Decimal dirichlet_partial(unsigned k, u64 N, int digits = Decimal::kDefaultDigits);

}  // namespace kfree
