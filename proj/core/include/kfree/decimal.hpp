#pragma once

#include <compare>
#include <string>

#include "kfree/numeric.hpp"

namespace kfree {

enum class Rounding { Down, Up, Nearest };

/// Fixed-point decimal: an integer mantissa scaled by 10^-digits.
///
/// Every operation that can lose information takes an explicit rounding
/// direction, so lower and upper bounds can be carried side by side.
class Decimal {
 public:
  static constexpr int kDefaultDigits = 50;

  explicit Decimal(int digits = kDefaultDigits);

  static Decimal from_integer(const BigInt& n, int digits = kDefaultDigits);
  static Decimal from_ratio(const BigInt& num, const BigInt& den, Rounding mode,
                            int digits = kDefaultDigits);
  static Decimal from_rational(const Rational& q, Rounding mode, int digits = kDefaultDigits);

  int digits() const { return digits_; }
  const BigInt& mantissa() const { return mantissa_; }

  Decimal multiply(const Decimal& other, Rounding mode) const;
  /// Same value at another precision.
  Decimal rescale(int digits, Rounding mode) const;

  Decimal operator+(const Decimal& other) const;
  Decimal operator-(const Decimal& other) const;
  Decimal operator-() const;

  std::strong_ordering operator<=>(const Decimal& other) const;
  bool operator==(const Decimal& other) const;

  Rational to_rational() const;
  double to_double() const;
  /// Fixed notation with all stored digits, e.g. "0.3226...".
  std::string to_string() const;

 private:
  Decimal(BigInt mantissa, int digits);
  void require_same_scale(const Decimal& other) const;

  BigInt mantissa_;
  int digits_;
};

Decimal max(const Decimal& a, const Decimal& b);
Decimal min(const Decimal& a, const Decimal& b);

}  // namespace kfree
