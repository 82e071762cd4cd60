#include "kfree/decimal.hpp"

#include <stdexcept>

namespace kfree {

namespace {

BigInt ten_pow(int digits) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  return out;
}

BigInt divide(const BigInt& num, const BigInt& den, Rounding mode) {
  if (den == 0) throw std::domain_error("Decimal: division by zero");
  BigInt q;
  switch (mode) {
    case Rounding::Down:
      mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      break;
    case Rounding::Up:
      mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      break;
    case Rounding::Nearest: {
      // floor((2 num + den) / (2 den)) for den > 0
      BigInt n2 = 2 * num, d2 = 2 * den;
      if (d2 < 0) {
        n2 = -n2;
        d2 = -d2;
      }
      n2 += d2 / 2;
      mpz_fdiv_q(q.get_mpz_t(), n2.get_mpz_t(), d2.get_mpz_t());
      break;
    }
  }
  return q;
}

}  // namespace

Decimal::Decimal(int digits) : mantissa_(0), digits_(digits) {
  if (digits < 0) throw std::invalid_argument("Decimal: negative digit count");
}

Decimal::Decimal(BigInt mantissa, int digits) : mantissa_(std::move(mantissa)), digits_(digits) {}

Decimal Decimal::from_integer(const BigInt& n, int digits) {
  return Decimal(n * ten_pow(digits), digits);
}

Decimal Decimal::from_ratio(const BigInt& num, const BigInt& den, Rounding mode, int digits) {
  return Decimal(divide(num * ten_pow(digits), den, mode), digits);
}

Decimal Decimal::from_rational(const Rational& q, Rounding mode, int digits) {
  return from_ratio(q.get_num(), q.get_den(), mode, digits);
}

Decimal Decimal::multiply(const Decimal& other, Rounding mode) const {
  require_same_scale(other);
  return Decimal(divide(mantissa_ * other.mantissa_, ten_pow(digits_), mode), digits_);
}

Decimal Decimal::rescale(int digits, Rounding mode) const {
  if (digits >= digits_) return Decimal(mantissa_ * ten_pow(digits - digits_), digits);
  return Decimal(divide(mantissa_, ten_pow(digits_ - digits), mode), digits);
}

Decimal Decimal::operator+(const Decimal& other) const {
  require_same_scale(other);
  return Decimal(mantissa_ + other.mantissa_, digits_);
}

Decimal Decimal::operator-(const Decimal& other) const {
  require_same_scale(other);
  return Decimal(mantissa_ - other.mantissa_, digits_);
}

Decimal Decimal::operator-() const { return Decimal(-mantissa_, digits_); }

std::strong_ordering Decimal::operator<=>(const Decimal& other) const {
  require_same_scale(other);
  int c = cmp(mantissa_, other.mantissa_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool Decimal::operator==(const Decimal& other) const {
  require_same_scale(other);
  return mantissa_ == other.mantissa_;
}

Rational Decimal::to_rational() const {
  Rational q(mantissa_, ten_pow(digits_));
  q.canonicalize();
  return q;
}

double Decimal::to_double() const { return to_rational().get_d(); }

std::string Decimal::to_string() const {
  BigInt mag = abs(mantissa_);
  std::string s = mag.get_str();
  if (static_cast<int>(s.size()) <= digits_) s.insert(0, digits_ + 1 - s.size(), '0');
  if (digits_ > 0) s.insert(s.size() - digits_, ".");
  if (sgn(mantissa_) < 0) s.insert(0, "-");
  return s;
}

void Decimal::require_same_scale(const Decimal& other) const {
  if (digits_ != other.digits_) throw std::invalid_argument("Decimal: mismatched precision");
}

Decimal max(const Decimal& a, const Decimal& b) { return a < b ? b : a; }
Decimal min(const Decimal& a, const Decimal& b) { return b < a ? b : a; }

}  // namespace kfree
