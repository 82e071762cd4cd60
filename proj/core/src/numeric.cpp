#include "kfree/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace kfree {

std::optional<u64> checked_pow(u64 base, unsigned exp, u64 limit) {
  u128 acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > limit) return std::nullopt;
  }
  return static_cast<u64>(acc);
}

u64 iroot(u64 n, unsigned k) {
  if (k == 0) throw std::invalid_argument("iroot: k must be positive");
  if (k == 1 || n < 2) return n;
  // Floating estimate, then exact correction in both directions.
  u64 r = static_cast<u64>(std::pow(static_cast<long double>(n), 1.0L / k));
  while (r > 0 && !checked_pow(r, k, n)) --r;
  while (checked_pow(r + 1, k, n)) ++r;
  return r;
}

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::optional<u64> mod_inverse(u64 a, u64 m) {
  if (m == 0) throw std::invalid_argument("mod_inverse: zero modulus");
  if (m == 1) return u64{0};
  i128 old_r = a % m, r = m;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    i128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) return std::nullopt;
  i128 inv = old_s % static_cast<i128>(m);
  if (inv < 0) inv += m;
  return static_cast<u64>(inv);
}

Rational ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("ratio: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigInt floor_of(const Rational& q) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

BigInt ceil_of(const Rational& q) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

long floor_log2(const Rational& q) {
  if (sgn(q) <= 0) throw std::domain_error("floor_log2: non-positive argument");
  long j = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  while (pow2(j) > q) --j;
  while (pow2(j + 1) <= q) ++j;
  return j;
}

Rational pow2(long j) {
  BigInt p;
  unsigned long e = static_cast<unsigned long>(j < 0 ? -j : j);
  mpz_ui_pow_ui(p.get_mpz_t(), 2, e);
  if (j >= 0) return Rational(p);
  return Rational(BigInt(1), p);
}

Rational pow(const Rational& q, unsigned exp) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), exp);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

BigInt pow(const BigInt& q, unsigned exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), q.get_mpz_t(), exp);
  return out;
}

namespace {

// floor(sqrt(q * 4^bits)) or its ceiling, as an integer.
BigInt scaled_sqrt(const Rational& q, unsigned bits, bool upper) {
  if (sgn(q) < 0) throw std::domain_error("sqrt of negative rational");
  BigInt shifted = q.get_num();
  mpz_mul_2exp(shifted.get_mpz_t(), shifted.get_mpz_t(), 2 * bits);
  BigInt scaled;
  if (upper) {
    mpz_cdiv_q(scaled.get_mpz_t(), shifted.get_mpz_t(), q.get_den_mpz_t());
  } else {
    mpz_fdiv_q(scaled.get_mpz_t(), shifted.get_mpz_t(), q.get_den_mpz_t());
  }
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  if (upper && root * root < scaled) root += 1;
  return root;
}

}  // namespace

Rational sqrt_upper(const Rational& q, unsigned precision_bits) {
  Rational out(scaled_sqrt(q, precision_bits, true), BigInt(1));
  return out / pow2(precision_bits);
}

Rational sqrt_lower(const Rational& q, unsigned precision_bits) {
  Rational out(scaled_sqrt(q, precision_bits, false), BigInt(1));
  return out / pow2(precision_bits);
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto dot = text.find('.');
  Rational out;
  try {
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      BigInt num(digits, 10);
      BigInt den = pow(BigInt(10), static_cast<unsigned>(text.size() - dot - 1));
      out = Rational(num, den);
    } else {
      out = Rational(text, 10);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  if (out.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  out.canonicalize();
  return out;
}

u64 to_u64(const BigInt& n) {
  if (sgn(n) < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64) {
    throw std::overflow_error("value does not fit in 64 bits: " + n.get_str());
  }
  u64 out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

}  // namespace kfree
