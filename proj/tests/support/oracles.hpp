#pragma once

// Independent reference implementations used only by the tests. None of
// these call into the library's algorithms; they trade speed for obviousness.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// ---------------------------------------------------------------------------
// Integers

inline bool is_kfree(u64 n, unsigned k) {
  for (u64 p = 2; p * p <= n || (k == 1 && p <= n); ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e >= k) return false;
  }
  return true;  // leftover n is 1 or a single prime
}

inline int moebius(u64 n) {
  int m = 1;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}

/// Prefix table: pairs[Z] = #{n <= Z : n, n+1 both k-free}.
inline std::vector<u64> pair_prefix(u64 Zmax, unsigned k) {
  std::vector<char> free(Zmax + 2);
  for (u64 n = 1; n <= Zmax + 1; ++n) free[n] = is_kfree(n, k);
  std::vector<u64> out(Zmax + 1, 0);
  for (u64 n = 1; n <= Zmax; ++n) out[n] = out[n - 1] + (free[n] && free[n + 1]);
  return out;
}

inline std::vector<u64> plain_primes(u64 limit) {
  std::vector<bool> comp(limit + 1, false);
  std::vector<u64> ps;
  for (u64 i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    ps.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
  }
  return ps;
}

inline u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

// ---------------------------------------------------------------------------
// Real constants in MPFR

struct MpfrValue {
  explicit MpfrValue(mpfr_prec_t prec = 256) { mpfr_init2(v, prec); }
  ~MpfrValue() { mpfr_clear(v); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;

  mpq_class to_rational() const {
    mpz_class m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
    mpq_class q(m);
    if (e >= 0) {
      mpz_class s;
      mpz_mul_2exp(s.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<unsigned long>(e));
      q *= s;
    } else {
      mpz_class s;
      mpz_mul_2exp(s.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<unsigned long>(-e));
      q /= s;
    }
    q.canonicalize();
    return q;
  }
  double to_double() const { return mpfr_get_d(v, MPFR_RNDN); }

  mpfr_t v;
};

/// prod_{p <= P} (1 - 2/p^k), rounded to nearest at every step.
inline void ck_partial(MpfrValue& out, unsigned k, u64 P) {
  mpfr_set_ui(out.v, 1, MPFR_RNDN);
  MpfrValue term(mpfr_get_prec(out.v));
  for (u64 p : plain_primes(P)) {
    mpfr_set_ui(term.v, static_cast<unsigned long>(p), MPFR_RNDN);
    mpfr_pow_ui(term.v, term.v, k, MPFR_RNDN);
    mpfr_ui_div(term.v, 2, term.v, MPFR_RNDN);
    mpfr_ui_sub(term.v, 1, term.v, MPFR_RNDN);
    mpfr_mul(out.v, out.v, term.v, MPFR_RNDN);
  }
}

/// sum_{n <= N} n^-k plus the midpoint of the two integral tails.
inline void zeta_estimate(MpfrValue& out, unsigned k, u64 N) {
  mpfr_set_ui(out.v, 0, MPFR_RNDN);
  MpfrValue t(mpfr_get_prec(out.v));
  // Small terms first to limit rounding growth.
  for (u64 n = N; n >= 1; --n) {
    mpfr_set_ui(t.v, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_pow_ui(t.v, t.v, k, MPFR_RNDN);
    mpfr_ui_div(t.v, 1, t.v, MPFR_RNDN);
    mpfr_add(out.v, out.v, t.v, MPFR_RNDN);
  }
  // tails 1/((k-1)(N+1)^(k-1)) and 1/((k-1)N^(k-1))
  MpfrValue lo(mpfr_get_prec(out.v)), hi(mpfr_get_prec(out.v));
  mpfr_set_ui(lo.v, static_cast<unsigned long>(N + 1), MPFR_RNDN);
  mpfr_pow_ui(lo.v, lo.v, k - 1, MPFR_RNDN);
  mpfr_mul_ui(lo.v, lo.v, k - 1, MPFR_RNDN);
  mpfr_ui_div(lo.v, 1, lo.v, MPFR_RNDN);
  mpfr_set_ui(hi.v, static_cast<unsigned long>(N), MPFR_RNDN);
  mpfr_pow_ui(hi.v, hi.v, k - 1, MPFR_RNDN);
  mpfr_mul_ui(hi.v, hi.v, k - 1, MPFR_RNDN);
  mpfr_ui_div(hi.v, 1, hi.v, MPFR_RNDN);
  mpfr_add(lo.v, lo.v, hi.v, MPFR_RNDN);
  mpfr_div_ui(lo.v, lo.v, 2, MPFR_RNDN);
  mpfr_add(out.v, out.v, lo.v, MPFR_RNDN);
}

// ---------------------------------------------------------------------------
// Diophantine boxes

struct Sol {
  u64 a, b, x, y;
  bool operator==(const Sol&) const = default;
  auto operator<=>(const Sol&) const = default;
};

/// Triple loop over (x, y, a) for a x^k - b y^k = sign with x in (X, 2X],
/// y in (Y, 2Y], b y^k in (Z, 2Z]. X and Y are given as rationals.
inline std::vector<Sol> brute_solutions(const mpq_class& X, const mpq_class& Y, u64 Z, unsigned k,
                                        int sign) {
  auto lo_of = [](const mpq_class& q) {  // smallest integer > q
    mpz_class f = q.get_num() / q.get_den();
    return static_cast<u64>(f.get_ui()) + 1;
  };
  auto hi_of = [](const mpq_class& q) {  // largest integer <= 2q
    mpq_class t = 2 * q;
    mpz_class f = t.get_num() / t.get_den();
    return static_cast<u64>(f.get_ui());
  };
  std::vector<Sol> out;
  const u64 xlo = lo_of(X), xhi = hi_of(X), ylo = lo_of(Y), yhi = hi_of(Y);
  const mpz_class z1(std::to_string(Z)), z2(std::to_string(2 * Z));
  for (u64 x = xlo; x <= xhi; ++x) {
    mpz_class xk;
    mpz_ui_pow_ui(xk.get_mpz_t(), x, k);
    if (xk > z2 + 1) break;
    for (u64 y = ylo; y <= yhi; ++y) {
      mpz_class yk;
      mpz_ui_pow_ui(yk.get_mpz_t(), y, k);
      if (yk > z2) break;
      for (u64 a = 1;; ++a) {
        const mpz_class ax = xk * a;
        if (ax > z2 + sign) break;
        const mpz_class by = ax - sign;
        if (by <= z1) continue;
        if (by % yk != 0) continue;
        const mpz_class b = by / yk;
        out.push_back({a, static_cast<u64>(b.get_ui()), x, y});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Sol& l, const Sol& r) {
    return std::tie(l.x, l.y, l.a, l.b) < std::tie(r.x, r.y, r.a, r.b);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Lattices

/// Smallest squared norm of (M x - z y, y) over nonzero integer (x, y), and the
/// smallest over vectors not parallel to the first minimiser found. Search is
/// exhaustive over the region the bound `limit` allows.
struct Minima {
  i64 first = 0;
  i64 second = 0;
};

inline Minima lattice_minima(i64 M, i64 z) {
  const i64 bound = std::max(M * M, z * z + 1);
  const i64 r = static_cast<i64>(std::sqrt(static_cast<double>(bound))) + 1;
  std::vector<std::tuple<i64, i64, i64>> vecs;  // norm, x, y
  for (i64 y = -r; y <= r; ++y) {
    // |M x - z y| <= r
    const i64 xlo = static_cast<i64>(std::floor(static_cast<double>(z * y - r) / M)) - 1;
    const i64 xhi = static_cast<i64>(std::ceil(static_cast<double>(z * y + r) / M)) + 1;
    for (i64 x = xlo; x <= xhi; ++x) {
      if (x == 0 && y == 0) continue;
      const i64 u = M * x - z * y;
      const i64 n = u * u + y * y;
      if (n <= bound) vecs.emplace_back(n, x, y);
    }
  }
  std::sort(vecs.begin(), vecs.end());
  Minima m;
  const auto& [n1, x1, y1] = vecs.front();
  m.first = n1;
  for (const auto& [n, x, y] : vecs) {
    if (x * y1 - y * x1 != 0) {
      m.second = n;
      break;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Determinants

inline mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  mpz_class det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<mpz_class> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(a[r][j]);
      }
      minor.push_back(std::move(row));
    }
    const mpz_class term = a[0][c] * cofactor_det(minor);
    det += (c % 2 == 0) ? term : mpz_class(-term);
  }
  return det;
}

// ---------------------------------------------------------------------------
// Exponent region

/// Maximum of f over the points (i/(n-1), j/(n-1)) that lie in T_w.
inline double grid_max(const std::function<double(double, double)>& f, double w, int n = 2000) {
  double best = -std::numeric_limits<double>::infinity();
  const double step = 1.0 / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double u = i * step;
    for (int j = i; j < n; ++j) {
      const double v = j * step;
      if (u + v < w - 1e-15) continue;
      best = std::max(best, f(u, v));
    }
  }
  return best;
}

}  // namespace oracle
