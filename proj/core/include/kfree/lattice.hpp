#pragma once

// Interval covering of the slope s = x/y, the lattices
//   Lambda_I = {(M/(2Y) (x - s0 y), y/(2Y)) : (x, y) in Z^2},  s0 = z/M,
// their Lagrange-Gauss reduction, and lambda-coordinates.
//
// Lambda_I is the integer lattice generated by the columns of
// [[M, -z], [0, 1]] scaled by 1/(2Y). All norms are compared as exact
// squared norms of the unscaled integer vectors.

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "kfree/dioph.hpp"
#include "kfree/numeric.hpp"

namespace kfree {

using IntVec2 = std::array<i64, 2>;
using RatVec2 = std::array<Rational, 2>;

/// 2 sqrt(2) / sqrt(3) <= 329/201.
inline const Rational kLambdaConstantUpper = ratio(BigInt(329), BigInt(201));
/// The square of 2 sqrt(2) / sqrt(3), exactly.
inline const Rational kLambdaConstantSquared = ratio(BigInt(8), BigInt(3));

/// I = (z/M, (z + 1)/M].
struct IntervalSpec {
  u64 M = 1;
  u64 z = 1;
  Rational Y{1};

  Rational s0() const { return ratio(BigInt(z), BigInt(M)); }
  Rational upper() const { return ratio(BigInt(z + 1), BigInt(M)); }
  /// Whether x/y lies in I, for y > 0.
  bool contains(u64 x, u64 y) const;
  bool contains(const Rational& s) const { return s0() < s && s <= upper(); }
};

struct ScaledLattice {
  u64 M = 1;
  u64 z = 0;
  Rational scale{1};

  /// Columns (M, 0) and (-z, 1), scaled.
  RatVec2 column(int i) const;
  /// The unscaled integer vector (M x - z y, y).
  std::array<i128, 2> image(i64 x, i64 y) const;
  /// M * scale^2 = M / (4 Y^2).
  Rational determinant() const { return BigInt(M) * scale * scale; }
};

struct ReducedBasis {
  u64 M = 1;
  u64 z = 0;
  Rational scale{1};

  /// Shortest vector and shortest vector not parallel to it.
  RatVec2 g1, g2;
  /// Their integer (x, y) coordinates; det(e1, e2) = +-1.
  IntVec2 e1{}, e2{};
  /// Exact |g1|^2 and |g2|^2.
  Rational norm1_sq, norm2_sq;
  /// Rational upper bounds for C / |g_i|, C = 2 sqrt(2) / sqrt(3).
  Rational L1, L2;

  i64 det_e() const { return e1[0] * e2[1] - e2[0] * e1[1]; }
};

/// Intervals with s0 = z/M covering (X/(2Y), 2X/Y]. Requires M X >= 2Y.
std::vector<IntervalSpec> cover_intervals(const Rational& X, const Rational& Y, u64 M);

ScaledLattice make_lattice(const IntervalSpec& spec);

/// Lagrange-Gauss reduction. Among equal-norm candidates the one whose
/// integer coordinates, sign-normalised so the first nonzero entry is
/// positive, come first lexicographically is chosen.
ReducedBasis gauss_reduce(const ScaledLattice& lattice);

/// (L1, L2), with L_i >= C / |g_i| and within 2^-40 of it.
std::pair<Rational, Rational> compute_Li(const ReducedBasis& basis);

/// Integers with (x, y) = l1 e1 + l2 e2.
std::pair<i64, i64> to_lambda(i64 x, i64 y, const ReducedBasis& basis);
std::pair<i64, i64> to_lambda(const Quadruple& q, const ReducedBasis& basis);

/// Box solutions with x/y in I, found by walking |l_i| <= L_i.
u64 count_NI(const IntervalSpec& spec, const Box& box, const ReducedBasis& basis);

struct ShortestHistogram {
  /// Power of two at or below Y / (2 sqrt(M)).
  Rational anchor;
  /// Bucket L -> number of intervals with L <= L1 < 2L.
  std::map<Rational, u64> buckets;
  u64 intervals = 0;
  Rational min_L1, max_L1;
};

ShortestHistogram shortest_histogram(const Rational& X, const Rational& Y, u64 M);

}  // namespace kfree
