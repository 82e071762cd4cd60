#pragma once

// Exact maximisation of
//   Phi(u, v) = (9/2)(1 - u) v,   Psi(u, v) = u + (9/4)(1 - u) v
// over the triangle T_w = {u <= v <= 1, u + v >= w}, 1 <= w <= 2.
// Both are bilinear, so the maximum sits on the boundary; each edge reduces
// to a univariate quadratic maximised exactly.

#include <optional>
#include <string>
#include <vector>

#include "kfree/numeric.hpp"

namespace kfree {

struct Point {
  Rational u;
  Rational v;

  bool operator==(const Point& o) const { return u == o.u && v == o.v; }
};

enum class Objective { Phi, Psi };

std::string to_string(Objective which);

/// c0 + cu u + cv v + cuv u v
struct Bilinear {
  Rational c0, cu, cv, cuv;

  static Bilinear of(Objective which);
  Rational operator()(const Point& p) const { return c0 + cu * p.u + cv * p.v + cuv * p.u * p.v; }
  /// (d/du, d/dv) at p.
  std::pair<Rational, Rational> gradient(const Point& p) const;
};

struct RegionTw {
  Rational w;
  /// (w - 1, 1), (1, 1), (w/2, w/2)
  std::vector<Point> vertices;

  bool contains(const Point& p) const;
};

struct MaxResult {
  Objective which = Objective::Phi;
  Rational max_value;
  std::vector<Point> argmax;
};

Rational phi(const Rational& u, const Rational& v);
Rational psi(const Rational& u, const Rational& v);

RegionTw make_region(const Rational& w);
std::vector<Point> region_vertices(const Rational& w);

/// Zero of the gradient if it lies in T_w, otherwise nullopt.
std::optional<Point> interior_critical_point(Objective which, const Rational& w);

MaxResult maximize_bilinear(Objective which, const Rational& w);

struct ExponentRow {
  std::string label;
  double value = 0;
  /// Present when the exponent is an exact rational.
  std::optional<Rational> exact;
};

struct ExponentTable {
  unsigned k = 2;
  /// First row is the new exponent 14/(9k).
  std::vector<ExponentRow> rows;
  /// Whether 14/(9k) is strictly below every other listed exponent.
  bool new_is_smallest = false;
};

ExponentTable theorem_exponent(unsigned k);

}  // namespace kfree
