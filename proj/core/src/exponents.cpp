#include "kfree/exponents.hpp"

#include <algorithm>
#include <stdexcept>

namespace kfree {

namespace {

Rational frac(long p, long q) { return ratio(BigInt(p), BigInt(q)); }

void check_w(const Rational& w) {
  if (w < 1 || w > 2) throw std::invalid_argument("w = " + to_string(w) + " outside [1, 2]");
}

// Edge v = slope * u + offset for u in [from, to].
struct Edge {
  Rational from, to, slope, offset;
};

void push_unique(std::vector<Point>& pts, const Point& p) {
  if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
}

}  // namespace

std::string to_string(Objective which) { return which == Objective::Phi ? "Phi" : "Psi"; }

Bilinear Bilinear::of(Objective which) {
  if (which == Objective::Phi) return {0, 0, frac(9, 2), frac(-9, 2)};
  return {0, 1, frac(9, 4), frac(-9, 4)};
}

std::pair<Rational, Rational> Bilinear::gradient(const Point& p) const {
  return {cu + cuv * p.v, cv + cuv * p.u};
}

bool RegionTw::contains(const Point& p) const { return p.u <= p.v && p.v <= 1 && p.u + p.v >= w; }

Rational phi(const Rational& u, const Rational& v) { return Bilinear::of(Objective::Phi)({u, v}); }
Rational psi(const Rational& u, const Rational& v) { return Bilinear::of(Objective::Psi)({u, v}); }

RegionTw make_region(const Rational& w) {
  check_w(w);
  return RegionTw{w, {{w - 1, 1}, {1, 1}, {w / 2, w / 2}}};
}

std::vector<Point> region_vertices(const Rational& w) { return make_region(w).vertices; }

std::optional<Point> interior_critical_point(Objective which, const Rational& w) {
  const RegionTw region = make_region(w);
  const Bilinear f = Bilinear::of(which);
  // cu + cuv v = 0 and cv + cuv u = 0; cuv != 0 for both objectives.
  const Point crit{-f.cv / f.cuv, -f.cu / f.cuv};
  if (region.contains(crit)) return crit;
  return std::nullopt;
}

MaxResult maximize_bilinear(Objective which, const Rational& w) {
  const RegionTw region = make_region(w);
  const Bilinear f = Bilinear::of(which);

  std::vector<Point> candidates = region.vertices;
  if (auto crit = interior_critical_point(which, w)) candidates.push_back(*crit);

  const std::vector<Edge> edges = {
      {w / 2, 1, 1, 0},      // v = u
      {w - 1, 1, 0, 1},      // v = 1
      {w - 1, w / 2, -1, w}, // v = w - u
  };
  for (const auto& e : edges) {
    // f(u, slope u + offset) = a2 u^2 + a1 u + a0
    const Rational a2 = f.cuv * e.slope;
    const Rational a1 = f.cu + f.cv * e.slope + f.cuv * e.offset;
    if (sgn(a2) < 0) {
      const Rational apex = -a1 / (2 * a2);
      if (e.from < apex && apex < e.to) candidates.push_back({apex, e.slope * apex + e.offset});
    }
  }

  MaxResult out;
  out.which = which;
  out.max_value = f(candidates.front());
  for (const auto& p : candidates) out.max_value = std::max(out.max_value, f(p));
  for (const auto& p : candidates) {
    if (f(p) == out.max_value) push_unique(out.argmax, p);
  }
  return out;
}

ExponentTable theorem_exponent(unsigned k) {
  if (k < 2) throw std::invalid_argument("theorem_exponent: k must be at least 2");
  ExponentTable t;
  t.k = k;
  auto exact = [&](std::string label, const Rational& q) {
    t.rows.push_back({std::move(label), q.get_d(), q});
  };
  exact("new 14/(9k)", frac(14, 9 * static_cast<long>(k)));
  exact("trivial 2/(k+1)", frac(2, static_cast<long>(k) + 1));
  if (k == 2) {
    exact("heath-brown 7/11", frac(7, 11));
    t.rows.push_back({"reuss omega(2)", 0.578, std::nullopt});
  }
  if (k == 3) t.rows.push_back({"reuss omega(3)", 0.391, std::nullopt});

  const Rational mine = *t.rows.front().exact;
  t.new_is_smallest = std::all_of(t.rows.begin() + 1, t.rows.end(), [&](const ExponentRow& r) {
    return r.exact ? mine < *r.exact : mine.get_d() < r.value;
  });
  return t;
}

}  // namespace kfree
