#include "kfree/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace kfree {

namespace {

using Vec = std::array<i128, 2>;

i128 dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1]; }

// Nearest integer to n/d, d > 0.
i128 round_div(i128 n, i128 d) {
  i128 q = n / d, r = n % d;
  if (r < 0) {
    --q;
    r += d;
  }
  if (2 * r > d) ++q;
  return q;
}

// Flip so the first nonzero coordinate is positive.
IntVec2 normalise(IntVec2 c) {
  if (c[0] < 0 || (c[0] == 0 && c[1] < 0)) return {-c[0], -c[1]};
  return c;
}

BigInt to_big(i128 v) {
  const bool neg = v < 0;
  u128 mag = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
  BigInt out(static_cast<unsigned long>(mag >> 64));
  out <<= 64;
  out += static_cast<unsigned long>(mag & ~u64{0});
  return neg ? BigInt(-out) : out;
}

struct Candidate {
  Vec image;
  IntVec2 coords;
  i128 norm;
};

}  // namespace

bool IntervalSpec::contains(u64 x, u64 y) const {
  const u128 mx = static_cast<u128>(M) * x;
  return static_cast<u128>(z) * y < mx && mx <= static_cast<u128>(z + 1) * y;
}

RatVec2 ScaledLattice::column(int i) const {
  if (i == 0) return {BigInt(M) * scale, Rational(0)};
  return {-BigInt(z) * scale, scale};
}

std::array<i128, 2> ScaledLattice::image(i64 x, i64 y) const {
  return {static_cast<i128>(M) * x - static_cast<i128>(z) * y, static_cast<i128>(y)};
}

std::vector<IntervalSpec> cover_intervals(const Rational& X, const Rational& Y, u64 M) {
  if (sgn(X) <= 0 || sgn(Y) <= 0) throw std::invalid_argument("cover_intervals: X, Y must be positive");
  if (M == 0 || BigInt(M) * X < 2 * Y) {
    throw std::invalid_argument("cover_intervals: M = " + std::to_string(M) +
                                " is below 2Y/X = " + to_string(2 * Y / X));
  }
  const u64 z_lo = to_u64(floor_of(BigInt(M) * X / (2 * Y)));
  const u64 z_hi = to_u64(ceil_of(BigInt(M) * 2 * X / Y)) - 1;
  std::vector<IntervalSpec> out;
  out.reserve(z_hi - z_lo + 1);
  for (u64 z = z_lo; z <= z_hi; ++z) out.push_back(IntervalSpec{M, z, Y});
  return out;
}

ScaledLattice make_lattice(const IntervalSpec& spec) {
  if (spec.M == 0 || sgn(spec.Y) <= 0) throw std::invalid_argument("make_lattice: malformed interval");
  return ScaledLattice{spec.M, spec.z, 1 / (2 * spec.Y)};
}

ReducedBasis gauss_reduce(const ScaledLattice& lattice) {
  if (lattice.M == 0) throw std::invalid_argument("gauss_reduce: degenerate lattice");
  Vec b1 = lattice.image(1, 0), b2 = lattice.image(0, 1);
  std::array<i128, 2> c1{1, 0}, c2{0, 1};
  for (;;) {
    if (dot(b2, b2) < dot(b1, b1)) {
      std::swap(b1, b2);
      std::swap(c1, c2);
    }
    const i128 mu = round_div(dot(b1, b2), dot(b1, b1));
    if (mu == 0) break;
    b2 = {b2[0] - mu * b1[0], b2[1] - mu * b1[1]};
    c2 = {c2[0] - mu * c1[0], c2[1] - mu * c1[1]};
  }

  // In a reduced basis the first two minima are attained with coefficients
  // in [-2, 2]; collect them all to apply the tie-break.
  std::vector<Candidate> cands;
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) {
      if (i == 0 && j == 0) continue;
      Vec im{i * b1[0] + j * b2[0], i * b1[1] + j * b2[1]};
      IntVec2 co = normalise({static_cast<i64>(i * c1[0] + j * c2[0]),
                              static_cast<i64>(i * c1[1] + j * c2[1])});
      cands.push_back({lattice.image(co[0], co[1]), co, dot(im, im)});
    }
  }
  auto better = [](const Candidate& a, const Candidate& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.coords < b.coords;
  };
  const Candidate first = *std::min_element(cands.begin(), cands.end(), better);
  const Candidate* second = nullptr;
  for (const auto& c : cands) {
    const i128 cross = c.coords[0] * static_cast<i128>(first.coords[1]) -
                       c.coords[1] * static_cast<i128>(first.coords[0]);
    if (cross == 0) continue;
    if (second == nullptr || better(c, *second)) second = &c;
  }

  ReducedBasis out;
  out.M = lattice.M;
  out.z = lattice.z;
  out.scale = lattice.scale;
  out.e1 = first.coords;
  out.e2 = second->coords;
  out.g1 = {to_big(first.image[0]) * lattice.scale, to_big(first.image[1]) * lattice.scale};
  out.g2 = {to_big(second->image[0]) * lattice.scale, to_big(second->image[1]) * lattice.scale};
  const Rational s2 = lattice.scale * lattice.scale;
  out.norm1_sq = to_big(first.norm) * s2;
  out.norm2_sq = to_big(second->norm) * s2;
  if (out.det_e() != 1 && out.det_e() != -1) {
    throw std::logic_error("gauss_reduce: reduced vectors do not form a basis");
  }
  std::tie(out.L1, out.L2) = compute_Li(out);
  return out;
}

std::pair<Rational, Rational> compute_Li(const ReducedBasis& basis) {
  return {sqrt_upper(kLambdaConstantSquared / basis.norm1_sq),
          sqrt_upper(kLambdaConstantSquared / basis.norm2_sq)};
}

std::pair<i64, i64> to_lambda(i64 x, i64 y, const ReducedBasis& basis) {
  const i128 det = basis.det_e();
  const auto& e1 = basis.e1;
  const auto& e2 = basis.e2;
  const i128 l1 = (static_cast<i128>(x) * e2[1] - static_cast<i128>(y) * e2[0]) * det;
  const i128 l2 = (static_cast<i128>(e1[0]) * y - static_cast<i128>(e1[1]) * x) * det;
  return {static_cast<i64>(l1), static_cast<i64>(l2)};
}

std::pair<i64, i64> to_lambda(const Quadruple& q, const ReducedBasis& basis) {
  return to_lambda(static_cast<i64>(q.x), static_cast<i64>(q.y), basis);
}

u64 count_NI(const IntervalSpec& spec, const Box& box, const ReducedBasis& basis) {
  if (spec.M != basis.M || spec.z != basis.z) {
    throw std::invalid_argument("count_NI: basis does not belong to this interval");
  }
  const i64 bound1 = static_cast<i64>(to_u64(floor_of(basis.L1)));
  const i64 bound2 = static_cast<i64>(to_u64(floor_of(basis.L2)));
  u64 total = 0;
  for (i64 l1 = -bound1; l1 <= bound1; ++l1) {
    for (i64 l2 = -bound2; l2 <= bound2; ++l2) {
      const i64 x = l1 * basis.e1[0] + l2 * basis.e2[0];
      const i64 y = l1 * basis.e1[1] + l2 * basis.e2[1];
      if (x <= 0 || y <= 0) continue;
      const auto ux = static_cast<u64>(x), uy = static_cast<u64>(y);
      if (!spec.contains(ux, uy)) continue;
      total += count_for_pair(box, ux, uy);
    }
  }
  return total;
}

ShortestHistogram shortest_histogram(const Rational& X, const Rational& Y, u64 M) {
  ShortestHistogram out;
  // Largest 2^j with 2^j <= Y / (2 sqrt M), i.e. 4^j * 4M <= Y^2.
  const Rational target = Y * Y / (4 * BigInt(M));
  long j = floor_log2(target);
  j = (j >= 0) ? j / 2 : -((-j + 1) / 2);  // floor(j / 2)
  out.anchor = pow2(j);
  bool first = true;
  for (const auto& spec : cover_intervals(X, Y, M)) {
    const auto basis = gauss_reduce(make_lattice(spec));
    const Rational& L1 = basis.L1;
    const long b = floor_log2(L1 / out.anchor);
    ++out.buckets[out.anchor * pow2(b)];
    ++out.intervals;
    if (first || L1 < out.min_L1) out.min_L1 = L1;
    if (first || L1 > out.max_L1) out.max_L1 = L1;
    first = false;
  }
  return out;
}

}  // namespace kfree
