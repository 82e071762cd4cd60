#include "kfree/detmethod.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>

namespace kfree {

namespace {

struct Echelon {
  IntMatrix matrix;
  std::vector<std::size_t> pivots;
  int sign = 1;  // parity of row swaps
};

// Fraction-free row echelon form. Every division below is exact; a nonzero
// remainder would mean a broken invariant, not bad input.
Echelon bareiss_echelon(IntMatrix a) {
  Echelon out;
  const std::size_t rows = a.rows(), cols = a.cols();
  BigInt prev = 1;
  BigInt rem;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
      out.sign = -out.sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_tdiv_qr(a(i, j).get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        if (rem != 0) throw std::logic_error("Bareiss elimination: inexact division");
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    out.pivots.push_back(c);
    ++r;
  }
  out.matrix = std::move(a);
  return out;
}

// Right null vector of the echelon form: first free column set to 1.
std::vector<BigInt> null_vector(const Echelon& ech) {
  const IntMatrix& u = ech.matrix;
  const std::size_t n = u.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;

  std::vector<Rational> c(n, Rational(0));
  c[free_col] = 1;
  for (std::size_t r = ech.pivots.size(); r-- > 0;) {
    const std::size_t pc = ech.pivots[r];
    Rational acc = 0;
    for (std::size_t j = pc + 1; j < n; ++j) {
      if (sgn(c[j]) != 0 && u(r, j) != 0) acc += Rational(u(r, j)) * c[j];
    }
    c[pc] = -acc / Rational(u(r, pc));
  }

  BigInt lcm = 1;
  for (const auto& q : c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  std::vector<BigInt> out(n);
  BigInt g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = c[i].get_num() * (lcm / c[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  int lead = 0;
  for (const auto& v : out) {
    if (v != 0) {
      lead = sgn(v);
      break;
    }
  }
  for (auto& v : out) {
    v /= g;
    if (lead < 0) v = -v;
  }
  return out;
}

long double log_of(const BigInt& n) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(static_cast<long double>(mant)) + exp * std::log(2.0L);
}

long double log_of(const Rational& q) { return log_of(q.get_num()) - log_of(q.get_den()); }

// Smallest integer m with m >= exp(x); values within a relative 1e-12 of an
// integer are treated as that integer so exact-power inputs land exactly.
BigInt ceil_exp(long double x) {
  if (x <= 0) return 1;
  if (x > 43.0L) return pow(BigInt(2), 64);  // past any 64-bit Z; callers clamp
  const long double v = std::exp(x);
  const long double r = std::round(v);
  if (std::fabs(v - r) <= 1e-12L * v) return BigInt(std::to_string(static_cast<unsigned long long>(r)));
  return BigInt(std::to_string(static_cast<unsigned long long>(std::ceil(v))));
}

}  // namespace

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

BigInt AuxPolynomial::evaluate(const Quadruple& q) const {
  BigInt total = 0;
  for (std::size_t i = 0; i < basis.monomials.size(); ++i) {
    if (coefficients[i] == 0) continue;
    const auto& m = basis.monomials[i];
    total += coefficients[i] * pow(BigInt(q.a), m.alpha) * pow(BigInt(q.b), m.beta) *
             pow(BigInt(q.x), m.gamma) * pow(BigInt(q.y), m.delta);
  }
  return total;
}

RankDeficiencyError::RankDeficiencyError(std::size_t H_, std::size_t J_)
    : std::runtime_error("evaluation matrix has full rank H = " + std::to_string(H_) + " with J = " +
                         std::to_string(J_) +
                         " solutions; M, d, e violate the rank-deficiency condition"),
      H(H_),
      J(J_) {}

BivariatePolynomial BivariatePolynomial::constant(const Rational& c) {
  BivariatePolynomial p;
  p.add_term({0, 0}, c);
  return p;
}

BivariatePolynomial BivariatePolynomial::u() {
  BivariatePolynomial p;
  p.add_term({1, 0}, 1);
  return p;
}

BivariatePolynomial BivariatePolynomial::v() {
  BivariatePolynomial p;
  p.add_term({0, 1}, 1);
  return p;
}

void BivariatePolynomial::add_term(Exponents e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

BivariatePolynomial BivariatePolynomial::operator+(const BivariatePolynomial& o) const {
  BivariatePolynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

BivariatePolynomial BivariatePolynomial::operator-(const BivariatePolynomial& o) const {
  BivariatePolynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

BivariatePolynomial BivariatePolynomial::operator*(const BivariatePolynomial& o) const {
  BivariatePolynomial out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      out.add_term({e1.first + e2.first, e1.second + e2.second}, c1 * c2);
    }
  }
  return out;
}

BivariatePolynomial BivariatePolynomial::pow(unsigned n) const {
  BivariatePolynomial out = constant(1);
  for (unsigned i = 0; i < n; ++i) out = out * *this;
  return out;
}

Rational BivariatePolynomial::evaluate(const Rational& uval, const Rational& vval) const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) total += c * kfree::pow(uval, e.first) * kfree::pow(vval, e.second);
  return total;
}

unsigned BivariatePolynomial::total_degree() const {
  unsigned deg = 0;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e.first + e.second);
  return deg;
}

Rational BivariatePolynomial::coefficient(unsigned i, unsigned j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

MonomialBasis monomial_basis(unsigned d, unsigned e) {
  MonomialBasis basis{d, e, {}};
  for (unsigned alpha = d + 1; alpha-- > 0;) {
    for (unsigned gamma = e + 1; gamma-- > 0;) {
      basis.monomials.push_back(Monomial{alpha, d - alpha, gamma, e - gamma});
    }
  }
  return basis;
}

IntMatrix evaluation_matrix(const std::vector<Quadruple>& solutions, const MonomialBasis& basis) {
  IntMatrix m(basis.H(), solutions.size());
  const unsigned d = basis.d, e = basis.e;
  for (std::size_t j = 0; j < solutions.size(); ++j) {
    const auto& q = solutions[j];
    std::vector<BigInt> pa(d + 1), pb(d + 1), px(e + 1), py(e + 1);
    pa[0] = pb[0] = px[0] = py[0] = 1;
    for (unsigned i = 1; i <= d; ++i) {
      pa[i] = pa[i - 1] * BigInt(q.a);
      pb[i] = pb[i - 1] * BigInt(q.b);
    }
    for (unsigned i = 1; i <= e; ++i) {
      px[i] = px[i - 1] * BigInt(q.x);
      py[i] = py[i - 1] * BigInt(q.y);
    }
    for (std::size_t i = 0; i < basis.H(); ++i) {
      const auto& mono = basis.monomials[i];
      m(i, j) = pa[mono.alpha] * pb[mono.beta] * px[mono.gamma] * py[mono.delta];
    }
  }
  return m;
}

RankResult rank_and_nullvector(const IntMatrix& matrix) {
  // Left null space of A is the right null space of A^T.
  const Echelon ech = bareiss_echelon(matrix.transposed());
  RankResult out;
  out.rank = ech.pivots.size();
  if (out.rank < matrix.rows()) out.nullvector = null_vector(ech);
  return out;
}

BigInt bareiss_determinant(const IntMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = matrix.rows();
  if (n == 0) return 1;
  const Echelon ech = bareiss_echelon(matrix);
  if (ech.pivots.size() < n) return 0;
  return ech.sign * ech.matrix(n - 1, n - 1);
}

AuxPolynomial find_aux_polynomial(const std::vector<Quadruple>& solutions, unsigned d, unsigned e,
                                  std::optional<u64> Z) {
  AuxPolynomial out;
  out.basis = monomial_basis(d, e);
  const auto rank = rank_and_nullvector(evaluation_matrix(solutions, out.basis));
  if (!rank.nullvector) throw RankDeficiencyError(out.basis.H(), solutions.size());
  out.coefficients = *rank.nullvector;
  out.height = 0;
  for (const auto& c : out.coefficients) out.height = std::max(out.height, BigInt(abs(c)));
  if (Z && *Z >= 2) {
    out.kappa_measured = static_cast<double>(log_of(out.height) / std::log(static_cast<long double>(*Z)));
  }
  return out;
}

bool verify_vanishing(const AuxPolynomial& B, const std::vector<Quadruple>& solutions) {
  return std::all_of(solutions.begin(), solutions.end(),
                     [&](const Quadruple& q) { return B.evaluate(q) == 0; });
}

BigInt delta1_check(const std::vector<Quadruple>& solutions, const MonomialBasis& basis) {
  if (solutions.size() != basis.H()) {
    throw std::invalid_argument("delta1_check needs exactly H = " + std::to_string(basis.H()) +
                                " solutions, got " + std::to_string(solutions.size()));
  }
  return bareiss_determinant(evaluation_matrix(solutions, basis));
}

Rational delta2(const std::vector<Quadruple>& solutions, const MonomialBasis& basis) {
  const std::size_t n = basis.H();
  if (solutions.size() != n) throw std::invalid_argument("delta2 needs exactly H solutions");
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const Rational t = solutions[j].t(), s = solutions[j].s();
    for (std::size_t i = 0; i < n; ++i) {
      m[i][j] = pow(t, basis.monomials[i].beta) * pow(s, basis.monomials[i].gamma);
    }
  }
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

bool delta_factorization_check(const std::vector<Quadruple>& solutions, const MonomialBasis& basis) {
  const BigInt d1 = delta1_check(solutions, basis);
  BigInt prod = 1;
  for (const auto& q : solutions) {
    if (q.a == 0 || q.y == 0) throw std::invalid_argument("delta_factorization_check: a and y must be nonzero");
    prod *= pow(BigInt(q.a), basis.d) * pow(BigInt(q.y), basis.e);
  }
  return Rational(d1) == Rational(prod) * delta2(solutions, basis);
}

std::vector<BivariatePolynomial> g_polynomials(const Rational& s0, unsigned k, const MonomialBasis& basis) {
  using P = BivariatePolynomial;
  const P s = P::constant(s0) + P::u();
  const P t = s.pow(k) - P::v();
  std::vector<P> out;
  out.reserve(basis.H());
  for (const auto& m : basis.monomials) {
    P g = t.pow(m.beta) * s.pow(m.gamma);
    if (g.total_degree() > k * basis.d + basis.e) throw std::logic_error("g_polynomials: degree bound violated");
    out.push_back(std::move(g));
  }
  return out;
}

DetBoundReport monomial_product_bound_from_logs(double log_M, double log_V, std::size_t H) {
  if (H == 0) throw std::invalid_argument("monomial_product_bound: H must be positive");
  if (!(log_M > 0) || !(log_V > 0)) throw std::invalid_argument("monomial_product_bound: need M, V > 1");
  DetBoundReport r;
  r.log_M = log_M;
  r.log_V = log_V;
  r.H = H;

  // Best-first walk over (j, l) by j log M + l log V, smaller j first on ties.
  using Item = std::tuple<double, unsigned, unsigned>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  std::set<std::pair<unsigned, unsigned>> seen{{0, 0}};
  frontier.emplace(0.0, 0, 0);
  double sum = 0, last = 0;
  while (r.selected.size() < H) {
    auto [value, j, l] = frontier.top();
    frontier.pop();
    r.selected.emplace_back(j, l);
    sum += value;
    last = value;
    for (auto next : {std::pair{j + 1, l}, std::pair{j, l + 1}}) {
      if (seen.insert(next).second) {
        frontier.emplace(next.first * log_M + next.second * log_V, next.first, next.second);
      }
    }
  }
  r.exact_log_product = -sum;
  r.log_W = last;
  r.asymptotic_value = -(2.0 * std::sqrt(2.0) / 3.0) * std::pow(static_cast<double>(H), 1.5) *
                       std::sqrt(log_M * log_V);
  return r;
}

DetBoundReport monomial_product_bound(double M, double V, std::size_t H) {
  if (!(M > 1) || !(V > 1)) throw std::invalid_argument("monomial_product_bound: need M, V > 1");
  return monomial_product_bound_from_logs(std::log(M), std::log(V), H);
}

long double BoxAnalysis::log_A() const { return log_of(A); }
long double BoxAnalysis::log_Y() const { return log_of(Y); }
long double BoxAnalysis::log_Z() const { return std::log(static_cast<long double>(Z)); }

BoxAnalysis analyze_box(const Box& box) {
  box.validate();
  if (box.Z < 2) throw std::invalid_argument("analyze_box: Z must be at least 2");
  BoxAnalysis a;
  a.X = box.X;
  a.Y = box.Y;
  a.Z = box.Z;
  a.k = box.k;
  a.A = Rational(BigInt(box.Z)) / pow(box.X, box.k);
  a.B = Rational(BigInt(box.Z)) / pow(box.Y, box.k);
  a.V = a.A * pow(box.Y, box.k);
  a.alpha = log_of(box.X) / a.log_Z();
  a.beta = log_of(box.Y) / a.log_Z();
  return a;
}

std::pair<unsigned, unsigned> choose_degrees(const BoxAnalysis& analysis, unsigned d) {
  if (analysis.Y <= 1) throw std::invalid_argument("choose_degrees: needs Y > 1");
  // Largest e with Y^e <= A^d, decided exactly.
  const Rational Ad = pow(analysis.A, d);
  unsigned e = 0;
  Rational Ye = analysis.Y;
  while (Ye <= Ad) {
    ++e;
    Ye *= analysis.Y;
  }
  return {d, e};
}

MChoice choose_M(const BoxAnalysis& analysis, unsigned k, const Rational& delta) {
  if (analysis.Z < 2) throw std::invalid_argument("choose_M: Z must be at least 2");
  if (k != analysis.k) throw std::invalid_argument("choose_M: k does not match the analysed box");
  const long double log_Z = analysis.log_Z();
  const long double first = 4.5L * (1 + static_cast<long double>(delta.get_d())) * analysis.log_A() *
                            analysis.log_Y() / log_Z;
  MChoice out;
  out.lower_bound = std::max(std::exp(first), static_cast<long double>(analysis.Y.get_d()));
  BigInt required = std::max(ceil_exp(first), ceil_of(analysis.Y));
  if (required < 1) required = 1;
  const BigInt Z = BigInt(std::to_string(analysis.Z));
  out.clamped = required >= Z;
  out.M = to_u64(required > Z ? Z : required);
  return out;
}

}  // namespace kfree
