#pragma once

// The determinant method made constructive.
//
// For solutions (a, b, x, y) with x/y in a short interval, the bihomogeneous
// monomials a^al b^be x^ga y^de (al + be = d, ga + de = e) are evaluated at
// every solution. When the resulting H x J matrix has rank below H, a left
// null vector is the coefficient list of an auxiliary polynomial B_I that
// vanishes at all of them. Ranks and determinants use fraction-free
// (Bareiss) elimination over the integers.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kfree/dioph.hpp"
#include "kfree/numeric.hpp"

namespace kfree {

struct Monomial {
  unsigned alpha = 0;  // power of a
  unsigned beta = 0;   // power of b
  unsigned gamma = 0;  // power of x
  unsigned delta = 0;  // power of y

  bool operator==(const Monomial&) const = default;
};

struct MonomialBasis {
  unsigned d = 0;
  unsigned e = 0;
  /// Ordered lexicographically descending in (alpha, gamma).
  std::vector<Monomial> monomials;

  std::size_t H() const { return monomials.size(); }
};

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

struct RankResult {
  std::size_t rank = 0;
  /// Primitive c with c^T A = 0, first nonzero entry positive; present iff rank < rows.
  std::optional<std::vector<BigInt>> nullvector;
};

struct AuxPolynomial {
  MonomialBasis basis;
  std::vector<BigInt> coefficients;
  BigInt height;
  /// log(height) / log Z, when Z was supplied.
  std::optional<double> kappa_measured;

  BigInt evaluate(const Quadruple& q) const;
};

/// Raised when the evaluation matrix has full rank H.
class RankDeficiencyError : public std::runtime_error {
 public:
  RankDeficiencyError(std::size_t H, std::size_t J);
  std::size_t H;
  std::size_t J;
};

/// Exponents of the monomial product bound.
struct DetBoundReport {
  double log_M = 0;
  double log_V = 0;
  std::size_t H = 0;
  /// log of the product of the H largest M^-j V^-l.
  double exact_log_product = 0;
  /// -(2 sqrt 2 / 3) H^(3/2) (log M log V)^(1/2).
  double asymptotic_value = 0;
  /// -log of the H-th largest value.
  double log_W = 0;
  /// Exponent pairs (j, l) of the H selected monomials, in selection order.
  std::vector<std::pair<unsigned, unsigned>> selected;
};

/// A = Z X^-k, B = Z Y^-k, V = A Y^k for a box.
struct BoxAnalysis {
  Rational X, Y;
  u64 Z = 2;
  unsigned k = 2;
  Rational A, B, V;
  long double alpha = 0;  // log X / log Z
  long double beta = 0;   // log Y / log Z

  long double log_A() const;
  long double log_Y() const;
  long double log_Z() const;
};

struct MChoice {
  u64 M = 1;
  /// Real lower bound the choice had to meet.
  long double lower_bound = 1;
  /// The lower bound reached Z, so M <= Z cannot hold strictly.
  bool clamped = false;
};

/// Bivariate polynomial in (u, v) with rational coefficients.
class BivariatePolynomial {
 public:
  using Exponents = std::pair<unsigned, unsigned>;

  BivariatePolynomial() = default;
  static BivariatePolynomial constant(const Rational& c);
  static BivariatePolynomial u();
  static BivariatePolynomial v();

  BivariatePolynomial operator+(const BivariatePolynomial& o) const;
  BivariatePolynomial operator-(const BivariatePolynomial& o) const;
  BivariatePolynomial operator*(const BivariatePolynomial& o) const;
  BivariatePolynomial pow(unsigned n) const;

  Rational evaluate(const Rational& u, const Rational& v) const;
  unsigned total_degree() const;
  Rational coefficient(unsigned i, unsigned j) const;
  const std::map<Exponents, Rational>& terms() const { return terms_; }

 private:
  void add_term(Exponents e, const Rational& c);
  std::map<Exponents, Rational> terms_;
};

MonomialBasis monomial_basis(unsigned d, unsigned e);

/// H x J, entry (i, j) = a_j^al_i b_j^be_i x_j^ga_i y_j^de_i.
IntMatrix evaluation_matrix(const std::vector<Quadruple>& solutions, const MonomialBasis& basis);

/// Rank over Q and, when rank < rows, a primitive left null vector.
RankResult rank_and_nullvector(const IntMatrix& matrix);

/// Determinant of a square matrix by Bareiss elimination.
BigInt bareiss_determinant(const IntMatrix& matrix);

AuxPolynomial find_aux_polynomial(const std::vector<Quadruple>& solutions, unsigned d, unsigned e,
                                  std::optional<u64> Z = std::nullopt);

bool verify_vanishing(const AuxPolynomial& B, const std::vector<Quadruple>& solutions);

/// det(f_i(x_j)) for exactly H solutions.
BigInt delta1_check(const std::vector<Quadruple>& solutions, const MonomialBasis& basis);

/// Delta_2 = det(t_j^be_i s_j^ga_i), computed by rational elimination.
Rational delta2(const std::vector<Quadruple>& solutions, const MonomialBasis& basis);

/// Checks Delta_1 = prod_j a_j^d y_j^e * Delta_2 exactly.
bool delta_factorization_check(const std::vector<Quadruple>& solutions, const MonomialBasis& basis);

/// g_i(u, v) = f_i(1, (s0 + u)^k - v, s0 + u, 1).
std::vector<BivariatePolynomial> g_polynomials(const Rational& s0, unsigned k,
                                               const MonomialBasis& basis);

DetBoundReport monomial_product_bound(double M, double V, std::size_t H);
DetBoundReport monomial_product_bound_from_logs(double log_M, double log_V, std::size_t H);

BoxAnalysis analyze_box(const Box& box);

/// (d, e) with e = floor(d log A / log Y), e >= 0. Requires Y > 1.
std::pair<unsigned, unsigned> choose_degrees(const BoxAnalysis& analysis, unsigned d);

/// Smallest M with log M >= max{(9/2)(1 + delta) log A log Y / log Z, log Y},
/// clamped to Z.
MChoice choose_M(const BoxAnalysis& analysis, unsigned k, const Rational& delta);

}  // namespace kfree
