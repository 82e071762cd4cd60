#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kfree/detmethod.hpp"
#include "oracles.hpp"

using namespace kfree;

namespace {

Rational q(long p, long r) { return ratio(BigInt(p), BigInt(r)); }

std::vector<Quadruple> sample(const std::vector<Quadruple>& pool, std::size_t n, std::mt19937_64& rng) {
  std::vector<Quadruple> out;
  std::sample(pool.begin(), pool.end(), std::back_inserter(out), n, rng);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

std::vector<std::vector<mpz_class>> dense(const IntMatrix& m) {
  std::vector<std::vector<mpz_class>> out(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

const Quadruple kSol{2, 7, 2, 1, 1};

}  // namespace

TEST(MonomialBasis, Examples) {
  const auto b11 = monomial_basis(1, 1);
  ASSERT_EQ(b11.H(), 4u);
  EXPECT_EQ(b11.monomials[0], (Monomial{1, 0, 1, 0}));  // a x
  EXPECT_EQ(b11.monomials[1], (Monomial{1, 0, 0, 1}));  // a y
  EXPECT_EQ(b11.monomials[2], (Monomial{0, 1, 1, 0}));  // b x
  EXPECT_EQ(b11.monomials[3], (Monomial{0, 1, 0, 1}));  // b y
  EXPECT_EQ(monomial_basis(0, 0).H(), 1u);
  EXPECT_EQ(monomial_basis(2, 3).H(), 12u);
  for (unsigned d = 0; d < 5; ++d) {
    for (unsigned e = 0; e < 5; ++e) {
      const auto b = monomial_basis(d, e);
      EXPECT_EQ(b.H(), (d + 1) * (e + 1));
      for (std::size_t i = 0; i < b.H(); ++i) {
        EXPECT_EQ(b.monomials[i].alpha + b.monomials[i].beta, d);
        EXPECT_EQ(b.monomials[i].gamma + b.monomials[i].delta, e);
        for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(b.monomials[i] == b.monomials[j]);
      }
    }
  }
}

TEST(EvaluationMatrix, Examples) {
  const auto m = evaluation_matrix({kSol}, monomial_basis(1, 1));
  ASSERT_EQ(m.rows(), 4u);
  ASSERT_EQ(m.cols(), 1u);
  EXPECT_EQ(m(0, 0), 4);
  EXPECT_EQ(m(1, 0), 2);
  EXPECT_EQ(m(2, 0), 14);
  EXPECT_EQ(m(3, 0), 7);

  const auto ones = evaluation_matrix({kSol, Quadruple{1, 2, 3, 2, 1}}, monomial_basis(0, 0));
  EXPECT_EQ(ones(0, 0), 1);
  EXPECT_EQ(ones(0, 1), 1);

  const auto dup = evaluation_matrix({kSol, kSol}, monomial_basis(2, 1));
  for (std::size_t i = 0; i < dup.rows(); ++i) EXPECT_EQ(dup(i, 0), dup(i, 1));
}

TEST(Rank, Examples) {
  const auto col = evaluation_matrix({kSol}, monomial_basis(1, 1));
  const auto r = rank_and_nullvector(col);
  EXPECT_EQ(r.rank, 1u);
  ASSERT_TRUE(r.nullvector.has_value());
  EXPECT_EQ(*r.nullvector, (std::vector<BigInt>{1, -2, 0, 0}));

  IntMatrix id(3, 3);
  for (int i = 0; i < 3; ++i) id(i, i) = 1 + i;
  id(0, 2) = 5;
  const auto full = rank_and_nullvector(id);
  EXPECT_EQ(full.rank, 3u);
  EXPECT_FALSE(full.nullvector.has_value());

  const Quadruple other{1, 2, 3, 2, 1};
  const auto dup = evaluation_matrix({kSol, other, kSol, other}, monomial_basis(1, 1));
  const auto dr = rank_and_nullvector(dup);
  EXPECT_LT(dr.rank, 4u);
  EXPECT_TRUE(dr.nullvector.has_value());
}

TEST(Rank, NullvectorIsPrimitiveAndAnnihilates) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rng() % 7) - 3;
    }
    if (rows > 1 && rng() % 2) {  // force a dependency
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = 2 * m(0, j) - m(rows > 2 ? 1 : 0, j);
    }
    const auto r = rank_and_nullvector(m);
    ASSERT_LE(r.rank, std::min(rows, cols));
    ASSERT_EQ(r.nullvector.has_value(), r.rank < rows);
    if (!r.nullvector) continue;
    const auto& c = *r.nullvector;
    BigInt g = 0;
    for (const auto& v : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    ASSERT_EQ(g, 1);
    ASSERT_GT(*std::find_if(c.begin(), c.end(), [](const BigInt& v) { return v != 0; }), 0);
    for (std::size_t j = 0; j < cols; ++j) {
      BigInt s = 0;
      for (std::size_t i = 0; i < rows; ++i) s += c[i] * m(i, j);
      ASSERT_EQ(s, 0);
    }
    if (rows == cols) {
      ASSERT_EQ(bareiss_determinant(m), oracle::cofactor_det(dense(m)));
    }
  }
}

TEST(AuxPolynomial, Examples) {
  const auto B = find_aux_polynomial({kSol}, 1, 1);
  ASSERT_EQ(B.coefficients.size(), 4u);
  EXPECT_EQ(4 * B.coefficients[0] + 2 * B.coefficients[1] + 14 * B.coefficients[2] + 7 * B.coefficients[3], 0);
  EXPECT_TRUE(verify_vanishing(B, {kSol}));
  EXPECT_EQ(B.height, 2);
  EXPECT_FALSE(B.kappa_measured.has_value());

  const auto empty = find_aux_polynomial({}, 2, 1);
  EXPECT_EQ(empty.coefficients[0], 1);
  for (std::size_t i = 1; i < empty.coefficients.size(); ++i) EXPECT_EQ(empty.coefficients[i], 0);

  const auto withZ = find_aux_polynomial({kSol}, 1, 1, 4);
  ASSERT_TRUE(withZ.kappa_measured.has_value());
  EXPECT_NEAR(*withZ.kappa_measured, 0.5, 1e-12);

  EXPECT_THROW(find_aux_polynomial({kSol}, 0, 0), RankDeficiencyError);
  try {
    find_aux_polynomial({kSol}, 0, 0);
  } catch (const RankDeficiencyError& e) {
    EXPECT_EQ(e.H, 1u);
    EXPECT_EQ(e.J, 1u);
  }
}

TEST(AuxPolynomial, VerifyVanishingExamples) {
  AuxPolynomial B;
  B.basis = monomial_basis(1, 1);
  B.coefficients = {1, -2, 0, 0};
  EXPECT_TRUE(verify_vanishing(B, {kSol}));
  EXPECT_TRUE(verify_vanishing(B, {}));
  AuxPolynomial mono;
  mono.basis = monomial_basis(2, 3);
  mono.coefficients.assign(mono.basis.H(), 0);
  mono.coefficients[0] = 1;  // a^d x^e
  EXPECT_FALSE(verify_vanishing(mono, {Quadruple{1, 2, 3, 2, 1}}));
}

TEST(AuxPolynomial, VanishesOnRealSolutionSets) {
  const Box box{4, 8, 50000, 2, 1};
  const auto pool = enumerate_solutions(box);
  ASSERT_GE(pool.size(), 20u);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const unsigned d = 1 + rng() % 2, e = rng() % 3;
    const std::size_t H = (d + 1) * (e + 1);
    const auto sols = sample(pool, H - 1, rng);
    const auto B = find_aux_polynomial(sols, d, e, box.Z);
    EXPECT_TRUE(verify_vanishing(B, sols));
  }
}

TEST(Delta1, DuplicateIsZeroAndMatchesCofactor) {
  const auto b = monomial_basis(1, 1);
  const Quadruple o1{1, 2, 3, 2, 1}, o2{2, 7, 2, 1, 1};
  EXPECT_EQ(delta1_check({o1, o2, o1, o2}, b), 0);
  EXPECT_THROW(delta1_check({o1}, b), std::invalid_argument);

  std::mt19937_64 rng(2024);
  for (int sign : {1, -1}) {
    const auto pool = enumerate_solutions(Box{4, 4, 200000, 2, sign});
    ASSERT_GE(pool.size(), 10u);
    for (int t = 0; t < 50; ++t) {
      for (const auto& [d, e] : {std::pair{0u, 1u}, std::pair{1u, 0u}, std::pair{1u, 1u}, std::pair{0u, 3u}, std::pair{3u, 0u}}) {
        const auto basis = monomial_basis(d, e);
        const auto sols = sample(pool, basis.H(), rng);
        ASSERT_EQ(delta1_check(sols, basis), oracle::cofactor_det(dense(evaluation_matrix(sols, basis))));
      }
    }
  }
}

TEST(DeltaFactorization, RandomH4) {
  std::mt19937_64 rng(77);
  const auto basis = monomial_basis(1, 1);
  const auto pool = enumerate_solutions(Box{8, 8, 100000, 2, 1});
  ASSERT_GE(pool.size(), 8u);
  int nonzero = 0;
  for (int t = 0; t < 100; ++t) {
    const auto sols = sample(pool, 4, rng);
    EXPECT_TRUE(delta_factorization_check(sols, basis));
    nonzero += delta1_check(sols, basis) != 0;
  }
  EXPECT_GT(nonzero, 0);
}

TEST(DeltaFactorization, TrivialCases) {
  const auto one = monomial_basis(0, 0);
  EXPECT_TRUE(delta_factorization_check({kSol}, one));
  EXPECT_EQ(delta1_check({kSol}, one), 1);
  EXPECT_EQ(delta2({kSol}, one), 1);
  const auto b = monomial_basis(1, 1);
  const Quadruple o{1, 2, 3, 2, 1};
  EXPECT_TRUE(delta_factorization_check({kSol, o, kSol, o}, b));
  EXPECT_EQ(delta2({kSol, o, kSol, o}, b), 0);
  // H = 2 by hand: basis (1, 0) is {a, b}; det [[a1, a2], [b1, b2]].
  const auto b10 = monomial_basis(1, 0);
  EXPECT_EQ(delta1_check({kSol, o}, b10), 2 * 2 - 1 * 7);
}

TEST(GPolynomials, Examples) {
  const auto g0 = g_polynomials(q(1, 2), 2, monomial_basis(0, 0));
  ASSERT_EQ(g0.size(), 1u);
  EXPECT_EQ(g0[0].terms().size(), 1u);
  EXPECT_EQ(g0[0].coefficient(0, 0), 1);

  const auto g = g_polynomials(q(1, 2), 2, monomial_basis(1, 1));
  const auto& by = g[3];  // b y
  EXPECT_EQ(by.coefficient(0, 0), q(1, 4));
  EXPECT_EQ(by.coefficient(1, 0), 1);
  EXPECT_EQ(by.coefficient(2, 0), 1);
  EXPECT_EQ(by.coefficient(0, 1), -1);
  EXPECT_EQ(by.terms().size(), 4u);
}

TEST(GPolynomials, SubstitutionIdentityAndDegree) {
  for (unsigned k : {2u, 3u}) {
    const Box box{4, 8, 30000, k, 1};
    const auto sols = enumerate_solutions(box);
    ASSERT_FALSE(sols.empty());
    const Rational s0 = q(1, 3);
    for (const auto& [d, e] : {std::pair{1u, 2u}, std::pair{2u, 1u}, std::pair{2u, 3u}}) {
      const auto basis = monomial_basis(d, e);
      const auto gs = g_polynomials(s0, k, basis);
      for (std::size_t i = 0; i < gs.size(); ++i) {
        EXPECT_LE(gs[i].total_degree(), k * d + e);
        for (std::size_t j = 0; j < std::min<std::size_t>(sols.size(), 5); ++j) {
          const auto& s = sols[j];
          const auto& m = basis.monomials[i];
          const Rational want = pow(s.t(), m.beta) * pow(s.s(), m.gamma);
          ASSERT_EQ(gs[i].evaluate(s.s() - s0, s.v(k)), want);
        }
      }
    }
  }
}

TEST(MonomialProductBound, Examples) {
  EXPECT_EQ(monomial_product_bound(10, 20, 1).exact_log_product, 0);
  const auto e3 = monomial_product_bound(std::exp(1.0), std::exp(1.0), 3);
  EXPECT_NEAR(e3.exact_log_product, -2, 1e-12);
  const auto r = monomial_product_bound_from_logs(2, 1, 2);
  EXPECT_DOUBLE_EQ(r.exact_log_product, -1);
  ASSERT_EQ(r.selected.size(), 2u);
  EXPECT_EQ(r.selected[1], (std::pair<unsigned, unsigned>{0, 1}));
  EXPECT_THROW(monomial_product_bound(1, 5, 2), std::invalid_argument);
  EXPECT_THROW(monomial_product_bound(5, 5, 0), std::invalid_argument);
}

TEST(MonomialProductBound, TieBreakAndTSet) {
  // Equal logs: degree-1 ties resolve toward smaller j first.
  const auto r = monomial_product_bound_from_logs(1, 1, 2);
  EXPECT_EQ(r.selected[1], (std::pair<unsigned, unsigned>{0, 1}));
  for (const auto& [lm, lv] : {std::pair{1.0, 1.0}, std::pair{2.0, 3.0}, std::pair{0.7, 5.0}}) {
    for (std::size_t H : {1u, 4u, 9u, 30u, 100u}) {
      const auto rep = monomial_product_bound_from_logs(lm, lv, H);
      EXPECT_LE(rep.exact_log_product, 0);
      // Sum over T = {j log M + l log V <= log W}, minus surplus tied terms.
      double sumT = 0;
      std::size_t countT = 0;
      for (unsigned j = 0; j <= 200; ++j) {
        for (unsigned l = 0; l <= 200; ++l) {
          const double val = j * lm + l * lv;
          if (val <= rep.log_W + 1e-9) {
            sumT += val;
            ++countT;
          }
        }
      }
      ASSERT_GE(countT, H);
      const double surplus = static_cast<double>(countT - H) * rep.log_W;
      EXPECT_NEAR(-rep.exact_log_product, sumT - surplus, 1e-6 * (1 + sumT));
      EXPECT_LE(countT - H, H);
    }
  }
}

// exact / asymptotic rises toward 1 (equivalently asymptotic / exact falls to 1).
TEST(MonomialProductBound, AsymptoticTrend) {
  double prev = 0;
  for (std::size_t H : {10u, 20u, 40u, 80u}) {
    const auto r = monomial_product_bound_from_logs(100, 100, H);
    const double ratio_exact = r.exact_log_product / r.asymptotic_value;
    EXPECT_GT(ratio_exact, prev) << H;
    EXPECT_LT(ratio_exact, 1.0) << H;
    prev = ratio_exact;
  }
  EXPECT_GT(prev, 0.7);
}

TEST(BoxAnalysis, Fields) {
  const auto a = analyze_box(Box{4, 8, 1024, 2, 1});
  EXPECT_EQ(a.A, 64);
  EXPECT_EQ(a.B, 16);
  EXPECT_EQ(a.V, 64 * 64);
  EXPECT_NEAR(static_cast<double>(a.alpha), 0.2, 1e-15);
  EXPECT_NEAR(static_cast<double>(a.beta), 0.3, 1e-15);
  // V = Z (Y/X)^k >= Z when X <= Y <= Z^(1/k).
  for (long X = 1; X <= 32; X *= 2) {
    for (long Y = X; Y <= 32; Y *= 2) {
      const auto b = analyze_box(Box{X, Y, 1024, 2, 1});
      EXPECT_GE(b.V, 1024);
    }
  }
}

TEST(ChooseDegrees, Examples) {
  // A = Y
  EXPECT_EQ(choose_degrees(analyze_box(Box{4, 8, 128, 2, 1}), 3), (std::pair<unsigned, unsigned>{3, 3}));
  // A = Y^2
  EXPECT_EQ(choose_degrees(analyze_box(Box{2, 4, 64, 2, 1}), 2), (std::pair<unsigned, unsigned>{2, 4}));
  // A = 1
  EXPECT_EQ(choose_degrees(analyze_box(Box{8, 2, 64, 2, 1}), 4), (std::pair<unsigned, unsigned>{4, 0}));
  EXPECT_THROW(choose_degrees(analyze_box(Box{8, 1, 64, 2, 1}), 2), std::invalid_argument);
}

TEST(ChooseM, Examples) {
  // u = 1: X = Z^(1/k), log A = 0, M = ceil(Y).
  const auto u1 = choose_M(analyze_box(Box{32, q(100, 3), 1024, 2, 1}), 2, q(1, 10));
  EXPECT_EQ(u1.M, 34u);
  EXPECT_FALSE(u1.clamped);

  // u = 5/9, v = 1, delta = 0: M = Z^(2/k).
  const auto k3 = choose_M(analyze_box(Box{32, 512, u64{1} << 27, 3, 1}), 3, 0);
  EXPECT_EQ(k3.M, u64{1} << 18);
  EXPECT_FALSE(k3.clamped);
  const auto k2 = choose_M(analyze_box(Box{32, 512, u64{1} << 18, 2, 1}), 2, 0);
  EXPECT_EQ(k2.M, u64{1} << 18);
  EXPECT_TRUE(k2.clamped);

  EXPECT_THROW(choose_M(analyze_box(Box{32, 512, u64{1} << 18, 2, 1}), 3, 0), std::invalid_argument);
}

TEST(ChooseM, MeetsLowerBounds) {
  for (u64 Z : {1000u, 100000u, 10000000u}) {
    for (long X = 2; X <= 256; X *= 2) {
      for (long Y = X; Y <= 512; Y *= 2) {
        const auto a = analyze_box(Box{X, Y, Z, 2, 1});
        const auto m = choose_M(a, 2, q(1, 10));
        const long double need = std::max<long double>(
            4.5L * 1.1L * a.log_A() * a.log_Y() / a.log_Z(), a.log_Y());
        if (!m.clamped) {
          EXPECT_GE(std::log(static_cast<long double>(m.M)) + 1e-12L, need);
          if (m.M > 1) {
            EXPECT_LT(std::log(static_cast<long double>(m.M - 1)), need + 1e-12L);
          }
        } else {
          EXPECT_EQ(m.M, Z);
        }
      }
    }
  }
}
