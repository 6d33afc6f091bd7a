#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "thetadet/error.hpp"
#include "thetadet/expr.hpp"

using namespace thetadet;
using thetadet::testing::random_rational;

namespace {

NomeSeries constant_series(const Rational& c, int order = 0) {
  return NomeSeries::constant(LaurentPoly::constant(0, c), order);
}

// Fraction-free Gaussian elimination over the rationals.
Rational bareiss(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

TEST(Det, SingleEntry) {
  std::vector<NomeSeries> m{constant_series(7)};
  EXPECT_EQ(det_division_free(m, 1).coeff(0), LaurentPoly::constant(0, 7));
}

TEST(Det, TwoByTwoSymbolic) {
  std::vector<NomeSeries> m;
  for (int i = 0; i < 4; ++i) m.push_back(NomeSeries::constant(LaurentPoly::variable(4, i), 3));
  LaurentPoly expect = LaurentPoly::variable(4, 0) * LaurentPoly::variable(4, 3) -
                       LaurentPoly::variable(4, 1) * LaurentPoly::variable(4, 2);
  EXPECT_EQ(det_division_free(m, 2).coeff(0), expect);
}

TEST(Det, MatchesBareissOracle) {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
      std::vector<NomeSeries> m;
      for (auto& row : a) {
        for (auto& v : row) {
          v = random_rational(rng, false);
          m.push_back(constant_series(v));
        }
      }
      EXPECT_EQ(det_division_free(m, n).coeff(0).constant_term(), bareiss(a)) << "n=" << n;
    }
  }
}

TEST(Det, SizeBounds) {
  std::vector<NomeSeries> m(49, constant_series(1));
  EXPECT_THROW(det_division_free(m, 7), Error);
  EXPECT_THROW(det_division_free({}, 0), Error);
}

TEST(Expr, MonoAlgebra) {
  Mono a = Mono{make_rational(2, 3), {{0, 1}, {2, -1}}, 1};
  Mono b = Mono::var(2) * Mono::q(-1);
  Mono ab = a * b;
  EXPECT_EQ(ab.coeff, make_rational(2, 3));
  EXPECT_EQ(ab.vars, (std::vector<std::pair<int, int>>{{0, 1}}));
  EXPECT_EQ(ab.qpow, 0);
  EXPECT_EQ(a * a.inverse(), Mono::constant(1));
  EXPECT_EQ(a.pow(3), a * a * a);
  EXPECT_EQ(a.pow(-2), (a * a).inverse());
}

TEST(Expr, EvaluationMatchesDirectEngine) {
  const int order = 12;
  Expr e = mono(Mono::var(0, -1)) * theta(Mono::var(0).pow(2)) + theta(Mono::var(0) * Mono::var(1), 1);
  ExactEvaluator ev({std::nullopt, ExactValue{make_rational(3, 2), 1}});
  NomeSeries got = ev.eval(e, order);
  Exponents x1;
  x1.set(0, 1);
  Exponents x2;
  x2.set(0, 2);
  Exponents xm;
  xm.set(0, -1);
  NomeSeries expect =
      theta_expand(1, ThetaCall{MonomialArg{1, x2, 0}, 2}, order) * LaurentPoly::monomial(1, 1, xm) +
      theta_expand(1, ThetaCall{MonomialArg{make_rational(3, 2), x1, 1}, 1}, order);
  EXPECT_EQ(got.order(), order);
  EXPECT_TRUE(series_equal(got, expect, order).equal);
}

TEST(Expr, ProductPlansPrecisionForNegativeLows) {
  const int order = 6;
  Expr e = theta(Mono{3, {{0, 1}}, -9}) * theta(Mono{2, {}, -7}, 1) * poch(Mono{5, {}, -4});
  ExactEvaluator ev({std::nullopt});
  NomeSeries got = ev.eval(e, order);
  ExactEvaluator wide({std::nullopt});
  NomeSeries all = wide.eval(theta(Mono{3, {{0, 1}}, -9}), 80) * wide.eval(theta(Mono{2, {}, -7}, 1), 80) *
                   wide.eval(poch(Mono{5, {}, -4}), 80);
  EXPECT_TRUE(series_equal(got, all, order).equal);
  EXPECT_LE(ev.min_qexp(e), got.low());
}

TEST(Expr, TruncationConsistency) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Expr> entries;
    for (int i = 0; i < 9; ++i) {
      entries.push_back(mono(Mono::var(i % 3)) * theta(Mono{random_rational(rng), {{i % 3, 1}}, static_cast<int>(rng() % 5) - 2}));
    }
    Expr e = det(3, entries) + theta(Mono::var(1) / Mono::var(2));
    std::vector<std::optional<ExactValue>> vals{ExactValue{random_rational(rng), 0}, std::nullopt,
                                                ExactValue{random_rational(rng), 0}};
    ExactEvaluator ev(vals);
    NomeSeries hi = ev.eval(e, 14);
    ExactEvaluator ev2(vals);
    NomeSeries lo = ev2.eval(e, 8);
    EXPECT_TRUE(series_equal(hi.truncate(8), lo, 8).equal);
  }
}

TEST(Expr, SubstituteReflection) {
  Expr e = mono(Mono::var(0, 2)) * theta(Mono{2, {{0, 1}, {1, 1}}, 0});
  Expr r = substitute(e, 0, Mono::var(0, -1));
  ExactEvaluator ev({ExactValue{make_rational(1, 3), 0}, std::nullopt});
  ExactEvaluator ev3({ExactValue{3, 0}, std::nullopt});
  EXPECT_TRUE(series_equal(ev.eval(r, 8), ev3.eval(e, 8), 8).equal);
}

TEST(Expr, Degeneracy) {
  ExactEvaluator ev({ExactValue{2, 0}, ExactValue{2, 0}, std::nullopt});
  EXPECT_TRUE(ev.degeneracy(theta(Mono::var(0) / Mono::var(1))));
  EXPECT_TRUE(ev.degeneracy(theta(Mono::var(0) / Mono::var(1) * Mono::q(4))));
  EXPECT_FALSE(ev.degeneracy(theta(Mono::var(0) / Mono::var(1) * Mono::q(1))));
  EXPECT_TRUE(ev.degeneracy(theta(Mono::var(0) / Mono::var(1) * Mono::q(1), 1)));
  EXPECT_TRUE(ev.degeneracy(mono(Mono::var(0)) - mono(Mono::var(1))));
  EXPECT_FALSE(ev.degeneracy(mono(Mono::var(0)) - mono(Mono::var(2))));
  EXPECT_FALSE(ev.degeneracy(theta(Mono::var(2))));
}

TEST(Expr, FormalVariableBudget) {
  EXPECT_THROW(ExactEvaluator(std::vector<std::optional<ExactValue>>(13)), Error);
}
