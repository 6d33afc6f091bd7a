#include <gtest/gtest.h>

#include "thetadet/error.hpp"
#include "thetadet/macdonald.hpp"

using namespace thetadet;

namespace {

bool small_grid(Family f, int n) {
  const bool two_up = f == Family::B || f == Family::Bvee || f == Family::D;
  return two_up ? (n == 2 || n == 3) : (n >= 1 && n <= 3);
}

std::vector<std::pair<Family, int>> grid() {
  std::vector<std::pair<Family, int>> g;
  for (Family f : all_families()) {
    for (int n = 1; n <= 3; ++n) {
      if (small_grid(f, n)) g.emplace_back(f, n);
    }
  }
  return g;
}

std::string label(Family f, int n) { return family_name(f) + std::to_string(n); }

LaurentPoly xv(int nvars, int i, int e = 1) { return LaurentPoly::variable(nvars, i, e); }

}  // namespace

TEST(MdpEntries, SmallCases) {
  // A_0: theta(t x_1) with t in slot 1
  const auto a = mdp_entries(Family::A, 1, {0}, 1);
  ASSERT_EQ(a.size(), 1u);
  ExactEvaluator ev(std::vector<std::optional<ExactValue>>(2));
  EXPECT_TRUE(series_equal(ev.eval(a[0], 10), ev.eval(theta(Mono::var(0) * Mono::var(1)), 10), 10).equal);

  // BC_1 entry is odd under x -> 1/x, so it vanishes at x = 1
  const auto bc = mdp_entries(Family::BC, 1, {0});
  ExactEvaluator at_one({ExactValue{1, 0}});
  EXPECT_TRUE(at_one.eval(bc[0], 12).is_zero());

  EXPECT_THROW(mdp_entries(Family::D, 1, {0}), Error);
  EXPECT_THROW(mdp_matrix(Family::D, 1, 4), Error);
  EXPECT_THROW(mdp_entries(Family::A, 1, {0}), Error);
}

TEST(MdpEntries, CTwoByTwoByHand) {
  const auto m = mdp_matrix(Family::C, 2, 6);
  ASSERT_EQ(m.size(), 4u);
  ExactEvaluator ev(std::vector<std::optional<ExactValue>>(2));
  auto entry = [&](int i, int j) {
    const int qp = 2 * j;
    return ev.eval(Mono::var(i, j - 3) * theta(Rational(-1) * (Mono::q(qp) * Mono::var(i, 6)), 12) -
                       Mono::var(i, 3 - j) * theta(Rational(-1) * (Mono::q(qp) * Mono::var(i, -6)), 12),
                   6);
  };
  for (int i = 0; i < 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      EXPECT_TRUE(series_equal(m[static_cast<std::size_t>(2 * i + j - 1)], entry(i, j), 6).equal) << i << j;
    }
  }
}

TEST(EulerConstant, UnitWithScale) {
  for (Family f : all_families()) {
    for (int n = (f == Family::D ? 2 : 1); n <= 4; ++n) {
      const NomeSeries k = euler_constant(f, n, 0, 6);
      EXPECT_EQ(k.low(), 0);
      const Rational want = f == Family::B || f == Family::Bvee ? Rational(2) : f == Family::D ? Rational(4) : Rational(1);
      EXPECT_EQ(k.coeff(0), LaurentPoly::constant(0, want)) << label(f, n);
    }
  }
}

TEST(EulerConstant, BTwoByHand) {
  // 2 (p;p)^2 / (p^3;p^3)^2 with p = q^2
  ExactEvaluator ev({});
  const NomeSeries num = ev.eval(power(poch(Mono::q(2), 2), 2), 12);
  const NomeSeries den = ev.eval(power(poch(Mono::q(6), 6), 2), 12);
  const NomeSeries want = num * series_invert_unit(den) * Rational(2);
  EXPECT_TRUE(series_equal(euler_constant(Family::B, 2, 0, 12), want, 12).equal);
}

TEST(Mdp, AllFamiliesSmallN) {
  for (auto [f, n] : grid()) {
    const Verdict v = mdp_verify(f, n, 8);
    EXPECT_TRUE(v.equal) << label(f, n);
  }
}

TEST(Mdp, ExamplesAtHigherOrder) {
  EXPECT_TRUE(mdp_verify(Family::A, 1, 10).equal);
  EXPECT_TRUE(mdp_verify(Family::C, 1, 10).equal);
  EXPECT_TRUE(mdp_verify(Family::B, 2, 8).equal);
}

TEST(Mlc, BothVersionsSmallN) {
  for (auto [f, n] : grid()) {
    for (int version : {1, 2}) {
      const Verdict v = mlc_verify(f, n, version, 8);
      EXPECT_TRUE(v.equal) << label(f, n) << " v" << version;
    }
  }
}

TEST(Mlc, VersionsAgree) {
  for (auto [f, n] : grid()) {
    const NomeSeries v1 = mlc_sum_expand(MlcSum{f, n, 1, true, 12});
    const NomeSeries v2 = mlc_sum_expand(MlcSum{f, n, 2, true, 12});
    EXPECT_TRUE(series_equal(v1, v2, 12).equal) << label(f, n);
  }
  for (Family f : all_families()) {
    const int n = f == Family::D ? 2 : 1;
    EXPECT_TRUE(series_equal(mlc_sum_expand(MlcSum{f, n, 1, true, 0}), mlc_sum_expand(MlcSum{f, n, 2, true, 0}), 0).equal);
  }
}

TEST(Mlc, ParityIsLoadBearing) {
  for (Family f : {Family::B, Family::Bvee, Family::D}) {
    EXPECT_EQ(mlc_parity(f), Parity::SumEven);
    const NomeSeries with = mlc_sum_expand(MlcSum{f, 2, 2, true, 8});
    const NomeSeries without = mlc_sum_expand(MlcSum{f, 2, 2, false, 8});
    EXPECT_FALSE(series_equal(with, without, 8).equal) << family_name(f);
  }
  EXPECT_EQ(mlc_parity(Family::A), Parity::SumZero);
  EXPECT_EQ(mlc_parity(Family::BC), Parity::None);
}

TEST(Mlc, OrderZeroTypeA) {
  const NomeSeries s = mlc_sum_expand(MlcSum{Family::A, 2, 2, true, 0});
  EXPECT_EQ(s.low(), 0);
  EXPECT_EQ(s.coeff(0), xv(2, 1) - xv(2, 0));
}

TEST(Mlc, QuintupleSumShape) {
  // sum_m x^{3m} q^{3m(m-1)+2m} (1 - x q^{2m})
  const int order = 30;
  NomeSeries want(1, order);
  for (int m = -6; m <= 6; ++m) {
    const int e = 3 * m * (m - 1) + 2 * m;
    want = want + NomeSeries::monomial(xv(1, 0, 3 * m), e, order) - NomeSeries::monomial(xv(1, 0, 3 * m + 1), e + 2 * m, order);
  }
  EXPECT_TRUE(series_equal(mlc_sum_expand(MlcSum{Family::BC, 1, 2, true, order}), want, order).equal);
}

TEST(Mlc, ProductSideLeadingTerm) {
  for (auto [f, n] : grid()) {
    const NomeSeries s = mlc_product_side(f, n, 0);
    const auto [cls, k] = classical_reduction(f);
    EXPECT_EQ(s.coeff(0), weyl_denominator_product(cls, n) * k) << label(f, n);
  }
}

TEST(Mlc, DHalfOnlyInFirstVersion) {
  EXPECT_TRUE(mlc_verify(Family::D, 2, 1, 10).equal);
  EXPECT_TRUE(mlc_verify(Family::D, 2, 2, 10).equal);
}

TEST(Classical, Specializations) {
  EXPECT_TRUE(mlc_verify(Family::BC, 1, 2, 40).equal);
  EXPECT_TRUE(classical_specialization("quintuple", 30).verdict.equal);
  EXPECT_TRUE(classical_specialization("winquist", 20).verdict.equal);
  const auto sept = classical_specialization("septuple", 20);
  EXPECT_TRUE(sept.verdict.equal);
  EXPECT_EQ(sept.lhs.nvars(), 1);
  EXPECT_FALSE(sept.lhs.is_zero());
  EXPECT_THROW(classical_specialization("sextuple", 4), Error);
}
