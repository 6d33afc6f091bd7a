#include <gtest/gtest.h>

#include <random>

#include "thetadet/error.hpp"
#include "thetadet/root_systems.hpp"
#include "thetadet/sampling.hpp"

using namespace thetadet;

namespace {

std::vector<int> iota_vars(int n) {
  std::vector<int> v;
  for (int i = 0; i < n; ++i) v.push_back(i);
  return v;
}

LaurentPoly xv(int nvars, int i, int e = 1) { return LaurentPoly::variable(nvars, i, e); }

}  // namespace

TEST(Families, Names) {
  for (Family f : all_families()) EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_EQ(family_name(Family::Bvee), "Bvee");
  EXPECT_THROW(parse_family("E8"), Error);
}

TEST(MacdonaldDenominator, LowOrderExamples) {
  const LaurentPoly one = LaurentPoly::constant(2, 1);
  EXPECT_EQ(macdonald_denominator(Family::A, 2, 0).coeff(0), xv(2, 1) - xv(2, 0));
  EXPECT_EQ(macdonald_denominator(Family::D, 2, 0).coeff(0),
            xv(2, 0, -1) * (one - xv(2, 0) * xv(2, 1)) * (one - xv(2, 0) * xv(2, 1, -1)));
  Exponents x2;
  x2.set(0, 2);
  NomeSeries c1 = theta_expand(1, ThetaCall{MonomialArg{1, x2, 0}, 2}, 2) * xv(1, 0, -1);
  EXPECT_TRUE(series_equal(macdonald_denominator(Family::C, 1, 2), c1, 2).equal);
}

TEST(WeylDenominator, Examples) {
  EXPECT_EQ(weyl_denominator_product(Family::A, 2), xv(2, 1) - xv(2, 0));
  EXPECT_EQ(weyl_denominator_product(Family::D, 1), LaurentPoly::constant(1, 2));
  EXPECT_EQ(weyl_denominator_product(Family::B, 1), LaurentPoly::constant(1, 1) - xv(1, 0));
  EXPECT_THROW(weyl_denominator_product(Family::BC, 2), Error);
}

TEST(WeylDenominator, DeterminantFormulas) {
  for (Family f : {Family::A, Family::B, Family::C, Family::D}) {
    for (int n = 1; n <= 4; ++n) {
      ExactEvaluator ev(std::vector<std::optional<ExactValue>>(static_cast<std::size_t>(n)));
      EXPECT_EQ(ev.eval(weyl_determinant(f, iota_vars(n)), 0).coeff(0), weyl_denominator_product(f, n))
          << family_name(f) << n;
    }
  }
}

TEST(MacdonaldDenominator, OrderZeroIsClassical) {
  for (Family f : all_families()) {
    for (int n = 1; n <= 4; ++n) {
      const auto [classical, k] = classical_reduction(f);
      EXPECT_EQ(macdonald_denominator(f, n, 0).coeff(0), weyl_denominator_product(classical, n) * k)
          << family_name(f) << n;
    }
  }
}

TEST(RTheta, BuildExamples) {
  RThetaSpec a;
  a.family = Family::A;
  a.n = 1;
  a.norm = Mono::constant(make_rational(2, 5));
  a.b = {*a.norm};
  Expr fa = build_r_theta(a, 0);
  ExactEvaluator at({ExactValue{make_rational(5, 2), 0}});
  EXPECT_TRUE(at.eval(fa, 10).is_zero());

  RThetaSpec d;
  d.family = Family::D;
  d.n = 1;
  d.constant = Mono::constant(7);
  ExactEvaluator any({std::nullopt});
  EXPECT_EQ(any.eval(build_r_theta(d, 0), 6).coeff(0), LaurentPoly::constant(1, 7));

  RThetaSpec bc;
  bc.family = Family::BC;
  bc.n = 1;
  ExactEvaluator one({ExactValue{1, 0}});
  EXPECT_TRUE(one.eval(build_r_theta(bc, 0), 10).is_zero());

  a.b = {Mono::constant(3)};
  EXPECT_THROW(build_r_theta(a, 0), Error);
  bc.b = {Mono::constant(2)};
  EXPECT_THROW(build_r_theta(bc, 0), Error);
}

TEST(RTheta, BuiltSpecsSatisfyTheirEquations) {
  std::mt19937_64 rng(41);
  for (Family f : all_families()) {
    for (int trial = 0; trial < 4; ++trial) {
      const int n = 1 + trial % 3;
      RThetaSpec spec = random_r_theta_spec(f, n, rng);
      RThetaCheck check{f, n, spec.norm, 8, 2, rng()};
      Verdict v = check_r_theta(build_r_theta(spec, 0), 0, {std::nullopt}, check);
      EXPECT_TRUE(v.equal) << family_name(f) << n << " " << v.note;
    }
  }
}

TEST(RTheta, LiftsSatisfyTheirEquations) {
  std::mt19937_64 rng(42);
  for (Family f : all_families()) {
    if (f == Family::A) continue;
    for (int n = 1; n <= 3; ++n) {
      Expr g = random_lift_seed(f, n, 0, rng);
      RThetaCheck check{f, n, std::nullopt, 8, 2, rng()};
      Verdict v = check_r_theta(lift_from_g(g, f, 0), 0, {std::nullopt}, check);
      EXPECT_TRUE(v.equal) << family_name(f) << n << " " << v.note;
    }
  }
}

TEST(RTheta, DLiftIsSymmetric) {
  std::mt19937_64 rng(43);
  Expr g = theta(Mono{3, {{0, 1}}, 1}) * theta(Mono{make_rational(-1, 2), {{0, 1}}, 0});
  Expr f = lift_from_g(g, Family::D, 0);
  ExactEvaluator ev({ExactValue{make_rational(4, 7), 0}});
  ExactEvaluator inv({ExactValue{make_rational(7, 4), 0}});
  EXPECT_TRUE(series_equal(ev.eval(f, 10), inv.eval(f, 10), 10).equal);
  ExactEvaluator formal({std::nullopt});
  EXPECT_TRUE(formal.eval(lift_from_g(constant(0), Family::B, 0), 5).is_zero());
}

TEST(RTheta, RejectsNonThetaFunction) {
  for (Family f : all_families()) {
    RThetaCheck check{f, 2, Mono::constant(2), 6, 2, 5};
    EXPECT_FALSE(check_r_theta(mono(Mono::var(0)), 0, {std::nullopt}, check).equal) << family_name(f);
  }
  RThetaCheck a0{Family::A, 1, Mono::constant(make_rational(3, 4)), 10, 3, 6};
  EXPECT_TRUE(check_r_theta(theta(Mono{make_rational(3, 4), {{0, 1}}, 0}), 0, {std::nullopt}, a0).equal);
}

TEST(RTheta, DenominatorsInEachVariable) {
  std::mt19937_64 rng(44);
  for (Family f : all_families()) {
    if (f == Family::A) continue;
    for (int n = 2; n <= 3; ++n) {
      for (int i = 0; i < n; ++i) {
        std::vector<std::optional<ExactValue>> vals(static_cast<std::size_t>(n));
        for (auto& v : vals) v = ExactValue{sample_rational(rng), 0};
        RThetaCheck check{f, n, std::nullopt, 6, 1, rng()};
        Verdict v = check_r_theta(w_expr(f, iota_vars(n)), i, vals, check);
        EXPECT_TRUE(v.equal) << family_name(f) << n << " x" << i << " " << v.note;
      }
    }
  }
}

// x^-2 theta(ax,bx,cx,dx) - x^2 theta(a/x,b/x,c/x,d/x) = (ax)^-1 theta(ab,ac,ad,x^2), abcd = 1
namespace {
std::pair<Expr, Expr> addition_formula() {
  const Mono a = Mono::var(0), b = Mono::var(1), c = Mono::var(2), x = Mono::var(3);
  const Mono d = (a * b * c).inverse();
  Expr g = mono(x.pow(-2)) * product({theta(a * x), theta(b * x), theta(c * x), theta(d * x)});
  Expr lhs = lift_from_g(g, Family::C, 3);
  Expr rhs = mono((a * x).inverse()) * product({theta(a * b), theta(a * c), theta(a * d), theta(x.pow(2))});
  return {lhs, rhs};
}
}  // namespace

TEST(RTheta, AdditionFormulaSymbolic) {
  auto [lhs, rhs] = addition_formula();
  ExactEvaluator ev(std::vector<std::optional<ExactValue>>(4));
  EXPECT_TRUE(series_equal(ev.eval(lhs, 5), ev.eval(rhs, 5), 5).equal);
}

TEST(RTheta, AdditionFormulaRational) {
  auto [lhs, rhs] = addition_formula();
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<std::optional<ExactValue>> vals;
    for (int i = 0; i < 4; ++i) vals.push_back(ExactValue{sample_rational(rng), 0});
    ExactEvaluator ev(vals);
    EXPECT_TRUE(series_equal(ev.eval(lhs, 20), ev.eval(rhs, 20), 20).equal);
  }
}
