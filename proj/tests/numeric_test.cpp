#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "thetadet/error.hpp"
#include "thetadet/numeric.hpp"

using namespace thetadet;

namespace {

cplx value(const CaseInstance& inst, const NumericBinding& b, const std::string& name) {
  if (auto i = inst.vars.find(name)) return b.values[static_cast<std::size_t>(*i)];
  const auto d = derived_values(inst, b);
  for (std::size_t k = 0; k < inst.derived.size(); ++k) {
    if (inst.derived[k].first == name) return d[k];
  }
  ADD_FAILURE() << "no parameter " << name;
  return 0.0;
}

std::string idx(int i) { return std::to_string(i); }

// Triple product sum, independent of the product code.
cplx theta_by_sum(cplx x, cplx p) {
  cplx s = 0.0;
  for (int n = -40; n <= 40; ++n) s += std::pow(-1.0, n) * std::pow(p, n * (n - 1) / 2.0) * std::pow(x, n);
  cplx euler = 1.0;
  for (int k = 1; k < 400; ++k) euler *= 1.0 - std::pow(p, k);
  return s / euler;
}

}  // namespace

TEST(ThetaNum, ZeroAndDomain) {
  EXPECT_EQ(theta_num(1.0, 0.3), cplx(0.0));
  EXPECT_THROW(theta_num(0.0, 0.3), Error);
  EXPECT_THROW(theta_num(0.5, 1.0), Error);
  EXPECT_THROW(theta_num(0.5, cplx(0.0, 1.2)), Error);
  EXPECT_THROW(make_nome(0.95), Error);
  EXPECT_THROW(make_nome(0.0), Error);
}

TEST(ThetaNum, QuasiPeriodicity) {
  const cplx p(0.3, 0.1);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 20; ++i) {
    const cplx x(u(rng), u(rng));
    EXPECT_LT(std::abs(theta_num(p * x, p) * x + theta_num(x, p)), 1e-10);
    EXPECT_LT(std::abs(theta_num(1.0 / x, p) + theta_num(x, p) / x), 1e-10);
  }
}

TEST(ThetaNum, SpecialValue) {
  const cplx p = 0.2;
  const cplx h = std::sqrt(p);
  EXPECT_NEAR(std::abs(theta_num(-1.0, p) * theta_num(h, p) * theta_num(-h, p) - 2.0), 0.0, 1e-10);
}

TEST(ThetaNum, MatchesTripleProductSum) {
  for (cplx p : {cplx(0.25), cplx(0.3, 0.1), cplx(-0.4, 0.2)}) {
    for (cplx x : {cplx(0.7, 0.2), cplx(-1.3, 0.4), cplx(2.0, -1.0)}) {
      EXPECT_LT(relative_residual(theta_num(x, p), theta_by_sum(x, p)), 1e-12);
    }
  }
}

TEST(ThetaNum, PochhammerAndDet) {
  // (0.5; 1e-4) to five factors: the sixth changes the value by ~5e-21
  double want = 1.0;
  for (int k = 0; k < 5; ++k) want *= 1.0 - 0.5 * std::pow(1e-4, k);
  EXPECT_NEAR(std::abs(poch_num(0.5, 0.0001) - want), 0.0, 1e-15);
  EXPECT_EQ(poch_num(0.0, 0.5), cplx(1.0));
  std::vector<cplx> m{2.0, 1.0, cplx(0, 1), 3.0};
  EXPECT_LT(std::abs(det_num(m, 2) - cplx(6.0, -1.0)), 1e-15);
  std::vector<cplx> perm{0.0, 1.0, 1.0, 0.0};
  EXPECT_EQ(det_num(perm, 2), cplx(-1.0));
}

TEST(Qrt, RootsOfUnity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int k = 1; k <= 12; ++k) {
    const cplx x(u(rng), u(rng));
    EXPECT_LT(qrt_residual(k, x, cplx(0.3, 0.1)), 1e-10) << k;
  }
  EXPECT_LT(qrt_residual(3, cplx(0.8, 0.3), 0.25), 1e-10);
  EXPECT_THROW(qrt_residual(13, 0.5, 0.25), Error);
  EXPECT_THROW(qrt_residual(0, 0.5, 0.25), Error);
}

TEST(NumericBinding, DeterministicAndBounded) {
  const auto inst = instantiate(find_identity("thm_adet"), 3);
  const auto a = random_numeric_binding(inst, 5);
  const auto b = random_numeric_binding(inst, 5);
  const auto c = random_numeric_binding(inst, 6);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
  ASSERT_EQ(a.values.size(), static_cast<std::size_t>(inst.vars.size()));
  for (const auto& v : a.values) {
    EXPECT_GE(std::abs(v), 0.5);
    EXPECT_LE(std::abs(v), 2.0);
  }
  EXPECT_EQ(a.q * a.q, a.p);
}

TEST(NumericBinding, TvcorConstraint) {
  for (int n = 2; n <= 5; ++n) {
    const auto inst = instantiate(find_identity("cor_tvcor"), n);
    const auto b = random_numeric_binding(inst, 11);
    const cplx t = value(inst, b, "t");
    for (int j = 1; j <= n; ++j) {
      cplx prod = value(inst, b, "b" + idx(j));
      for (int k = 1; k < j; ++k) prod *= value(inst, b, "a" + idx(k));
      for (int k = j + 1; k <= n; ++k) prod *= value(inst, b, "c" + idx(k));
      EXPECT_LT(std::abs(prod - t), 1e-14 * std::max(1.0, std::abs(t)));
    }
  }
}

TEST(NumericBinding, CdetNormConstraint) {
  for (int n = 1; n <= 5; ++n) {
    const auto inst = instantiate(find_identity("thm_cdet"), n);
    const auto b = random_numeric_binding(inst, 2);
    for (int j = 1; j <= n; ++j) {
      cplx norm = 1.0;
      for (int k = 1; k <= n + 2; ++k) norm *= value(inst, b, "c" + idx(k));
      for (int k = j + 1; k <= n; ++k) norm *= value(inst, b, "a" + idx(k));
      cplx prod = 1.0;
      for (int k = 1; k <= j; ++k) prod *= value(inst, b, "b" + idx(k) + "_" + idx(j));
      EXPECT_LT(std::abs(prod * norm - 1.0), 1e-14);
    }
  }
}

TEST(VerifyNumeric, RegistrySmallN) {
  for (const auto& c : list_identities()) {
    for (int n = c.n_min; n <= std::min(c.n_max, 3); ++n) {
      const auto inst = instantiate(c, n);
      const auto r = verify_numeric_case(inst, 1, 0.25, 1e-8);
      EXPECT_TRUE(r.pass()) << c.id << " n=" << n << " residual " << r.residual;
    }
  }
}

TEST(VerifyNumeric, AdetFour) {
  const auto inst = instantiate(find_identity("thm_adet"), 4);
  for (std::uint64_t s = 1; s <= 3; ++s) EXPECT_LT(verify_numeric_case(inst, s, 0.25, 1e-9).residual, 1e-9);
}

TEST(VerifyNumeric, ExtendedReach) {
  for (const char* id : {"thm_adet", "thm_cdet"}) {
    const auto inst = instantiate(find_identity(id), 5);
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const auto r = verify_numeric_case(inst, s, 0.25, 1e-8, Precision::Extended);
      EXPECT_TRUE(r.pass()) << id << " seed " << s << " residual " << r.residual;
    }
  }
}

TEST(VerifyNumeric, DetectsWrongIdentity) {
  auto inst = instantiate(find_identity("thm_cdet"), 2);
  inst.rhs = inst.rhs * theta(Mono::q(1) * Mono::var(0));
  EXPECT_FALSE(verify_numeric_case(inst, 1, 0.25, 1e-8).pass());
  EXPECT_FALSE(verify_numeric_case(inst, 1, 0.25, 1e-8, Precision::Extended).pass());
}

TEST(VerifyNumeric, DegenerateAfterResampling) {
  // theta(x_1 / x_1) = theta(1) vanishes at every binding
  CaseInstance inst;
  inst.id = "zero";
  inst.n = 1;
  const int x = inst.vars.add("x1");
  inst.roles.push_back(Role{"x", {x}, RoleKind::Variable, ""});
  inst.lhs = theta(Mono::var(x) / Mono::var(x));
  inst.rhs = constant(Rational(0));
  const auto r = verify_numeric_case(inst, 1, 0.25, 1e-8);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.status(), "degenerate");
}

TEST(VerifyNumeric, MacdonaldForms) {
  for (Family f : all_families()) {
    for (int n = (f == Family::D ? 2 : 1); n <= 3; ++n) {
      EXPECT_TRUE(verify_numeric_mdp(f, n, 1, cplx(0.3, 0.1), 1e-8).pass()) << family_name(f) << n;
      for (int v : {1, 2}) {
        EXPECT_TRUE(verify_numeric_mlc(f, n, v, 2, 0.25, 1e-8).pass()) << family_name(f) << n << " v" << v;
      }
    }
  }
}

TEST(BackendAgreement, SmallCases) {
  for (const char* id : {"eq_jti", "eq_radd", "thm_adet", "cor_bdet", "cor_cdetr1", "cor_apoldet"}) {
    const auto& c = find_identity(id);
    for (int n = c.n_min; n <= std::min(c.n_max, 2); ++n) {
      const auto r = backend_agreement(instantiate(c, n), 1, 0.25, 1e-8);
      EXPECT_TRUE(r.pass()) << id << " n=" << n << " residual " << r.residual;
    }
  }
}

TEST(BackendAgreement, SmallSidesAreNotDegenerate) {
  // both sides are ~1e-7 here: legitimately small, not identically zero
  const auto r = backend_agreement(instantiate(find_identity("cor_bvdet"), 3), 2, 0.25, 1e-8);
  EXPECT_TRUE(r.pass()) << r.status() << " " << r.residual;
}

TEST(BackendAgreement, ComparesBackendsNotSides) {
  // a false identity: each side still agrees across backends, lhs != rhs
  auto inst = instantiate(find_identity("thm_adet"), 2);
  inst.rhs = inst.rhs * theta(Mono::q(1) * Mono::var(0));
  const auto r = backend_agreement(inst, 1, 0.25, 1e-8);
  EXPECT_TRUE(r.pass()) << r.residual;
  EXPECT_GT(relative_residual(r.lhs, r.rhs), 1e-3);
  EXPECT_FALSE(verify_numeric_case(inst, 1, 0.25, 1e-8).pass());
}

TEST(Stability, HalvingEps) {
  const auto inst = instantiate(find_identity("thm_adet"), 3);
  const auto b = random_numeric_binding(inst, 4);
  NumericBinding fine = b;
  fine.eps = b.eps / 2;
  const double r1 = verify_numeric(inst, b, 1e-8).residual;
  const double r2 = verify_numeric(inst, fine, 1e-8).residual;
  EXPECT_LE(r2, 10 * std::max(r1, 1e-15));
}

TEST(NumericJson, Fields) {
  const auto inst = instantiate(find_identity("eq_tev"), 1);
  const auto j = numeric_report_to_json(verify_numeric_case(inst, 3, 0.25, 1e-8));
  EXPECT_EQ(j["id"], "eq_tev");
  EXPECT_EQ(j["n"], 1);
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["p"].size(), 2u);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_TRUE(j["residual"].is_number());
  EXPECT_EQ(j["tol"], 1e-8);
}
