#include <gtest/gtest.h>

#include <set>

#include "thetadet/error.hpp"
#include "thetadet/registry.hpp"
#include "thetadet/root_systems.hpp"
#include "thetadet/series_json.hpp"

using namespace thetadet;

namespace {

const std::vector<std::string> kIds = {
    "eq_awd",       "eq_bwd",        "eq_cwd",       "eq_dwd",        "eq_radd",      "eq_jti",
    "eq_txsq",      "eq_tev",        "prop_bcdet",   "cor_frobc",     "cor_bcdetcor", "thm_adet",
    "cor_tvcor",    "cor_froa",      "cor_adetcor",  "thm_cdet",      "cor_lem",      "cor_bcdet2",
    "cor_cvdet",    "cor_bvdet",     "cor_bdet",     "cor_ddet",      "cor_apoldet",  "cor_apoldet2",
    "cor_adetcorr", "cor_cdetr",     "cor_bdetr",    "cor_ddetr",     "cor_cdetr1",   "cor_bdetr1",
    "cor_ddetr1",   "cor_cdetr1cor", "cor_bdetr1cor", "cor_ddetr1cor"};

std::string describe(const CaseVerdict& v) { return case_verdict_to_json(v).dump(); }

CaseVerdict run(const std::string& id, int n, std::uint64_t seed, int order) {
  const CaseInstance inst = instantiate(find_identity(id), n);
  return verify_exact(inst, sample_binding(inst, seed, order));
}

Rational value_of(const CaseInstance& inst, const Binding& b, const std::string& name) {
  return b.values.at(static_cast<std::size_t>(*inst.vars.find(name)))->coeff;
}

}  // namespace

TEST(Registry, ListsAllIdsInOrder) {
  const auto& all = list_identities();
  ASSERT_GE(all.size(), 25u);
  ASSERT_EQ(all.size(), kIds.size());
  for (std::size_t i = 0; i < kIds.size(); ++i) EXPECT_EQ(all[i].id, kIds[i]);
  EXPECT_EQ(find_identity("thm_adet").paper_label, "Theorem adet");
  for (const auto& c : all) {
    const std::size_t pos = static_cast<std::size_t>(std::find(kIds.begin(), kIds.end(), c.id) - kIds.begin());
    const bool p0 = pos < 4 || pos >= 22;
    EXPECT_EQ(c.mode == Mode::Polynomial, p0) << c.id;
    EXPECT_EQ(identity_to_json(c)["mode"], p0 ? "p0" : "elliptic") << c.id;
  }
}

TEST(Registry, UnknownIdAndRange) {
  try {
    find_identity("thm_nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownId);
  }
  EXPECT_THROW(instantiate(find_identity("cor_ddet"), 1), Error);
  EXPECT_THROW(instantiate(find_identity("thm_adet"), 0), Error);
}

TEST(Registry, InstancesUseOneVariableSetPerSide) {
  for (const auto& c : list_identities()) {
    const CaseInstance inst = instantiate(c, c.n_min);
    std::set<int> seen;
    for (const auto& r : inst.roles) {
      for (int v : r.vars) EXPECT_TRUE(seen.insert(v).second) << c.id;
    }
    EXPECT_EQ(static_cast<int>(seen.size()), inst.vars.size()) << c.id;
  }
}

TEST(Registry, SamplingSolvesConstraints) {
  const CaseInstance adet = instantiate(find_identity("thm_adet"), 2);
  const Binding b = sample_binding(adet, 11, 6);
  const auto j = binding_to_json(adet, b);
  const Rational b22 = value_of(adet, b, "t") * value_of(adet, b, "a1") * value_of(adet, b, "a2") /
                       value_of(adet, b, "b1_2");
  const std::string expect = b22.get_den() == 1 ? b22.get_num().get_str()
                                                : b22.get_num().get_str() + "/" + b22.get_den().get_str();
  EXPECT_EQ(j["derived"]["b2_2"], expect);

  const CaseInstance tv = instantiate(find_identity("cor_tvcor"), 3);
  const Binding tb = sample_binding(tv, 5, 6);
  const auto tj = binding_to_json(tv, tb);
  auto v = [&](const std::string& s) { return value_of(tv, tb, s); };
  const Rational t = v("t");
  const Rational b1 = t / (v("c2") * v("c3"));
  const Rational b2 = t / (v("a1") * v("c3"));
  const Rational b3 = t / (v("a1") * v("a2"));
  auto str = [](const Rational& r) {
    return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
  };
  EXPECT_EQ(tj["derived"]["b1"], str(b1));
  EXPECT_EQ(tj["derived"]["b2"], str(b2));
  EXPECT_EQ(tj["derived"]["b3"], str(b3));
}

TEST(Registry, SamplingIsDeterministicAndBounded) {
  const CaseInstance inst = instantiate(find_identity("thm_cdet"), 3);
  const Binding a = sample_binding(inst, 42, 12);
  const Binding b = sample_binding(inst, 42, 12);
  EXPECT_EQ(binding_to_json(inst, a), binding_to_json(inst, b));
  const Binding c = sample_binding(inst, 43, 12);
  EXPECT_NE(binding_to_json(inst, a)["values"], binding_to_json(inst, c)["values"]);
  for (const auto& v : a.values) {
    ASSERT_TRUE(v.has_value());
    EXPECT_NE(v->coeff, 0);
    EXPECT_LE(abs(v->coeff.get_num()), 9);
    EXPECT_LE(v->coeff.get_den(), 9);
  }
}

TEST(Registry, PolynomialBindingsKeepXFormal) {
  const CaseInstance inst = instantiate(find_identity("cor_cdetr"), 2);
  const Binding b = sample_binding(inst, 1, 12);
  EXPECT_EQ(b.order, 0);
  EXPECT_FALSE(b.values[static_cast<std::size_t>(*inst.vars.find("x1"))].has_value());
  EXPECT_TRUE(b.values[static_cast<std::size_t>(*inst.vars.find("a1"))].has_value());
}

TEST(Registry, SmallExamples) {
  EXPECT_TRUE(run("prop_bcdet", 1, 1, 12).verdict.equal);
  EXPECT_TRUE(run("cor_froa", 1, 1, 12).verdict.equal);
  EXPECT_TRUE(run("cor_frobc", 1, 1, 12).verdict.equal);
  for (std::uint64_t s = 1; s <= 3; ++s) EXPECT_TRUE(run("thm_cdet", 1, s, 20).verdict.equal);
  EXPECT_TRUE(run("eq_tev", 1, 1, 30).verdict.equal);
  EXPECT_TRUE(run("eq_txsq", 1, 1, 30).verdict.equal);
  EXPECT_TRUE(run("eq_jti", 1, 1, 30).verdict.equal);
  EXPECT_TRUE(run("eq_radd", 1, 1, 20).verdict.equal);
}

TEST(Registry, EllipticCasesSmallN) {
  for (const auto& c : list_identities()) {
    if (c.mode != Mode::Elliptic) continue;
    for (int n = c.n_min; n <= std::min(3, c.n_max); ++n) {
      for (std::uint64_t s = 1; s <= 2; ++s) {
        const auto v = run(c.id, n, s, 8);
        EXPECT_TRUE(v.verdict.equal) << describe(v);
      }
      const CaseInstance inst = instantiate(c, n);
      ExactEvaluator ev(sample_binding(inst, 1, 8).values);
      EXPECT_FALSE(ev.eval(inst.lhs, 8).is_zero()) << c.id << " n=" << n;
    }
  }
}

TEST(Registry, PolynomialCasesUpToFive) {
  for (const auto& c : list_identities()) {
    if (c.mode != Mode::Polynomial) continue;
    for (int n = c.n_min; n <= std::min(5, c.n_max); ++n) {
      const auto v = run(c.id, n, 3, 0);
      EXPECT_TRUE(v.verdict.equal) << describe(v);
    }
  }
}

TEST(Registry, MismatchIsReported) {
  // left side of one binding against the right side of another
  const CaseInstance inst = instantiate(find_identity("thm_adet"), 2);
  const Binding b1 = sample_binding(inst, 1, 6);
  const Binding b2 = sample_binding(inst, 2, 6);
  ExactEvaluator e1(b1.values), e2(b2.values);
  const Verdict v = series_equal(e1.eval(inst.lhs, 6), e2.eval(inst.rhs, 6), 6);
  EXPECT_FALSE(v.equal);
  ASSERT_TRUE(v.first_diff.has_value());
  const auto j = verdict_to_json(v);
  EXPECT_EQ(j["status"], "fail");
}

TEST(Registry, SymbolicAdetMatchesSpecializations) {
  const CaseInstance inst = instantiate(find_identity("thm_adet"), 2);
  const CaseVerdict v = verify_symbolic_small(inst, 3);
  EXPECT_TRUE(v.verdict.equal) << describe(v);

  // formal run specialised afterwards agrees with rational runs
  std::vector<std::optional<ExactValue>> formal(static_cast<std::size_t>(inst.vars.size()));
  std::vector<int> formal_vars;
  for (const auto& r : inst.roles) {
    for (int i : r.vars) {
      if (r.kind == RoleKind::Constant) {
        formal[static_cast<std::size_t>(i)] = ExactValue{Rational(3), 0};
      } else {
        formal_vars.push_back(i);
      }
    }
  }
  EXPECT_EQ(formal_vars.size(), 6u);
  ExactEvaluator fe(formal);
  const NomeSeries sym = fe.eval(inst.lhs, 3);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 3; ++trial) {
    auto vals = formal;
    NomeSeries spec = sym;
    const auto& slots = fe.formal_vars();
    for (int s = static_cast<int>(slots.size()) - 1; s >= 0; --s) {
      const Rational r = make_rational(static_cast<long>(rng() % 7) + 2, static_cast<long>(rng() % 5) + 1);
      vals[static_cast<std::size_t>(slots[static_cast<std::size_t>(s)])] = ExactValue{r, 0};
      spec = spec.substitute(s, r);
    }
    ExactEvaluator re(vals);
    const NomeSeries direct = re.eval(inst.lhs, 3);
    EXPECT_TRUE(series_equal(spec.remap(0, {}), direct, 3).equal);
  }
}

TEST(Registry, SymbolicSmallCases) {
  const CaseInstance radd = instantiate(find_identity("eq_radd"), 1);
  EXPECT_TRUE(verify_symbolic_small(radd, 5).verdict.equal);

  const CaseInstance awd = instantiate(find_identity("eq_awd"), 2);
  EXPECT_TRUE(verify_symbolic_small(awd, 0).verdict.equal);
  ExactEvaluator ev(std::vector<std::optional<ExactValue>>(2));
  const NomeSeries l = ev.eval(awd.lhs, 0);
  const LaurentPoly expect = LaurentPoly::variable(2, 1) - LaurentPoly::variable(2, 0);
  EXPECT_TRUE(series_equal(l, NomeSeries::constant(expect, 0), 0).equal);

  for (const char* id : {"prop_bcdet", "cor_frobc", "cor_froa", "cor_tvcor", "cor_lem", "cor_apoldet"}) {
    const CaseInstance inst = instantiate(find_identity(id), 2);
    const auto v = verify_symbolic_small(inst, 3);
    EXPECT_TRUE(v.verdict.equal) << describe(v);
  }
}

TEST(Registry, SymbolicBudget) {
  const CaseInstance cdet = instantiate(find_identity("thm_cdet"), 2);
  try {
    verify_symbolic_small(cdet, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Usage);
  }
  const CaseInstance big = instantiate(find_identity("thm_adet"), 3);
  EXPECT_THROW(verify_symbolic_small(big, 2), Error);
}

TEST(Registry, SpecializationChain) {
  for (const auto& step : specialization_chain()) {
    for (int n = 2; n <= 3; ++n) {
      const Verdict v = verify_chain_step(step, n, 1, 10);
      EXPECT_TRUE(v.equal) << step.parent << " -> " << step.child << " n=" << n << " " << verdict_to_json(v).dump();
    }
  }
}

TEST(Registry, ChainDetectsWrongFactor) {
  ChainStep wrong = specialization_chain()[1];
  wrong.factor = ChainFactor::Theta;
  EXPECT_FALSE(verify_chain_step(wrong, 2, 1, 6).equal);
}

TEST(Registry, ClassicalDegenerations) {
  for (const char* id : {"cor_cdetr1cor", "cor_bdetr1cor", "cor_ddetr1cor"}) {
    for (int n = 1; n <= 6; ++n) {
      const Verdict v = verify_degeneration(id, n);
      EXPECT_TRUE(v.equal) << id << " n=" << n << " " << verdict_to_json(v).dump();
    }
  }
  EXPECT_THROW(verify_degeneration("thm_adet", 2), Error);
}

TEST(Registry, HalfNomeConstantReadingFails) {
  // theta(-c) theta(q) in place of theta(-c; q) breaks the C-dual case
  const CaseInstance inst = instantiate(find_identity("cor_cvdet"), 1);
  const Binding b = sample_binding(inst, 1, 8);
  ExactEvaluator ev(b.values);
  const int c1 = *inst.vars.find("c1");
  const Expr right = theta(-Mono::var(c1)) * theta(Mono::q(1));
  const Expr good = theta(-Mono::var(c1), 1);
  EXPECT_FALSE(series_equal(ev.eval(right, 8), ev.eval(good, 8), 8).equal);
  EXPECT_TRUE(verify_exact(inst, b).verdict.equal);
}

TEST(Registry, VerdictJsonForPassingCase) {
  const auto v = run("thm_adet", 2, 1, 6);
  const auto j = case_verdict_to_json(v);
  EXPECT_EQ(j["id"], "thm_adet");
  EXPECT_EQ(j["status"], "pass");
  EXPECT_TRUE(j["first_diff"].is_null());
  EXPECT_EQ(j["order"], 6);
}
