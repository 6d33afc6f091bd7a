#include "thetadet/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <random>
#include <thread>

#include "thetadet/error.hpp"
#include "thetadet/macdonald.hpp"
#include "thetadet/numeric.hpp"
#include "thetadet/oracle.hpp"
#include "thetadet/registry.hpp"
#include "thetadet/sampling.hpp"
#include "thetadet/series_json.hpp"
#include "thetadet/theta.hpp"

namespace thetadet {

using namespace acceptance;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  double residual = -1;  // numeric checks only
};

struct Task {
  std::string label;
  std::function<Outcome()> run;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Outcome from_verdict(const Verdict& v) {
  Outcome o{v.equal, {}};
  if (!v.equal) o.detail = verdict_to_json(v).dump();
  return o;
}

Outcome from_report(const NumericReport& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s residual %.3g", r.status().c_str(), r.residual);
  return Outcome{r.pass(), buf, r.residual};
}

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Runs tasks on a small pool; results land in task order.
std::vector<Outcome> run_tasks(const std::vector<Task>& tasks, const AcceptanceOptions& opts) {
  std::vector<Outcome> out(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = tasks[i].run();
      } catch (const std::exception& e) {
        out[i] = Outcome{false, std::string("error: ") + e.what()};
      }
      if (opts.progress) {
        std::lock_guard<std::mutex> lock(log_mutex);
        opts.progress(tasks[i].label + (out[i].pass ? " ok" : " FAIL"));
      }
    }
  };
  int threads = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

void collect(CriterionResult& r, const std::vector<Task>& tasks, const AcceptanceOptions& opts,
             bool track_residual = false) {
  const auto outs = run_tasks(tasks, opts);
  double worst = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    ++r.checks;
    if (!outs[i].pass) r.failures.push_back(tasks[i].label + ": " + outs[i].detail);
    if (outs[i].residual >= 0) worst = std::max(worst, outs[i].residual);
  }
  if (track_residual) r.notes.push_back(fmt("worst residual %.3g", worst));
}

bool two_up(Family f) { return f == Family::B || f == Family::Bvee || f == Family::D; }

std::vector<std::pair<Family, int>> macdonald_grid() {
  std::vector<std::pair<Family, int>> g;
  for (Family f : all_families()) {
    for (int n = two_up(f) ? 2 : 1; n <= 3; ++n) g.emplace_back(f, n);
  }
  return g;
}

std::string fn_label(Family f, int n) { return family_name(f) + std::to_string(n); }

std::vector<int> iota(int n) {
  std::vector<int> v;
  for (int i = 0; i < n; ++i) v.push_back(i);
  return v;
}

CaseVerdict exact_run(const std::string& id, int n, std::uint64_t seed, int order) {
  const CaseInstance inst = instantiate(find_identity(id), n);
  return verify_exact(inst, sample_binding(inst, seed, order));
}

Outcome from_case(const CaseVerdict& v) {
  Outcome o{v.verdict.equal, {}};
  if (!o.pass) o.detail = case_verdict_to_json(v).dump();
  return o;
}

void criterion_jti(CriterionResult& r, const AcceptanceOptions& opts) {
  std::vector<Task> tasks;
  tasks.push_back({"jti order " + std::to_string(kJtiOrder), [] {
                     const auto t0 = Clock::now();
                     const ThetaCall call{MonomialArg{Rational(1), Exponents(std::vector<int>{1}), 0}, 2};
                     const Verdict v =
                         series_equal(theta_expand(1, call, kJtiOrder), theta_sum_form(1, call, kJtiOrder), kJtiOrder);
                     const double s = since(t0);
                     std::string detail = fmt("%.3f s", s);
                     if (!v.equal) detail += " " + verdict_to_json(v).dump();
                     return Outcome{v.equal && s < kJtiSeconds, detail};
                   }});
  const auto outs = run_tasks(tasks, opts);
  r.checks = 1;
  if (!outs[0].pass) r.failures.push_back(tasks[0].label + ": " + outs[0].detail);
  r.notes.push_back("runtime " + outs[0].detail);
}

void criterion_tev(CriterionResult& r, const AcceptanceOptions& opts) {
  std::vector<Task> tasks;
  tasks.push_back({"tev order " + std::to_string(kTevOrder), [] {
                     const std::vector<ThetaCall> calls{{MonomialArg{Rational(-1), {}, 0}, 2},
                                                        {MonomialArg{Rational(1), {}, 1}, 2},
                                                        {MonomialArg{Rational(-1), {}, 1}, 2}};
                     return from_verdict(series_equal(theta_product(0, calls, kTevOrder),
                                                      NomeSeries::one(0, kTevOrder) * Rational(2), kTevOrder));
                   }});
  collect(r, tasks, opts);
}

void criterion_radd(CriterionResult& r, const AcceptanceOptions& opts) {
  std::vector<Task> tasks;
  tasks.push_back({"radd symbolic order " + std::to_string(kRaddSymbolicOrder), [] {
                     const CaseInstance inst = instantiate(find_identity("eq_radd"), 1);
                     return from_case(verify_symbolic_small(inst, kRaddSymbolicOrder));
                   }});
  for (int s = 1; s <= kRaddBindings; ++s) {
    tasks.push_back({"radd seed " + std::to_string(s),
                     [s] { return from_case(exact_run("eq_radd", 1, static_cast<std::uint64_t>(s), kRaddOrder)); }});
  }
  collect(r, tasks, opts);
}

const std::vector<std::string>& elliptic_ids() {
  static const std::vector<std::string> ids = {
      "prop_bcdet", "cor_frobc", "cor_bcdetcor", "thm_adet",   "cor_tvcor", "cor_froa", "cor_adetcor",
      "thm_cdet",   "cor_lem",   "cor_bcdet2",   "cor_cvdet",  "cor_bvdet", "cor_bdet", "cor_ddet"};
  return ids;
}

void criterion_elliptic(CriterionResult& r, const AcceptanceOptions& opts) {
  std::vector<Task> tasks;
  for (const auto& id : elliptic_ids()) {
    const auto& c = find_identity(id);
    for (int n = c.n_min; n <= std::min(c.n_max, kEllipticMaxN); ++n) {
      for (int s = 1; s <= kEllipticSeeds; ++s) {
        tasks.push_back({id + " n=" + std::to_string(n) + " seed " + std::to_string(s), [id, n, s] {
                           return from_case(exact_run(id, n, static_cast<std::uint64_t>(s), kEllipticOrder));
                         }});
      }
    }
  }
  collect(r, tasks, opts);
}

void criterion_chain(CriterionResult& r, const AcceptanceOptions& opts) {
  std::vector<Task> tasks;
  for (const auto& step : specialization_chain()) {
    for (int n = 2; n <= 3; ++n) {
      tasks.push_back({step.parent + " -> " + step.child + " n=" + std::to_string(n),
                       [step, n] { return from_verdict(verify_chain_step(step, n, 1, kChainOrder)); }});
    }
  }
  collect(r, tasks, opts);
}

void criterion_polynomial(CriterionResult& r, const AcceptanceOptions& opts) {
  std::vector<Task> tasks;
  int ids = 0;
  for (const auto& c : list_identities()) {
    if (c.mode != Mode::Polynomial || c.id.rfind("cor_", 0) != 0) continue;
    ++ids;
    for (int n = c.n_min; n <= std::min(c.n_max, kPolyMaxN); ++n) {
      for (int s = 1; s <= kPolySeeds; ++s) {
        const std::string id = c.id;
        tasks.push_back({id + " n=" + std::to_string(n) + " seed " + std::to_string(s),
                         [id, n, s] { return from_case(exact_run(id, n, static_cast<std::uint64_t>(s), 0)); }});
      }
    }
  }
  for (const char* id : {"cor_cdetr1cor", "cor_bdetr1cor", "cor_ddetr1cor"}) {
    for (int n = 1; n <= kPolyMaxN; ++n) {
      const std::string sid = id;
      tasks.push_back({sid + " degeneration n=" + std::to_string(n),
                       [sid, n] { return from_verdict(verify_degeneration(sid, n)); }});
    }
  }
  collect(r, tasks, opts);
  r.notes.push_back(std::to_string(ids) + " polynomial corollaries");
  if (ids != 12) r.failures.push_back("expected 12 polynomial corollaries, found " + std::to_string(ids));
}

void criterion_mdp(CriterionResult& r, const AcceptanceOptions& opts) {
  std::vector<Task> tasks;
  for (auto [f, n] : macdonald_grid()) {
    tasks.push_back({"mdp " + fn_label(f, n), [f, n] { return from_verdict(mdp_verify(f, n, kMdpOrder)); }});
  }
  // scale constants: leading coefficient of K_R
  tasks.push_back({"mdp constants", [] {
                     for (Family f : all_families()) {
                       const Rational want = f == Family::B || f == Family::Bvee ? Rational(2)
                                             : f == Family::D                    ? Rational(4)
                                                                                 : Rational(1);
                       for (int n = two_up(f) ? 2 : 1; n <= 3; ++n) {
                         if (euler_parts(f, n).scale != want) return Outcome{false, fn_label(f, n) + " scale"};
                         const NomeSeries k = euler_constant(f, n, 0, 2);
                         if (k.coeff(0) != LaurentPoly::constant(0, want)) return Outcome{false, fn_label(f, n) + " K_R(0)"};
                       }
                     }
                     return Outcome{true, {}};
                   }});
  collect(r, tasks, opts);
}

void criterion_mlc(CriterionResult& r, const AcceptanceOptions& opts) {
  std::vector<Task> tasks;
  for (auto [f, n] : macdonald_grid()) {
    for (int v : {1, 2}) {
      tasks.push_back({"mlc " + fn_label(f, n) + " v" + std::to_string(v),
                       [f, n, v] { return from_verdict(mlc_verify(f, n, v, kMlcOrder)); }});
    }
    tasks.push_back({"mlc " + fn_label(f, n) + " v1 = v2", [f, n] {
                       return from_verdict(series_equal(mlc_sum_expand(MlcSum{f, n, 1, true, kMlcCrossOrder}),
                                                        mlc_sum_expand(MlcSum{f, n, 2, true, kMlcCrossOrder}),
                                                        kMlcCrossOrder));
                     }});
  }
  collect(r, tasks, opts);
}

Outcome oracle_outcome(const OracleSeries& want, const NomeSeries& got, const std::string& what) {
  const auto d = oracle_first_diff(want, oracle_from_series(got));
  if (!d) return Outcome{true, {}};
  std::string key;
  for (int e : *d) key += (key.empty() ? "" : ",") + std::to_string(e);
  return Outcome{false, what + " differs at (" + key + ")"};
}

void criterion_oracles(CriterionResult& r, const AcceptanceOptions& opts) {
  std::vector<Task> tasks;
  tasks.push_back({"quintuple order " + std::to_string(kQuintupleOrder), [] {
                     const OracleSeries brute = oracle_quintuple_product(kQuintupleOrder);
                     if (oracle_first_diff(brute, oracle_quintuple_sum(kQuintupleOrder))) {
                       return Outcome{false, "oracle product and sum disagree"};
                     }
                     const auto s = classical_specialization("quintuple", kQuintupleOrder);
                     Outcome o = oracle_outcome(brute, s.lhs, "product side");
                     if (o.pass) o = oracle_outcome(brute, s.rhs, "sum side");
                     return o;
                   }});
  tasks.push_back({"winquist order " + std::to_string(kWinquistOrder), [] {
                     const OracleSeries brute = oracle_winquist_product(kWinquistOrder);
                     const auto s = classical_specialization("winquist", kWinquistOrder);
                     Outcome o = oracle_outcome(brute, s.lhs, "product side");
                     if (o.pass) o = oracle_outcome(brute, s.rhs, "sum side");
                     return o;
                   }});
  tasks.push_back({"septuple order " + std::to_string(kSeptupleOrder), [] {
                     const auto s = classical_specialization("septuple", kSeptupleOrder);
                     if (s.lhs.is_zero()) return Outcome{false, "septuple side vanishes"};
                     return from_verdict(s.verdict);
                   }});
  collect(r, tasks, opts);
}

void criterion_agreement(CriterionResult& r, const AcceptanceOptions& opts) {
  std::vector<Task> tasks;
  for (const auto& c : list_identities()) {
    for (int n = c.n_min; n <= std::min(c.n_max, kAgreementMaxN); ++n) {
      for (int s = 1; s <= kAgreementSeeds; ++s) {
        const std::string id = c.id;
        tasks.push_back({"agreement " + id + " n=" + std::to_string(n) + " seed " + std::to_string(s), [id, n, s] {
                           return from_report(backend_agreement(instantiate(find_identity(id), n),
                                                                static_cast<std::uint64_t>(s), kAgreementNome,
                                                                kAgreementTol));
                         }});
      }
    }
  }
  for (const char* id : {"thm_adet", "thm_cdet"}) {
    for (int s = 1; s <= kReachSeeds; ++s) {
      const std::string sid = id;
      tasks.push_back({"reach " + sid + " n=" + std::to_string(kReachN) + " seed " + std::to_string(s), [sid, s] {
                         return from_report(verify_numeric_case(instantiate(find_identity(sid), kReachN),
                                                                static_cast<std::uint64_t>(s), kAgreementNome,
                                                                kAgreementTol, Precision::Extended));
                       }});
    }
  }
  collect(r, tasks, opts, true);
}

void criterion_r_theta(CriterionResult& r, const AcceptanceOptions& opts) {
  std::vector<Task> tasks;
  for (Family f : all_families()) {
    const std::string name = family_name(f);
    tasks.push_back({"specs " + name, [f] {
                       std::mt19937_64 rng(1000 + static_cast<int>(f));
                       for (int k = 0; k < kRThetaSpecs; ++k) {
                         const int n = 1 + k % 3;
                         const RThetaSpec spec = random_r_theta_spec(f, n, rng);
                         const RThetaCheck check{f, n, spec.norm, kRThetaOrder, 2, rng()};
                         const Verdict v = check_r_theta(build_r_theta(spec, 0), 0, {std::nullopt}, check);
                         if (!v.equal) return Outcome{false, "spec " + std::to_string(k) + ": " + v.note};
                       }
                       return Outcome{true, {}};
                     }});
    if (f != Family::A) {
      tasks.push_back({"lifts " + name, [f] {
                         std::mt19937_64 rng(2000 + static_cast<int>(f));
                         for (int k = 0; k < kRThetaLifts; ++k) {
                           const int n = 1 + k % 3;
                           const Expr g = random_lift_seed(f, n, 0, rng);
                           const RThetaCheck check{f, n, std::nullopt, kRThetaOrder, 2, rng()};
                           const Verdict v = check_r_theta(lift_from_g(g, f, 0), 0, {std::nullopt}, check);
                           if (!v.equal) return Outcome{false, "lift " + std::to_string(k) + ": " + v.note};
                         }
                         return Outcome{true, {}};
                       }});
    }
    for (int n = 2; n <= 3; ++n) {
      tasks.push_back({"W_" + name + " n=" + std::to_string(n), [f, n] {
                         std::mt19937_64 rng(3000 + 10 * static_cast<int>(f) + n);
                         const Expr w = w_expr(f, iota(n));
                         for (int i = 0; i < n; ++i) {
                           std::vector<std::optional<ExactValue>> vals(static_cast<std::size_t>(n));
                           for (auto& v : vals) v = ExactValue{sample_rational(rng), 0};
                           // W_A is an A_{n-2} theta function in x_i with norm prod_{j != i} 1/x_j
                           std::optional<Mono> norm;
                           int deg = n;
                           if (f == Family::A) {
                             Mono m;
                             for (int j = 0; j < n; ++j) {
                               if (j != i) m = m * Mono::var(j, -1);
                             }
                             norm = m;
                             deg = n - 1;
                           }
                           const RThetaCheck check{f, deg, norm, kRThetaOrder - 2, 1, rng()};
                           const Verdict v = check_r_theta(w, i, vals, check);
                           if (!v.equal) return Outcome{false, "x" + std::to_string(i + 1) + ": " + v.note};
                         }
                         return Outcome{true, {}};
                       }});
    }
  }
  collect(r, tasks, opts);
}

}  // namespace

const std::vector<std::string>& acceptance_titles() {
  static const std::vector<std::string> titles = {
      "triple product: product and sum forms agree, order 40, x formal, < 5 s",
      "theta(-1;p) theta(q;p) theta(-q;p) = 2, order 40",
      "addition formula: symbolic at order 5, 10 rational bindings at order 20",
      "elliptic determinant identities, n <= 4, 5 seeds, order 12",
      "specialization chain, n = 2,3, order 10",
      "polynomial corollaries n <= 5, 5 seeds; classical degenerations n <= 5",
      "determinant form of W_R with its scale constants, order 8",
      "Macdonald sums, both versions against the product side (order 8) and each other (order 12)",
      "quintuple and Winquist against brute-force products; septuple",
      "exact against numeric, n <= 3, p = 0.25, 3 seeds; numeric reach n = 5",
      "R theta property suite",
  };
  return titles;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  if (id < 1 || id > 11) fail(ErrorKind::Usage, "criterion must be in 1..11");
  CriterionResult r;
  r.id = id;
  r.title = acceptance_titles()[static_cast<std::size_t>(id - 1)];
  const auto t0 = Clock::now();
  try {
    switch (id) {
      case 1: criterion_jti(r, opts); break;
      case 2: criterion_tev(r, opts); break;
      case 3: criterion_radd(r, opts); break;
      case 4: criterion_elliptic(r, opts); break;
      case 5: criterion_chain(r, opts); break;
      case 6: criterion_polynomial(r, opts); break;
      case 7: criterion_mdp(r, opts); break;
      case 8: criterion_mlc(r, opts); break;
      case 9: criterion_oracles(r, opts); break;
      case 10: criterion_agreement(r, opts); break;
      case 11: criterion_r_theta(r, opts); break;
    }
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("error: ") + e.what());
  }
  r.seconds = since(t0);
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, const AcceptanceOptions& opts) {
  std::vector<int> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<CriterionResult> out;
  for (int id : sorted) out.push_back(run_criterion(id, opts));
  return out;
}

nlohmann::json criterion_to_json(const CriterionResult& r) {
  return nlohmann::json{{"criterion", r.id},   {"title", r.title},       {"status", r.pass() ? "pass" : "fail"},
                        {"checks", r.checks},  {"failures", r.failures}, {"notes", r.notes},
                        {"seconds", r.seconds}};
}

std::string criterion_line(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "criterion %2d %s  %4d checks  %4zu failed  %8.2f s  ", r.id,
                r.pass() ? "PASS" : "FAIL", r.checks, r.failures.size(), r.seconds);
  std::string line = head + r.title;
  for (const auto& n : r.notes) line += "  [" + n + "]";
  return line;
}

}  // namespace thetadet
