#include "thetadet/thetadet.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>

#include "thetadet/acceptance.hpp"
#include "thetadet/error.hpp"
#include "thetadet/macdonald.hpp"
#include "thetadet/numeric.hpp"
#include "thetadet/registry.hpp"
#include "thetadet/series_json.hpp"

struct td_series {
  thetadet::NomeSeries s;
};

namespace {

thread_local std::string g_last_error;

td_status code_of(thetadet::ErrorKind k) {
  using thetadet::ErrorKind;
  switch (k) {
    case ErrorKind::Domain: return TD_ERR_DOMAIN;
    case ErrorKind::Usage: return TD_ERR_USAGE;
    case ErrorKind::Constraint: return TD_ERR_CONSTRAINT;
    case ErrorKind::Invert: return TD_ERR_INVERT;
    case ErrorKind::Normalization: return TD_ERR_NORMALIZATION;
    case ErrorKind::UnknownId: return TD_ERR_UNKNOWN_ID;
    case ErrorKind::Degenerate: return TD_ERR_DEGENERATE;
    case ErrorKind::Internal: return TD_ERR_INTERNAL;
  }
  return TD_ERR_INTERNAL;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
td_status guard(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const thetadet::Error& e) {
    g_last_error = e.what();
    return code_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return TD_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TD_ERR_INTERNAL;
  }
}

td_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return TD_ERR_NULL_ARG;
}

void put(char** out, const nlohmann::json& j) {
  if (out) *out = dup(j.dump());
}

}  // namespace

extern "C" {

const char* td_last_error(void) { return g_last_error.c_str(); }

const char* td_version(void) { return "1.0.0"; }

void td_string_free(char* s) { std::free(s); }

td_status td_list_json(char** out) {
  if (!out) return null_arg("out");
  return guard([&] {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : thetadet::list_identities()) arr.push_back(thetadet::identity_to_json(c));
    put(out, arr);
    return TD_OK;
  });
}

td_status td_identity_json(const char* id, char** out) {
  if (!id || !out) return null_arg("id/out");
  return guard([&] {
    put(out, thetadet::identity_to_json(thetadet::find_identity(id)));
    return TD_OK;
  });
}

td_status td_expand(td_expand_kind kind, const char* family, int n, int order, int version, td_series** out) {
  if (!family || !out) return null_arg("family/out");
  return guard([&] {
    using namespace thetadet;
    if (order < 0) fail(ErrorKind::Usage, "order must be >= 0");
    const Family f = parse_family(family);
    auto expand = [&]() -> NomeSeries {
      switch (kind) {
        case TD_EXPAND_W: return macdonald_denominator(f, n, order);
        case TD_EXPAND_MDP: return mdp_determinant(f, n, order);
        case TD_EXPAND_MLC: return mlc_sum_expand(MlcSum{f, n, version, true, order});
      }
      fail(ErrorKind::Usage, "unknown expansion kind");
    };
    *out = new td_series{expand()};
    return TD_OK;
  });
}

void td_series_free(td_series* s) { delete s; }

td_status td_series_to_json(const td_series* s, char** out) {
  if (!s || !out) return null_arg("series/out");
  return guard([&] {
    put(out, thetadet::series_to_json(s->s));
    return TD_OK;
  });
}

td_status td_series_from_json(const char* json, td_series** out) {
  if (!json || !out) return null_arg("json/out");
  return guard([&] {
    *out = new td_series{thetadet::series_from_json(nlohmann::json::parse(json))};
    return TD_OK;
  });
}

td_status td_series_equal(const td_series* a, const td_series* b, int* equal) {
  if (!a || !b || !equal) return null_arg("a/b/equal");
  return guard([&] {
    if (a->s.nvars() != b->s.nvars()) {
      *equal = 0;
      return TD_OK;
    }
    *equal = thetadet::series_equal(a->s, b->s, std::min(a->s.order(), b->s.order())).equal ? 1 : 0;
    return TD_OK;
  });
}

td_status td_series_to_text(const td_series* s, char** out) {
  if (!s || !out) return null_arg("series/out");
  return guard([&] {
    *out = dup(s->s.to_string());
    return TD_OK;
  });
}

int td_series_order(const td_series* s) { return s ? s->s.order() : -1; }

int td_series_nvars(const td_series* s) { return s ? s->s.nvars() : -1; }

td_status td_verify_exact(const char* id, int n, int order, uint64_t seed, int* pass, char** report) {
  if (!id || !pass) return null_arg("id/pass");
  return guard([&] {
    using namespace thetadet;
    if (order < 0) fail(ErrorKind::Usage, "order must be >= 0");
    const CaseInstance inst = instantiate(find_identity(id), n);
    const CaseVerdict v = verify_exact(inst, sample_binding(inst, seed, order));
    *pass = v.verdict.equal ? 1 : 0;
    put(report, case_verdict_to_json(v));
    return TD_OK;
  });
}

td_status td_verify_symbolic(const char* id, int n, int order, int* pass, char** report) {
  if (!id || !pass) return null_arg("id/pass");
  return guard([&] {
    using namespace thetadet;
    const CaseVerdict v = verify_symbolic_small(instantiate(find_identity(id), n), order);
    *pass = v.verdict.equal ? 1 : 0;
    put(report, case_verdict_to_json(v));
    return TD_OK;
  });
}

td_status td_verify_numeric(const char* id, int n, uint64_t seed, double p_re, double p_im, double tol, int extended,
                            int* pass, char** report) {
  if (!id || !pass) return null_arg("id/pass");
  return guard([&] {
    using namespace thetadet;
    const auto r = verify_numeric_case(instantiate(find_identity(id), n), seed, cplx(p_re, p_im), tol,
                                       extended ? Precision::Extended : Precision::Double);
    *pass = r.pass() ? 1 : 0;
    put(report, numeric_report_to_json(r));
    if (r.degenerate) {
      g_last_error = "no generic binding after resampling";
      return TD_ERR_DEGENERATE;
    }
    return TD_OK;
  });
}

td_status td_verify_agreement(const char* id, int n, uint64_t seed, double p, double tol, int* pass, char** report) {
  if (!id || !pass) return null_arg("id/pass");
  return guard([&] {
    using namespace thetadet;
    const auto r = backend_agreement(instantiate(find_identity(id), n), seed, p, tol);
    *pass = r.pass() ? 1 : 0;
    put(report, numeric_report_to_json(r));
    if (r.degenerate) {
      g_last_error = "no generic binding after resampling";
      return TD_ERR_DEGENERATE;
    }
    return TD_OK;
  });
}

td_status td_run_criterion(int criterion, int threads, int* pass, char** report, char** line) {
  if (!pass) return null_arg("pass");
  return guard([&] {
    thetadet::AcceptanceOptions opts;
    opts.threads = threads;
    const auto r = thetadet::run_criterion(criterion, opts);
    *pass = r.pass() ? 1 : 0;
    put(report, thetadet::criterion_to_json(r));
    if (line) *line = dup(thetadet::criterion_line(r));
    return TD_OK;
  });
}

td_status td_criterion_title(int criterion, char** out) {
  if (!out) return null_arg("out");
  return guard([&] {
    if (criterion < 1 || criterion > 11) thetadet::fail(thetadet::ErrorKind::Usage, "criterion must be in 1..11");
    *out = dup(thetadet::acceptance_titles()[static_cast<std::size_t>(criterion - 1)]);
    return TD_OK;
  });
}

}  // extern "C"
