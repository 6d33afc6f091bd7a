// Command-line front end over the C API.
#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thetadet/thetadet.h"

namespace {

enum Exit { kPass = 0, kFail = 1, kUnknownId = 2, kDegenerate = 3, kUsage = 4 };

using json = nlohmann::json;

std::string take(char* s) {
  std::string r = s ? s : "";
  td_string_free(s);
  return r;
}

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void raise(td_status st) {
  const std::string msg = td_last_error();
  switch (st) {
    case TD_ERR_UNKNOWN_ID: throw CliError{kUnknownId, msg};
    case TD_ERR_DEGENERATE: throw CliError{kDegenerate, msg};
    default: throw CliError{kUsage, msg};
  }
}

void check(td_status st) {
  if (st != TD_OK) raise(st);
}

int max_exact_n() {
  const char* v = std::getenv("THETADET_MAX_N");
  if (!v || !*v) return 4;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw CliError{kUsage, "THETADET_MAX_N must be a positive integer"};
  return static_cast<int>(n);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw CliError{kUsage, "cannot write " + out_path};
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

struct Common {
  std::string output = "text";
  std::string out_path;
};

int run_list(const Common& c) {
  char* raw = nullptr;
  check(td_list_json(&raw));
  const json arr = json::parse(take(raw));
  if (c.output == "json") {
    emit(arr.dump(2), c.out_path);
    return kPass;
  }
  std::ostringstream os;
  os << pad("id", 15) << pad("label", 24) << pad("mode", 10) << pad("n", 7) << "title\n";
  for (const auto& e : arr) {
    const std::string range = std::to_string(e["n_min"].get<int>()) + ".." + std::to_string(e["n_max"].get<int>());
    os << pad(e["id"], 15) << pad(e["paper_label"], 24) << pad(e["mode"], 10) << pad(range, 7)
       << e["title"].get<std::string>() << "\n";
  }
  emit(os.str(), c.out_path);
  return kPass;
}

struct ExpandArgs {
  std::string family;
  int n = 1;
  int order = 8;
  std::string kind = "w";
  int version = 2;
};

int run_expand(const ExpandArgs& a, const Common& c) {
  const td_expand_kind kind = a.kind == "w" ? TD_EXPAND_W : a.kind == "mdp" ? TD_EXPAND_MDP : TD_EXPAND_MLC;
  td_series* s = nullptr;
  check(td_expand(kind, a.family.c_str(), a.n, a.order, a.version, &s));
  char* raw = nullptr;
  const td_status st = c.output == "json" ? td_series_to_json(s, &raw) : td_series_to_text(s, &raw);
  td_series_free(s);
  check(st);
  std::string text = take(raw);
  if (c.output == "json") text = json::parse(text).dump(2);
  emit(text, c.out_path);
  return kPass;
}

struct VerifyArgs {
  std::string id;
  int n = 1;
  int order = 12;
  std::vector<std::uint64_t> seeds;
  std::string mode = "exact";
  std::vector<double> p;
  double tol = 1e-8;
  bool extended = false;
};

std::string text_line(const json& r, const std::string& mode) {
  std::ostringstream os;
  const bool pass = r.contains("status") ? r["status"] == "pass" : r["equal"].get<bool>();
  os << r["id"].get<std::string>() << " n=" << r["n"] << " seed " << r["seed"] << " " << mode << " "
     << (pass ? "PASS" : r.contains("status") ? r["status"].get<std::string>() : "FAIL");
  if (r.contains("residual")) os << " residual " << r["residual"].get<double>();
  if (r.contains("first_diff") && !r["first_diff"].is_null()) os << " first_diff " << r["first_diff"].dump();
  return os.str();
}

int run_verify(const VerifyArgs& a, const Common& c) {
  const bool exact = a.mode == "exact" || a.mode == "both";
  const bool numeric = a.mode == "numeric" || a.mode == "both";
  if (numeric && a.p.empty()) throw CliError{kUsage, "--mode numeric needs --p"};
  if (a.p.size() > 2) throw CliError{kUsage, "--p takes re or re,im"};
  if (exact && a.n > max_exact_n()) {
    throw CliError{kUsage, "n=" + std::to_string(a.n) + " exceeds THETADET_MAX_N=" + std::to_string(max_exact_n())};
  }
  const double p_re = a.p.empty() ? 0.0 : a.p[0];
  const double p_im = a.p.size() > 1 ? a.p[1] : 0.0;

  json reports = json::array();
  std::ostringstream text;
  bool failed = false, degenerate = false;
  for (std::uint64_t seed : a.seeds) {
    for (int pass_kind = 0; pass_kind < 2; ++pass_kind) {
      const bool is_exact = pass_kind == 0;
      if ((is_exact && !exact) || (!is_exact && !numeric)) continue;
      int ok = 0;
      char* raw = nullptr;
      const td_status st = is_exact ? td_verify_exact(a.id.c_str(), a.n, a.order, seed, &ok, &raw)
                                    : td_verify_numeric(a.id.c_str(), a.n, seed, p_re, p_im, a.tol,
                                                        a.extended ? 1 : 0, &ok, &raw);
      if (st == TD_ERR_DEGENERATE) {
        degenerate = true;
        std::string msg = td_last_error();
        const std::string body = take(raw);
        json r = body.empty() ? json{{"id", a.id}, {"n", a.n}, {"seed", seed}, {"status", "degenerate"}}
                              : json::parse(body);
        r["mode"] = is_exact ? "exact" : "numeric";
        reports.push_back(r);
        text << a.id << " n=" << a.n << " seed " << seed << " " << r["mode"].get<std::string>()
             << " DEGENERATE " << msg << "\n";
        continue;
      }
      if (st != TD_OK) raise(st);
      json r = json::parse(take(raw));
      r["mode"] = is_exact ? "exact" : "numeric";
      failed = failed || !ok;
      text << text_line(r, r["mode"]) << "\n";
      reports.push_back(std::move(r));
    }
  }
  emit(c.output == "json" ? reports.dump(2) : text.str(), c.out_path);
  if (failed) return kFail;
  if (degenerate) return kDegenerate;
  return kPass;
}

struct CorpusArgs {
  std::vector<int> criteria;
  int threads = 0;
};

int run_corpus(const CorpusArgs& a, const Common& c) {
  std::vector<int> ids = a.criteria;
  if (ids.empty()) {
    for (int i = 1; i <= 11; ++i) ids.push_back(i);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  json reports = json::array();
  std::ostringstream text;
  bool all = true;
  for (int id : ids) {
    int ok = 0;
    char* raw = nullptr;
    char* line = nullptr;
    check(td_run_criterion(id, a.threads, &ok, &raw, &line));
    json r = json::parse(take(raw));
    text << take(line) << "\n";
    for (const auto& f : r["failures"]) text << "    " << f.get<std::string>() << "\n";
    if (c.out_path.empty() && c.output == "text") {
      std::cout << text.str() << std::flush;
      text.str("");
    }
    reports.push_back(std::move(r));
    all = all && ok;
  }
  std::size_t passed = 0;
  for (const auto& r : reports) passed += r["status"] == "pass" ? 1 : 0;
  text << passed << "/" << reports.size() << " criteria passed\n";
  emit(c.output == "json" ? reports.dump(2) : text.str(), c.out_path);
  return all ? kPass : kFail;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s, const char* flag) {
  std::vector<T> out;
  for (const auto& tok : split(s)) {
    std::istringstream is(tok);
    T v{};
    if (!(is >> v) || !is.eof()) throw CliError{kUsage, std::string("bad value '") + tok + "' for " + flag};
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta function determinant identities: expansion and verification"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", common.output, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", common.out_path, "write the report to this file");
  };

  auto* list = app.add_subcommand("list", "registry table");
  add_common(list);

  ExpandArgs ex;
  auto* expand = app.add_subcommand("expand", "coefficient dump of W_R, its determinant form, or a Macdonald sum");
  expand->add_option("--family", ex.family, "A, B, Bvee, C, Cvee, BC or D")->required();
  expand->add_option("--n", ex.n)->check(CLI::PositiveNumber);
  expand->add_option("--order", ex.order)->check(CLI::NonNegativeNumber);
  expand->add_option("--kind", ex.kind)->check(CLI::IsMember({"w", "mdp", "mlc"}));
  expand->add_option("--version", ex.version)->check(CLI::IsMember({1, 2}));
  add_common(expand);

  VerifyArgs va;
  std::string seeds = "1", p;
  auto* verify = app.add_subcommand("verify", "check one identity at one n over several seeds");
  verify->add_option("--id", va.id)->required();
  verify->add_option("--n", va.n)->check(CLI::PositiveNumber);
  verify->add_option("--order", va.order)->check(CLI::NonNegativeNumber);
  verify->add_option("--seeds", seeds, "comma-separated");
  verify->add_option("--mode", va.mode)->check(CLI::IsMember({"exact", "numeric", "both"}));
  verify->add_option("--p", p, "nome for numeric mode: re or re,im");
  verify->add_option("--tol", va.tol);
  verify->add_flag("--extended", va.extended, "256-bit numeric evaluation");
  add_common(verify);

  CorpusArgs ca;
  std::string criteria;
  auto* corpus = app.add_subcommand("corpus", "run the acceptance suite");
  corpus->add_option("--criteria", criteria, "comma-separated subset of 1..11");
  corpus->add_option("--threads", ca.threads)->check(CLI::NonNegativeNumber);
  add_common(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (list->parsed()) return run_list(common);
    if (expand->parsed()) return run_expand(ex, common);
    if (verify->parsed()) {
      va.seeds = parse_list<std::uint64_t>(seeds, "--seeds");
      if (va.seeds.empty()) throw CliError{kUsage, "--seeds must not be empty"};
      va.p = parse_list<double>(p, "--p");
      return run_verify(va, common);
    }
    if (corpus->parsed()) {
      ca.criteria = parse_list<int>(criteria, "--criteria");
      return run_corpus(ca, common);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
