#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "thetadet/thetadet.h"

using json = nlohmann::json;

namespace {

std::string take(char* s) {
  std::string r = s ? s : "";
  td_string_free(s);
  return r;
}

td_series* expand(td_expand_kind kind, const char* family, int n, int order, int version = 2) {
  td_series* s = nullptr;
  EXPECT_EQ(td_expand(kind, family, n, order, version, &s), TD_OK) << td_last_error();
  return s;
}

}  // namespace

TEST(CApi, ListAndLookup) {
  char* raw = nullptr;
  ASSERT_EQ(td_list_json(&raw), TD_OK);
  const json arr = json::parse(take(raw));
  EXPECT_EQ(arr.size(), 34u);
  EXPECT_EQ(arr[0]["id"], "eq_awd");
  ASSERT_EQ(td_identity_json("thm_cdet", &raw), TD_OK);
  EXPECT_EQ(json::parse(take(raw))["id"], "thm_cdet");
  EXPECT_EQ(td_identity_json("nope", &raw), TD_ERR_UNKNOWN_ID);
  EXPECT_NE(std::string(td_last_error()).find("nope"), std::string::npos);
}

TEST(CApi, NullArgumentsAndBadInput) {
  EXPECT_EQ(td_list_json(nullptr), TD_ERR_NULL_ARG);
  td_series* s = nullptr;
  EXPECT_EQ(td_expand(TD_EXPAND_W, "E8", 2, 4, 2, &s), TD_ERR_USAGE);
  EXPECT_EQ(td_expand(TD_EXPAND_W, "C", 2, -1, 2, &s), TD_ERR_USAGE);
  EXPECT_EQ(td_expand(TD_EXPAND_MLC, "C", 2, 4, 3, &s), TD_ERR_USAGE);
  EXPECT_EQ(td_series_from_json("{not json", &s), TD_ERR_PARSE);
  EXPECT_EQ(td_series_order(nullptr), -1);
  int pass = 0;
  EXPECT_EQ(td_verify_exact("thm_adet", 99, 4, 1, &pass, nullptr), TD_ERR_USAGE);
  EXPECT_EQ(td_run_criterion(12, 1, &pass, nullptr, nullptr), TD_ERR_USAGE);
}

TEST(CApi, SeriesJsonRoundTrip) {
  const struct {
    td_expand_kind kind;
    const char* family;
    int n;
    int order;
  } cases[] = {{TD_EXPAND_W, "B", 2, 6}, {TD_EXPAND_MDP, "A", 2, 6}, {TD_EXPAND_MLC, "BC", 1, 10}, {TD_EXPAND_W, "Cvee", 1, 8}};
  for (const auto& c : cases) {
    td_series* s = expand(c.kind, c.family, c.n, c.order);
    ASSERT_NE(s, nullptr);
    char* raw = nullptr;
    ASSERT_EQ(td_series_to_json(s, &raw), TD_OK);
    td_series* back = nullptr;
    ASSERT_EQ(td_series_from_json(raw, &back), TD_OK) << td_last_error();
    td_string_free(raw);
    int equal = 0;
    ASSERT_EQ(td_series_equal(s, back, &equal), TD_OK);
    EXPECT_EQ(equal, 1) << c.family;
    EXPECT_EQ(td_series_order(back), c.order);
    EXPECT_EQ(td_series_nvars(back), c.kind == TD_EXPAND_MDP && std::string(c.family) == "A" ? c.n + 1 : c.n);
    td_series_free(s);
    td_series_free(back);
  }
}

TEST(CApi, DistinctSeriesCompareUnequal) {
  td_series* a = expand(TD_EXPAND_W, "B", 2, 6);
  td_series* b = expand(TD_EXPAND_W, "C", 2, 6);
  td_series* c = expand(TD_EXPAND_W, "C", 1, 6);
  int equal = 1;
  ASSERT_EQ(td_series_equal(a, b, &equal), TD_OK);
  EXPECT_EQ(equal, 0);
  ASSERT_EQ(td_series_equal(a, c, &equal), TD_OK);
  EXPECT_EQ(equal, 0);
  td_series_free(a);
  td_series_free(b);
  td_series_free(c);
}

TEST(CApi, QuintupleSumCoefficients) {
  // x^0 q^0 and -x^1 q^0 from m = 0; x^-3 q^4 from m = -1
  td_series* s = expand(TD_EXPAND_MLC, "BC", 1, 10);
  char* raw = nullptr;
  ASSERT_EQ(td_series_to_json(s, &raw), TD_OK);
  const json j = json::parse(take(raw));
  auto coeff = [&](int q, int e) -> std::string {
    for (const auto& t : j["terms"]) {
      if (t["q"] == q && t["exps"][0] == e) return t["num"].get<std::string>() + "/" + t["den"].get<std::string>();
    }
    return "0";
  };
  EXPECT_EQ(coeff(0, 0), "1/1");
  EXPECT_EQ(coeff(0, 1), "-1/1");
  EXPECT_EQ(coeff(4, -3), "1/1");
  td_series_free(s);
}

TEST(CApi, VerifyReports) {
  int pass = 0;
  char* raw = nullptr;
  ASSERT_EQ(td_verify_exact("thm_adet", 2, 8, 1, &pass, &raw), TD_OK);
  EXPECT_EQ(pass, 1);
  json r = json::parse(take(raw));
  EXPECT_EQ(r["status"], "pass");
  EXPECT_EQ(r["seed"], 1);

  ASSERT_EQ(td_verify_symbolic("eq_radd", 1, 3, &pass, &raw), TD_OK);
  EXPECT_EQ(pass, 1);
  td_string_free(raw);

  ASSERT_EQ(td_verify_numeric("thm_cdet", 2, 3, 0.3, 0.1, 1e-8, 0, &pass, &raw), TD_OK);
  EXPECT_EQ(pass, 1);
  r = json::parse(take(raw));
  EXPECT_EQ(r["p"][1], 0.1);
  EXPECT_LT(r["residual"].get<double>(), 1e-8);

  ASSERT_EQ(td_verify_agreement("eq_jti", 1, 1, 0.25, 1e-8, &pass, &raw), TD_OK);
  EXPECT_EQ(pass, 1);
  EXPECT_TRUE(json::parse(take(raw)).contains("order"));

  EXPECT_EQ(td_verify_exact("nope", 1, 4, 1, &pass, &raw), TD_ERR_UNKNOWN_ID);
}

TEST(CApi, CriterionRun) {
  int pass = 0;
  char* raw = nullptr;
  char* line = nullptr;
  ASSERT_EQ(td_run_criterion(2, 1, &pass, &raw, &line), TD_OK);
  EXPECT_EQ(pass, 1);
  const json r = json::parse(take(raw));
  EXPECT_EQ(r["criterion"], 2);
  EXPECT_EQ(r["status"], "pass");
  EXPECT_NE(take(line).find("PASS"), std::string::npos);
  ASSERT_EQ(td_criterion_title(9, &raw), TD_OK);
  EXPECT_NE(take(raw).find("Winquist"), std::string::npos);
}

// ---------------------------------------------------------------- CLI

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::string& args, const std::string& env = "") {
  const std::string path = testing::TempDir() + "cli_out.txt";
  const std::string cmd = env + " " + THETADET_CLI + " " + args + " > " + path + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

}  // namespace

TEST(Cli, ListTable) {
  const CliRun r = cli("list");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("thm_adet"), std::string::npos);
  EXPECT_NE(r.out.find("cor_ddetr1cor"), std::string::npos);
  const CliRun j = cli("list --output json");
  EXPECT_EQ(json::parse(j.out).size(), 34u);
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(cli("verify --id thm_adet --n 3 --order 12 --seeds 1,2,3 --mode exact").code, 0);
  EXPECT_EQ(cli("verify --id thm_nope --n 2").code, 2);
  EXPECT_EQ(cli("verify --id thm_adet --n 2 --mode numeric").code, 4);
  EXPECT_EQ(cli("verify --id thm_adet --n 2 --seeds ''").code, 4);
  EXPECT_EQ(cli("verify --id thm_adet --n 2 --order -3").code, 4);
  EXPECT_EQ(cli("verify --id thm_adet --n 2 -o 3").code, 4);
  EXPECT_EQ(cli("verify --id thm_adet --n 5").code, 4);
  EXPECT_EQ(cli("verify --id thm_adet --n 5 --order 2", "THETADET_MAX_N=5").code, 0);
}

TEST(Cli, VerifyNumericJson) {
  const CliRun r = cli("verify --id thm_cdet --n 2 --mode both --p 0.25 --seeds 1,2 --output json");
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[0]["mode"], "exact");
  EXPECT_EQ(j[1]["mode"], "numeric");
  for (const char* key : {"id", "n", "p", "seed", "residual", "tol", "status"}) EXPECT_TRUE(j[1].contains(key)) << key;
}

TEST(Cli, ExpandRoundTrip) {
  const std::string path = testing::TempDir() + "bc1.json";
  ASSERT_EQ(cli("expand --family BC --n 1 --order 10 --kind mlc --version 2 --output json --out " + path).code, 0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  td_series* parsed = nullptr;
  ASSERT_EQ(td_series_from_json(ss.str().c_str(), &parsed), TD_OK) << td_last_error();
  td_series* mem = nullptr;
  ASSERT_EQ(td_expand(TD_EXPAND_MLC, "BC", 1, 10, 2, &mem), TD_OK);
  int equal = 0;
  ASSERT_EQ(td_series_equal(parsed, mem, &equal), TD_OK);
  EXPECT_EQ(equal, 1);
  td_series_free(parsed);
  td_series_free(mem);
  EXPECT_EQ(cli("expand --family X --n 1").code, 4);
  EXPECT_EQ(cli("expand --family B --n 2 --order 4 --kind mdp").code, 0);
}

TEST(Cli, CorpusSubset) {
  const CliRun r = cli("corpus --criteria 2,1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_LT(r.out.find("criterion  1"), r.out.find("criterion  2"));
  EXPECT_NE(r.out.find("2/2 criteria passed"), std::string::npos);
  EXPECT_EQ(cli("corpus --criteria 0").code, 4);
}
