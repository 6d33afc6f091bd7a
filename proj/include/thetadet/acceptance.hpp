#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace thetadet {

// Pinned parameters of the acceptance suite.
namespace acceptance {
inline constexpr int kJtiOrder = 40;
inline constexpr double kJtiSeconds = 5.0;
inline constexpr int kTevOrder = 40;
inline constexpr int kRaddSymbolicOrder = 5;
inline constexpr int kRaddBindings = 10;
inline constexpr int kRaddOrder = 20;
inline constexpr int kEllipticMaxN = 4;
inline constexpr int kEllipticSeeds = 5;
inline constexpr int kEllipticOrder = 12;
inline constexpr int kChainOrder = 10;
inline constexpr int kPolyMaxN = 5;
inline constexpr int kPolySeeds = 5;
inline constexpr int kMdpOrder = 8;
inline constexpr int kMlcOrder = 8;
inline constexpr int kMlcCrossOrder = 12;
inline constexpr int kQuintupleOrder = 40;
inline constexpr int kWinquistOrder = 20;
inline constexpr int kSeptupleOrder = 20;
inline constexpr double kAgreementNome = 0.25;
inline constexpr double kAgreementTol = 1e-8;
inline constexpr int kAgreementMaxN = 3;
inline constexpr int kAgreementSeeds = 3;
inline constexpr int kReachN = 5;
inline constexpr int kReachSeeds = 5;
inline constexpr int kRThetaSpecs = 20;
inline constexpr int kRThetaLifts = 10;
inline constexpr int kRThetaOrder = 8;
}  // namespace acceptance

struct CriterionResult {
  int id = 0;
  std::string title;
  int checks = 0;
  std::vector<std::string> failures;  // one line per failed check
  std::vector<std::string> notes;     // timings and worst residuals
  double seconds = 0;
  bool pass() const { return checks > 0 && failures.empty(); }
};

struct AcceptanceOptions {
  int threads = 0;  // 0: hardware concurrency
  std::function<void(const std::string&)> progress;
};

// Titles of criteria 1..11.
const std::vector<std::string>& acceptance_titles();
// Usage error outside 1..11.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, const AcceptanceOptions& opts = {});

nlohmann::json criterion_to_json(const CriterionResult& r);
// "criterion  4 PASS  ...", one line.
std::string criterion_line(const CriterionResult& r);

}  // namespace thetadet
