#pragma once

#include <complex>
#include <memory>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "thetadet/registry.hpp"
#include "thetadet/root_systems.hpp"

namespace thetadet {

using cplx = std::complex<double>;

inline constexpr double kDefaultEps = 1e-17;
inline constexpr double kExtendedEps = 1e-45;
inline constexpr double kMaxNomeModulus = 0.9;
inline constexpr double kDegenerateFactor = 1e-6;
inline constexpr int kNumericAttempts = 8;

// Truncated products. The factor count depends only on |nome|, |x| and eps:
// factors stop once the larger of |x||nome|^k and |nome/x||nome|^k is below eps.
cplx theta_num(cplx x, cplx nome, double eps = kDefaultEps);
cplx poch_num(cplx a, cplx nome, double eps = kDefaultEps);
// Row-major n x n, partial pivoting.
cplx det_num(std::vector<cplx> m, int n);

struct NumericBinding {
  std::string id;
  int n = 0;
  std::uint64_t seed = 0;
  cplx p{0.25, 0.0};
  cplx q{0.5, 0.0};  // the chosen square root of p
  std::vector<cplx> values;
  double eps = kDefaultEps;
};

// Checks 0 < |p| <= kMaxNomeModulus; q is the principal square root.
NumericBinding make_nome(cplx p, double eps = kDefaultEps);

class NumericEvaluator {
 public:
  NumericEvaluator(std::vector<cplx> values, cplx q, double eps = kDefaultEps);
  cplx mono(const Mono& m) const;
  cplx eval(const Expr& e);
  // Smallest |theta| or |Pochhammer| factor seen so far.
  double min_factor() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Moduli uniform in [0.5, 2], arguments uniform; dependent parameters are
// monomials in the free ones, so constraints hold to rounding.
NumericBinding random_numeric_binding(const CaseInstance& inst, std::uint64_t seed, cplx p = {0.25, 0.0},
                                      int attempt = 0);
// Values of the dependent parameters under a binding, in `derived` order.
std::vector<cplx> derived_values(const CaseInstance& inst, const NumericBinding& b);

struct NumericReport {
  std::string id;
  int n = 0;
  cplx p;
  std::uint64_t seed = 0;
  double residual = 0;
  double tol = 0;
  bool degenerate = false;
  cplx lhs;
  cplx rhs;
  int order = -1;  // exact expansion order, agreement runs only
  bool pass() const { return !degenerate && residual <= tol; }
  std::string status() const { return degenerate ? "degenerate" : pass() ? "pass" : "fail"; }
};

double relative_residual(cplx a, cplx b);

// Double is the default; Extended evaluates with 256-bit GMP floats from the
// same binding (for ill-conditioned sides at larger n).
enum class Precision { Double, Extended };
NumericReport verify_numeric(const CaseInstance& inst, const NumericBinding& b, double tol,
                             Precision prec = Precision::Double);
// Resamples up to kNumericAttempts times while a factor is below
// kDegenerateFactor; reports degenerate after that.
NumericReport verify_numeric_case(const CaseInstance& inst, std::uint64_t seed, cplx p, double tol,
                                  Precision prec = Precision::Double);
NumericReport verify_numeric_mdp(Family f, int n, std::uint64_t seed, cplx p, double tol);
NumericReport verify_numeric_mlc(Family f, int n, int version, std::uint64_t seed, cplx p, double tol);

// theta(x^k; p^k) against prod_j theta(x w^j; p), w = exp(2 pi i / k), 1 <= k <= 12.
double qrt_residual(int k, cplx x, cplx p, double eps = kDefaultEps);

// Exact backend against numeric at a rational binding with moduli in
// [1/2, 2], evaluated numerically in 256-bit precision (resampled while a theta factor is below
// kDegenerateFactor or a side is below kAgreementZeroSide, i.e. vanishes identically). The exact expansions are summed at q = sqrt(p); the
// order grows from kAgreementStartOrder in steps until successive sums agree
// to kAgreementTail relative (or kAgreementMaxOrder is hit).
inline constexpr int kAgreementStartOrder = 40;
inline constexpr int kAgreementStep = 20;
inline constexpr int kAgreementMaxOrder = 200;
inline constexpr double kAgreementTail = 1e-12;
inline constexpr double kAgreementZeroSide = 1e-30;
NumericReport backend_agreement(const CaseInstance& inst, std::uint64_t seed, double p, double tol);

nlohmann::json numeric_report_to_json(const NumericReport& r);

}  // namespace thetadet
