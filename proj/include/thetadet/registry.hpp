#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thetadet/expr.hpp"

namespace thetadet {

enum class Mode { Elliptic, Polynomial };

enum class RoleKind {
  Variable,   // the x_i (and similar points); formal in symbolic runs
  Parameter,  // a_i, c_i, t, b_kj ...; formal in symbolic runs
  Constant,   // scale constants and polynomial coefficients; always rational
};

struct Role {
  std::string name;
  std::vector<int> vars;
  RoleKind kind = RoleKind::Parameter;
  std::string constraint;
};

// One identity at a fixed dimension: both sides with every denominator
// multiplied across, over the variables in `vars`. Dependent parameters are
// monomials in the free ones and listed in `derived`.
struct CaseInstance {
  std::string id;
  int n = 0;
  Mode mode = Mode::Elliptic;
  VarSpace vars;
  std::vector<Role> roles;
  std::vector<std::pair<std::string, Mono>> derived;
  Expr lhs;
  Expr rhs;
};

struct IdentityCase {
  std::string id;
  std::string paper_label;
  std::string title;
  Mode mode = Mode::Elliptic;
  int n_min = 1;
  int n_max = 1;
  std::vector<std::string> params;  // "role: count; constraint"
  std::string clearing;             // how the statement was made division free
  std::function<CaseInstance(int)> build;
};

const std::vector<IdentityCase>& list_identities();
// Unknown ids raise ErrorKind::UnknownId.
const IdentityCase& find_identity(const std::string& id);
CaseInstance instantiate(const IdentityCase& c, int n);

struct Binding {
  std::string id;
  int n = 0;
  std::uint64_t seed = 0;
  int order = 0;
  std::vector<std::optional<ExactValue>> values;  // nullopt = formal
};

// Random rational values for every free variable (the x_i stay formal in
// polynomial mode), resampled until no factor of either side vanishes.
// Throws ErrorKind::Degenerate after repeated failures.
Binding sample_binding(const CaseInstance& inst, std::uint64_t seed, int order);

struct CaseVerdict {
  std::string id;
  int n = 0;
  std::uint64_t seed = 0;
  int order = 0;
  Verdict verdict;
};

CaseVerdict verify_exact(const CaseInstance& inst, const Binding& binding);
// All Variable and Parameter roles formal, Constant roles rational; n <= 2
// and at most 8 formal variables, else a usage error.
CaseVerdict verify_symbolic_small(const CaseInstance& inst, int order, std::uint64_t seed = 1);

nlohmann::json case_verdict_to_json(const CaseVerdict& v);
nlohmann::json binding_to_json(const CaseInstance& inst, const Binding& b);
nlohmann::json identity_to_json(const IdentityCase& c);

// Builder-level specialization: the parent identity with one parameter fixed
// equals `factor` times the child identity, side by side.
enum class ChainFactor {
  ThetaNegOverX,  // prod x_i^{-1} theta(-x_i)
  ThetaNegQ,      // prod theta(-q x_i)
  Theta,          // prod theta(x_i)
};
struct ChainStep {
  std::string parent;
  std::string child;
  int fixed_offset = 0;  // the parent's c_{n + fixed_offset} is specialized
  ExactValue value;
  ChainFactor factor = ChainFactor::Theta;
};
const std::vector<ChainStep>& specialization_chain();
Verdict verify_chain_step(const ChainStep& step, int n, std::uint64_t seed, int order);

// cdetr1cor, bdetr1cor, ddetr1cor with all c = 0 and P = 1 against the
// classical determinant after column reversal; x formal.
Verdict verify_degeneration(const std::string& id, int n);

}  // namespace thetadet
