#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "thetadet/expr.hpp"

namespace thetadet {

enum class Family { A, B, Bvee, C, Cvee, BC, D };

const std::vector<Family>& all_families();
std::string family_name(Family f);
// Accepts "A","B","Bvee","C","Cvee","BC","D"; usage error otherwise.
Family parse_family(const std::string& name);

// W_R(x) in the variables with the given indices (n = x.size()).
Expr w_expr(Family f, const std::vector<int>& x);
// W_R expanded in n formal variables.
NomeSeries macdonald_denominator(Family f, int n, int order);

// Classical Weyl denominator product for A (A_{n-1}), B, C or D.
LaurentPoly weyl_denominator_product(Family classical, int n);
// The matching determinant side, as an expression in the given variables.
Expr weyl_determinant(Family classical, const std::vector<int>& x);
// Classical family and constant k with W_R(x) at q^0 equal to k times the
// classical product.
std::pair<Family, Rational> classical_reduction(Family f);

struct RThetaSpec {
  Family family = Family::A;
  int n = 1;
  std::optional<Mono> norm;  // family A only
  Mono constant = Mono::constant(1);
  std::vector<Mono> b;  // n factors for A, n - 1 otherwise
};

// Factored R theta function in the variable with index x.
Expr build_r_theta(const RThetaSpec& spec, int x);

// f(x) from g(x) by the family's combination rule.
Expr lift_from_g(const Expr& g, Family f, int x);

// Monomial m with f(p x) = m f(x) for R theta functions in the variable x.
Mono quasi_period_factor(Family f, int n, int x, const std::optional<Mono>& norm);
// Monomial m with f(1/x) = m f(x) (not defined for A).
Mono inversion_factor(Family f, int x);

struct RThetaCheck {
  Family family = Family::A;
  int n = 1;
  std::optional<Mono> norm;
  int order = 10;
  int trials = 5;
  std::uint64_t seed = 1;
};

// Checks the functional equations of f in the variable x at `trials` random
// rational points. `values` binds the remaining variables (its x entry is
// overwritten per trial).
Verdict check_r_theta(const Expr& f, int x, std::vector<std::optional<ExactValue>> values,
                      const RThetaCheck& check);

// Random rational c * q^k with k in [-2, 2].
Mono random_q_monomial(std::mt19937_64& rng);
// Random spec; for A the norm is random and the last factor solved from it.
RThetaSpec random_r_theta_spec(Family f, int n, std::mt19937_64& rng);
// g(x) = C prod theta(b_k x) satisfying the g(px) equation of the family.
Expr random_lift_seed(Family f, int n, int x, std::mt19937_64& rng);

}  // namespace thetadet
