#pragma once

#include <string>
#include <utility>
#include <vector>

#include "thetadet/expr.hpp"
#include "thetadet/root_systems.hpp"

namespace thetadet {

// Variables: x_1..x_n are formal slots 0..n-1; family A adds t as slot n.

// Matrix entries of the determinant form of W_R, row-major, as expressions
// over the given variable indices (t only for A).
std::vector<Expr> mdp_entries(Family f, int n, const std::vector<int>& x, int t = -1);
std::vector<NomeSeries> mdp_matrix(Family f, int n, int order);

// Prefactor K_R with det = K_R W_R (times theta(t x_1..x_n) for A), expanded
// as a unit series in `nvars` variables.
NomeSeries euler_constant(Family f, int n, int nvars, int order);
// K_R = scale * num / den with num, den products of Pochhammer symbols.
struct EulerParts {
  Rational scale{1};
  Expr num;
  Expr den;
};
EulerParts euler_parts(Family f, int n);

// det of the matrix above in n formal variables (n + 1 for A, t last).
NomeSeries mdp_determinant(Family f, int n, int order);
Verdict mdp_verify(Family f, int n, int order);

struct MlcSum {
  Family family = Family::A;
  int n = 1;
  int version = 2;
  bool parity = true;  // false drops the sum-even constraint (B, Bvee, D)
  int order = 8;
};

enum class Parity { None, SumZero, SumEven };
Parity mlc_parity(Family f);

// Term shape of the sum side: x_i^{xa m_i + xb} q^{N m_i (m_i - 1) + cq m_i}
// times an inner factor in y_i = x_i q^{2 m_i}, all times `scale`.
enum class MlcInner { DetA, DetB, DetC, DetD, PairsA, Pairs };
enum class MlcSingle { None, OneMinusY, OneMinusY2 };
struct MlcShape {
  int N = 0;
  int cq = 0;
  int xa = 0;
  int xb = 0;
  MlcInner inner = MlcInner::DetA;
  MlcSingle single = MlcSingle::None;
  Rational scale{1};
};
MlcShape mlc_shape(Family f, int n, int version);

// Sum side in n formal variables, exact up to q^order.
NomeSeries mlc_sum_expand(const MlcSum& spec);
// Product side: the Pochhammer prefactor times W_R.
Expr mlc_product_expr(Family f, const std::vector<int>& x);
NomeSeries mlc_product_side(Family f, int n, int order);
Verdict mlc_verify(Family f, int n, int version, int order);

struct SpecializationResult {
  NomeSeries lhs;
  NomeSeries rhs;
  Verdict verdict;
};
// "quintuple", "winquist" or "septuple"; usage error otherwise.
SpecializationResult classical_specialization(const std::string& name, int order);

}  // namespace thetadet
