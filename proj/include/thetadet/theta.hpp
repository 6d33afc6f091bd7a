#pragma once

#include <span>

#include "thetadet/nome_series.hpp"

namespace thetadet {

// The argument c * x^exps * q^qpow of a theta function or Pochhammer symbol,
// with exps indexing the formal variables of the target series.
struct MonomialArg {
  Rational coeff{1};
  Exponents exps;
  int qpow = 0;

  bool has_variables() const { return !exps.is_zero(); }
  LaurentPoly coeff_poly(int nvars) const { return LaurentPoly::monomial(nvars, coeff, exps); }
  MonomialArg inverse() const;
  bool operator==(const MonomialArg&) const = default;
};

// theta(arg; q^nome_step). nome_step = 2 is the elliptic nome p, 4 is p^2 and
// 1 is p^(1/2).
struct ThetaCall {
  MonomialArg arg;
  int nome_step = 2;
};

// theta(q^(m*t) y; q^m) = prefactor * theta(y; q^m) with y's q-power reduced
// into [0, m).
struct QuasiPeriodicReduction {
  MonomialArg reduced;
  Rational coeff{1};
  Exponents exps;
  int qpow = 0;
};
QuasiPeriodicReduction reduce_quasi_periodic(const ThetaCall& call);

// Lower bound for the q-exponents occurring in theta_expand(call).
int theta_min_qexp(const ThetaCall& call);

// (arg; q^nome_step)_inf expanded modulo q^(order+1).
NomeSeries pochhammer_inf(int nvars, const MonomialArg& arg, int nome_step, int order);
// Lower bound for the q-exponents occurring in pochhammer_inf.
int pochhammer_min_qexp(const MonomialArg& arg, int nome_step);

// Product form (arg, q^m/arg; q^m)_inf after quasi-periodic reduction.
NomeSeries theta_expand(int nvars, const ThetaCall& call, int order);

// Jacobi triple product sum form:
//   (q^m; q^m)_inf^(-1) * sum_n (-1)^n q^(m n(n-1)/2) arg^n.
NomeSeries theta_sum_form(int nvars, const ThetaCall& call, int order);
int theta_sum_min_qexp(const ThetaCall& call);

NomeSeries theta_product(int nvars, std::span<const ThetaCall> calls, int order);

}  // namespace thetadet
