#include "thetadet/theta.hpp"

#include <cmath>
#include <numeric>

#include "thetadet/error.hpp"

namespace thetadet {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Exponents scale(const Exponents& e, int k) {
  Exponents r;
  for (int i = 0; i < kMaxVars; ++i) r.set(i, e[i] * k);
  return r;
}

void check_call(const MonomialArg& arg, int nome_step) {
  if (arg.coeff == 0) fail(ErrorKind::Domain, "theta/Pochhammer argument with zero coefficient");
  if (nome_step < 1) fail(ErrorKind::Usage, "nome step must be >= 1");
}

// m n(n-1)/2 + n k
long sum_form_exponent(long n, long m, long k) { return m * n * (n - 1) / 2 + n * k; }

long sum_form_vertex(int m, int k) {
  return std::lround(0.5 - static_cast<double>(k) / static_cast<double>(m));
}

}  // namespace

MonomialArg MonomialArg::inverse() const {
  if (coeff == 0) fail(ErrorKind::Domain, "inverse of a zero argument");
  return MonomialArg{Rational(1) / coeff, -exps, -qpow};
}

QuasiPeriodicReduction reduce_quasi_periodic(const ThetaCall& call) {
  check_call(call.arg, call.nome_step);
  const int m = call.nome_step;
  const int t = floor_div(call.arg.qpow, m);
  const int k0 = call.arg.qpow - t * m;
  QuasiPeriodicReduction r;
  r.reduced = MonomialArg{call.arg.coeff, call.arg.exps, k0};
  // theta(q^(mt) y) = (-1)^t y^(-t) q^(-m t(t-1)/2) theta(y)
  r.coeff = pow(call.arg.coeff, -t);
  if (t % 2 != 0) r.coeff = -r.coeff;
  r.exps = scale(call.arg.exps, -t);
  r.qpow = -t * k0 - m * t * (t - 1) / 2;
  return r;
}

int theta_min_qexp(const ThetaCall& call) { return reduce_quasi_periodic(call).qpow; }

int pochhammer_min_qexp(const MonomialArg& arg, int nome_step) {
  check_call(arg, nome_step);
  int shift = 0;
  for (int k = arg.qpow; k < 0; k += nome_step) shift += k;
  return shift;
}

NomeSeries pochhammer_inf(int nvars, const MonomialArg& arg, int nome_step, int order) {
  check_call(arg, nome_step);
  if (arg.has_variables() && arg.qpow < 0) {
    fail(ErrorKind::Normalization,
         "Pochhammer argument carries formal variables and a negative q-power; reduce it first");
  }
  // Factors (1 - c q^k) with k < 0 are rewritten as -c q^k (1 - c^-1 q^-k).
  Rational pre = 1;
  int shift = 0;
  std::vector<int> flipped;
  int k = arg.qpow;
  for (; k < 0; k += nome_step) {
    pre *= -arg.coeff;
    shift += k;
    flipped.push_back(-k);
  }
  const int inner = order - shift;
  NomeSeries s = NomeSeries::one(nvars, inner);
  const LaurentPoly c = arg.coeff_poly(nvars);
  if (!flipped.empty()) {
    const LaurentPoly cinv = LaurentPoly::constant(nvars, Rational(1) / arg.coeff);
    for (int f : flipped) {
      if (f <= inner) s = s.times_one_minus(cinv, f);
    }
  }
  for (; k <= inner; k += nome_step) s = s.times_one_minus(c, k);
  if (pre != 1) s = s * pre;
  return s.shift(shift).truncate(order);
}

NomeSeries theta_expand(int nvars, const ThetaCall& call, int order) {
  const QuasiPeriodicReduction red = reduce_quasi_periodic(call);
  const int m = call.nome_step;
  const int inner = order - red.qpow;
  const MonomialArg& y = red.reduced;
  const MonomialArg partner{Rational(1) / y.coeff, -y.exps, m - y.qpow};
  NomeSeries s = pochhammer_inf(nvars, y, m, inner) * pochhammer_inf(nvars, partner, m, inner);
  s = s * LaurentPoly::monomial(nvars, red.coeff, red.exps);
  return s.shift(red.qpow).truncate(order);
}

int theta_sum_min_qexp(const ThetaCall& call) {
  check_call(call.arg, call.nome_step);
  const long n0 = sum_form_vertex(call.nome_step, call.arg.qpow);
  long best = sum_form_exponent(n0, call.nome_step, call.arg.qpow);
  for (long n : {n0 - 1, n0 + 1}) best = std::min(best, sum_form_exponent(n, call.nome_step, call.arg.qpow));
  return static_cast<int>(best);
}

NomeSeries theta_sum_form(int nvars, const ThetaCall& call, int order) {
  check_call(call.arg, call.nome_step);
  const int m = call.nome_step;
  const int k = call.arg.qpow;
  const int low = theta_sum_min_qexp(call);
  if (low > order) return NomeSeries(nvars, order);
  std::vector<LaurentPoly> coeffs(static_cast<std::size_t>(order - low + 1), LaurentPoly(nvars));
  auto add_term = [&](long n) {
    const long e = sum_form_exponent(n, m, k);
    if (e > order) return false;
    Rational c = pow(call.arg.coeff, static_cast<int>(n));
    if (n % 2 != 0) c = -c;
    coeffs[static_cast<std::size_t>(e - low)] +=
        LaurentPoly::monomial(nvars, c, scale(call.arg.exps, static_cast<int>(n)));
    return true;
  };
  // The exponent is convex in n, so walk outwards from its vertex.
  const long n0 = sum_form_vertex(m, k);
  for (long n = n0;; ++n) {
    if (!add_term(n) && n > n0 + 1) break;
  }
  for (long n = n0 - 1;; --n) {
    if (!add_term(n) && n < n0 - 1) break;
  }
  NomeSeries sum = NomeSeries::from_coeffs(nvars, low, order, std::move(coeffs));
  const MonomialArg qm{Rational(1), Exponents{}, m};
  NomeSeries euler = pochhammer_inf(nvars, qm, m, order - low);
  return (sum * series_invert_unit(euler)).truncate(order);
}

NomeSeries theta_product(int nvars, std::span<const ThetaCall> calls, int order) {
  std::vector<int> bounds;
  bounds.reserve(calls.size());
  for (const auto& c : calls) bounds.push_back(theta_min_qexp(c));
  const int total = std::accumulate(bounds.begin(), bounds.end(), 0);
  NomeSeries out = NomeSeries::one(nvars, order - total);
  for (std::size_t i = 0; i < calls.size(); ++i) {
    out = out * theta_expand(nvars, calls[i], order - (total - bounds[i]));
  }
  return out.truncate(order);
}

}  // namespace thetadet
