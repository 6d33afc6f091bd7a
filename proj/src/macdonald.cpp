#include "thetadet/macdonald.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "thetadet/error.hpp"

namespace thetadet {

namespace {

Mono X(int i, int e = 1) { return Mono::var(i, e); }

void check_n(Family f, int n) {
  if (n < 1) fail(ErrorKind::Usage, "n must be >= 1");
  if (f == Family::D && n < 2) fail(ErrorKind::Usage, "family D needs n >= 2");
  if (n > 6) fail(ErrorKind::Usage, "n must be <= 6");
}

// (p^k; p^k)_inf, k in half units of p: k2 = 2k
Expr pp(int k2) { return poch(Mono::q(k2), k2); }

struct MdpRow {
  int nome = 0;   // theta nome p^nome
  int sign = 1;   // sign of the theta argument
  int dx = 0;     // x exponent inside the first theta
  int plus = -1;  // combination of the two terms
  int (*qpow)(int n, int j) = nullptr;  // q exponent inside the theta
  int (*pow1)(int n, int j) = nullptr;
  int (*pow2)(int n, int j) = nullptr;
};

MdpRow mdp_row(Family f, int n) {
  switch (f) {
    case Family::B:
      return {2 * n - 1, 1, 2 * n - 1, -1, [](int, int j) { return 2 * (j - 1); }, [](int n_, int j) { return j - n_; },
              [](int n_, int j) { return n_ + 1 - j; }};
    case Family::Bvee:
      return {2 * n, 1, 2 * n, -1, [](int, int j) { return 2 * (j - 1); }, [](int n_, int j) { return j - n_ - 1; },
              [](int n_, int j) { return n_ + 1 - j; }};
    case Family::C:
      return {2 * n + 2, -1, 2 * n + 2, -1, [](int, int j) { return 2 * j; }, [](int n_, int j) { return j - n_ - 1; },
              [](int n_, int j) { return n_ + 1 - j; }};
    case Family::Cvee:
      return {2 * n, -1, 2 * n, -1, [](int, int j) { return 2 * j - 1; }, [](int n_, int j) { return j - n_; },
              [](int n_, int j) { return n_ + 1 - j; }};
    case Family::BC:
      return {2 * n + 1, -1, 2 * n + 1, -1, [](int, int j) { return 2 * j; }, [](int n_, int j) { return j - n_; },
              [](int n_, int j) { return n_ + 1 - j; }};
    case Family::D:
      return {2 * n - 2, -1, 2 * n - 2, 1, [](int, int j) { return 2 * (j - 1); }, [](int n_, int j) { return j - n_; },
              [](int n_, int j) { return n_ - j; }};
    case Family::A:
      break;
  }
  fail(ErrorKind::Internal, "no two-term row for A");
}

Expr pow_p(int k2, int e) { return power(pp(k2), e); }

// Monomials in (x_1..x_n, q) with q the last variable.
struct Space {
  int n;
  LaurentPoly mono(const Rational& c, const std::vector<int>& xexp, int qexp) const {
    Exponents e;
    for (int i = 0; i < n; ++i) e.set(i, xexp[static_cast<std::size_t>(i)]);
    e.set(n, qexp);
    return LaurentPoly::monomial(n + 1, c, e);
  }
  // y_i^k with y_i = x_i p^{m_i}
  LaurentPoly y(int i, int k, const std::vector<int>& m) const {
    std::vector<int> xe(static_cast<std::size_t>(n), 0);
    xe[static_cast<std::size_t>(i)] = k;
    return mono(Rational(1), xe, 2 * m[static_cast<std::size_t>(i)] * k);
  }
  LaurentPoly one() const { return LaurentPoly::constant(n + 1, Rational(1)); }
};

LaurentPoly h_entry(const Space& sp, MlcInner h, int n, int i, int s, const std::vector<int>& m) {
  switch (h) {
    case MlcInner::DetA: return sp.y(i, s - 1, m);
    case MlcInner::DetB: return sp.y(i, s - n, m) - sp.y(i, n + 1 - s, m);
    case MlcInner::DetC: return sp.y(i, s - n - 1, m) - sp.y(i, n + 1 - s, m);
    case MlcInner::DetD: return sp.y(i, s - n, m) + sp.y(i, n - s, m);
    default: break;
  }
  fail(ErrorKind::Internal, "not a determinant kind");
}

int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  }
  return inv % 2 ? -1 : 1;
}

bool is_det(MlcInner k) { return k != MlcInner::PairsA && k != MlcInner::Pairs; }

LaurentPoly inner_v1(const Space& sp, const MlcShape& t, int n, const std::vector<int>& m) {
  std::vector<std::vector<LaurentPoly>> h(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int s = 1; s <= n; ++s) h[static_cast<std::size_t>(i)].push_back(h_entry(sp, t.inner, n, i, s, m));
  }
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 1);
  LaurentPoly acc(n + 1);
  do {
    LaurentPoly term = sp.one();
    for (int i = 0; i < n; ++i) {
      term = term * h[static_cast<std::size_t>(i)][static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)] - 1)];
    }
    if (perm_sign(sigma) < 0) acc -= term; else acc += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return acc;
}

LaurentPoly inner_v2(const Space& sp, const MlcShape& t, int n, const std::vector<int>& m) {
  LaurentPoly acc = sp.one();
  for (int i = 0; i < n; ++i) {
    if (t.single == MlcSingle::OneMinusY) acc = acc * (sp.one() - sp.y(i, 1, m));
    if (t.single == MlcSingle::OneMinusY2) acc = acc * (sp.one() - sp.y(i, 2, m));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      acc = acc * (sp.y(j, 1, m) - sp.y(i, 1, m));
      if (t.inner == MlcInner::Pairs) acc = acc * (sp.one() - sp.y(i, 1, m) * sp.y(j, 1, m));
    }
  }
  return acc;
}

// Largest |degree| of any y_i in the inner factor of either version.
int inner_degree_bound(int n) { return 2 * n + 2; }

// Admissible m values per index and a lower bound function for pruning.
struct Bounds {
  std::vector<int> values;
  std::map<int, long> low;
  long lmin = 0;
};

Bounds index_bounds(int N, int cq, int n, int order) {
  const long E = inner_degree_bound(n);
  auto L = [&](long m) { return static_cast<long>(N) * m * (m - 1) + cq * m - 2 * E * std::labs(m); };
  long lmin = 0;
  for (long m = -64; m <= 64; ++m) lmin = std::min(lmin, L(m));
  Bounds b;
  b.lmin = lmin;
  const long budget = order - (n - 1) * lmin;
  for (long m = 0;; ++m) {
    if (L(m) <= budget) {
      b.values.push_back(static_cast<int>(m));
      b.low[static_cast<int>(m)] = L(m);
    } else if (m > 0 && L(m) > L(m - 1)) {
      break;
    }
  }
  for (long m = -1;; --m) {
    if (L(m) <= budget) {
      b.values.push_back(static_cast<int>(m));
      b.low[static_cast<int>(m)] = L(m);
    } else if (L(m) > L(m + 1)) {
      break;
    }
  }
  std::sort(b.values.begin(), b.values.end());
  return b;
}

NomeSeries split_q(const LaurentPoly& acc, int n, int order) {
  std::map<int, std::vector<Term>> by_q;
  for (const auto& t : acc.terms()) {
    const int qe = t.exps[n];
    if (qe > order) continue;
    Exponents e = t.exps;
    e.set(n, 0);
    by_q[qe].push_back(Term{e, t.coeff});
  }
  if (by_q.empty()) return NomeSeries(n, order);
  const int low = by_q.begin()->first;
  std::vector<LaurentPoly> coeffs(static_cast<std::size_t>(order - low + 1), LaurentPoly(n));
  for (auto& [qe, terms] : by_q) {
    LaurentPoly p(n);
    for (const auto& t : terms) p += LaurentPoly::monomial(n, t.coeff, t.exps);
    coeffs[static_cast<std::size_t>(qe - low)] = std::move(p);
  }
  return NomeSeries::from_coeffs(n, low, order, std::move(coeffs));
}

std::vector<int> iota_vars(int n) {
  std::vector<int> x(static_cast<std::size_t>(n));
  std::iota(x.begin(), x.end(), 0);
  return x;
}

}  // namespace

std::vector<Expr> mdp_entries(Family f, int n, const std::vector<int>& x, int t) {
  check_n(f, n);
  std::vector<Expr> m;
  if (f == Family::A) {
    if (t < 0) fail(ErrorKind::Usage, "family A needs the variable t");
    for (int i = 0; i < n; ++i) {
      const int xi = x[static_cast<std::size_t>(i)];
      for (int j = 1; j <= n; ++j) {
        const Mono arg = Rational(n % 2 == 1 ? 1 : -1) * (Mono::q(2 * (j - 1)) * X(t) * X(xi, n));
        m.push_back(X(xi, j - 1) * theta(arg, 2 * n));
      }
    }
    return m;
  }
  const MdpRow r = mdp_row(f, n);
  for (int i = 0; i < n; ++i) {
    const int xi = x[static_cast<std::size_t>(i)];
    for (int j = 1; j <= n; ++j) {
      const Mono a1 = Rational(r.sign) * (Mono::q(r.qpow(n, j)) * X(xi, r.dx));
      const Mono a2 = Rational(r.sign) * (Mono::q(r.qpow(n, j)) * X(xi, -r.dx));
      const Expr first = X(xi, r.pow1(n, j)) * theta(a1, 2 * r.nome);
      const Expr second = X(xi, r.pow2(n, j)) * theta(a2, 2 * r.nome);
      m.push_back(r.plus > 0 ? first + second : first - second);
    }
  }
  return m;
}

std::vector<NomeSeries> mdp_matrix(Family f, int n, int order) {
  const int nv = f == Family::A ? n + 1 : n;
  const auto entries = mdp_entries(f, n, iota_vars(n), f == Family::A ? n : -1);
  ExactEvaluator ev(std::vector<std::optional<ExactValue>>(static_cast<std::size_t>(nv)));
  std::vector<NomeSeries> out;
  for (const auto& e : entries) out.push_back(ev.eval(e, order));
  return out;
}

EulerParts euler_parts(Family f, int n) {
  check_n(f, n);
  switch (f) {
    case Family::A: return {Rational(1), pow_p(2, n), pow_p(2 * n, n)};
    case Family::B: return {Rational(2), pow_p(2, n), pow_p(2 * (2 * n - 1), n)};
    case Family::Bvee: return {Rational(2), pp(4) * pow_p(2, n - 1), pow_p(4 * n, n)};
    case Family::C: return {Rational(1), pow_p(2, n), pow_p(2 * (2 * n + 2), n)};
    case Family::Cvee: return {Rational(1), pp(1) * pow_p(2, n - 1), pow_p(4 * n, n)};
    case Family::BC: return {Rational(1), pow_p(2, n), pow_p(2 * (2 * n + 1), n)};
    case Family::D: return {Rational(4), pow_p(2, n), pow_p(2 * (2 * n - 2), n)};
  }
  fail(ErrorKind::Internal, "unknown family");
}

NomeSeries euler_constant(Family f, int n, int nvars, int order) {
  const EulerParts e = euler_parts(f, n);
  ExactEvaluator ev({});
  const NomeSeries s = ev.eval(e.num, order) * series_invert_unit(ev.eval(e.den, order)) * e.scale;
  return s.truncate(order).remap(nvars, {});
}

NomeSeries mdp_determinant(Family f, int n, int order) {
  check_n(f, n);
  const int nv = f == Family::A ? n + 1 : n;
  ExactEvaluator ev(std::vector<std::optional<ExactValue>>(static_cast<std::size_t>(nv)));
  return ev.eval(det(n, mdp_entries(f, n, iota_vars(n), f == Family::A ? n : -1)), order);
}

Verdict mdp_verify(Family f, int n, int order) {
  check_n(f, n);
  const int nv = f == Family::A ? n + 1 : n;
  const auto x = iota_vars(n);
  ExactEvaluator ev(std::vector<std::optional<ExactValue>>(static_cast<std::size_t>(nv)));
  const NomeSeries d = mdp_determinant(f, n, order);
  Expr w = w_expr(f, x);
  if (f == Family::A) w = w * theta(X(n) * Mono::prod(x));
  const NomeSeries rhs = (euler_constant(f, n, nv, order) * ev.eval(w, order)).truncate(order);
  return series_equal(d, rhs, order);
}

Parity mlc_parity(Family f) {
  switch (f) {
    case Family::A: return Parity::SumZero;
    case Family::B:
    case Family::Bvee:
    case Family::D: return Parity::SumEven;
    default: return Parity::None;
  }
}

MlcShape mlc_shape(Family f, int n, int version) {
  check_n(f, n);
  if (version != 1 && version != 2) fail(ErrorKind::Usage, "version must be 1 or 2");
  using I = MlcInner;
  using S = MlcSingle;
  if (version == 1) {
    switch (f) {
      case Family::A: return {n, 0, n, 0, I::DetA, S::None, Rational(1)};
      case Family::B: return {2 * n - 1, 2 * (n - 1), 2 * n - 1, 0, I::DetB, S::None, Rational(1)};
      case Family::Bvee: return {2 * n, 2 * n, 2 * n, 0, I::DetC, S::None, Rational(1)};
      case Family::C: return {2 * n + 2, 2 * (n + 1), 2 * n + 2, 0, I::DetC, S::None, Rational(1)};
      case Family::Cvee: return {2 * n, 2 * n - 1, 2 * n, 0, I::DetB, S::None, Rational(1)};
      case Family::BC: return {2 * n + 1, 2 * n, 2 * n + 1, 0, I::DetB, S::None, Rational(1)};
      case Family::D: return {2 * n - 2, 2 * (n - 1), 2 * n - 2, 0, I::DetD, S::None, make_rational(1, 2)};
    }
  }
  switch (f) {
    case Family::A: return {n, 0, n, 0, I::PairsA, S::None, Rational(1)};
    case Family::B: return {2 * n - 1, 0, 2 * n - 1, 1 - n, I::Pairs, S::OneMinusY, Rational(1)};
    case Family::Bvee: return {2 * n, 0, 2 * n, -n, I::Pairs, S::OneMinusY2, Rational(1)};
    case Family::C: return {2 * n + 2, 2, 2 * n + 2, -n, I::Pairs, S::OneMinusY2, Rational(1)};
    case Family::Cvee: return {2 * n, 1, 2 * n, 1 - n, I::Pairs, S::OneMinusY, Rational(1)};
    case Family::BC: return {2 * n + 1, 2, 2 * n + 1, 1 - n, I::Pairs, S::OneMinusY, Rational(1)};
    case Family::D: return {2 * n - 2, 0, 2 * n - 2, 1 - n, I::Pairs, S::None, Rational(1)};
  }
  fail(ErrorKind::Internal, "unknown family");
}

NomeSeries mlc_sum_expand(const MlcSum& spec) {
  const Family f = spec.family;
  const int n = spec.n;
  if (spec.order < 0) fail(ErrorKind::Usage, "order must be >= 0");
  const MlcShape t = mlc_shape(f, n, spec.version);
  const Bounds bd = index_bounds(t.N, t.cq, n, spec.order);
  const Parity parity = mlc_parity(f);
  const Space sp{n};

  LaurentPoly acc(n + 1);
  std::vector<int> m(static_cast<std::size_t>(n), 0);
  auto visit = [&](auto&& self, int i, long low_sum, int msum) -> void {
    if (i == n) {
      if (parity == Parity::SumZero && msum != 0) return;
      if (parity == Parity::SumEven && spec.parity && msum % 2 != 0) return;
      std::vector<int> xe(static_cast<std::size_t>(n));
      int qe = 0;
      for (int k = 0; k < n; ++k) {
        const int mk = m[static_cast<std::size_t>(k)];
        xe[static_cast<std::size_t>(k)] = t.xa * mk + t.xb;
        qe += t.N * mk * (mk - 1) + t.cq * mk;
      }
      const LaurentPoly base = sp.mono(t.scale, xe, qe);
      acc += base * (is_det(t.inner) ? inner_v1(sp, t, n, m) : inner_v2(sp, t, n, m));
      return;
    }
    for (int v : bd.values) {
      const long l = low_sum + bd.low.at(v);
      if (l + static_cast<long>(n - 1 - i) * bd.lmin > spec.order) continue;
      m[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, l, msum + v);
    }
  };
  visit(visit, 0, 0, 0);
  return split_q(acc, n, spec.order);
}

Expr mlc_product_expr(Family f, const std::vector<int>& x) {
  const int n = static_cast<int>(x.size());
  Expr pre;
  switch (f) {
    case Family::A: pre = pow_p(2, n - 1); break;
    case Family::Bvee: pre = pp(4) * pow_p(2, n - 1); break;
    case Family::Cvee: pre = pp(1) * pow_p(2, n - 1); break;
    default: pre = pow_p(2, n); break;
  }
  return pre * w_expr(f, x);
}

NomeSeries mlc_product_side(Family f, int n, int order) {
  check_n(f, n);
  ExactEvaluator ev(std::vector<std::optional<ExactValue>>(static_cast<std::size_t>(n)));
  return ev.eval(mlc_product_expr(f, iota_vars(n)), order);
}

Verdict mlc_verify(Family f, int n, int version, int order) {
  const NomeSeries sum = mlc_sum_expand(MlcSum{f, n, version, true, order});
  return series_equal(mlc_product_side(f, n, order), sum, order);
}

SpecializationResult classical_specialization(const std::string& name, int order) {
  if (name == "quintuple" || name == "winquist") {
    const Family f = name == "quintuple" ? Family::BC : Family::B;
    const int n = name == "quintuple" ? 1 : 2;
    SpecializationResult r{mlc_product_side(f, n, order), mlc_sum_expand(MlcSum{f, n, 2, true, order}), {}};
    r.verdict = series_equal(r.lhs, r.rhs, order);
    return r;
  }
  if (name == "septuple") {
    // BC_2 determinant form with x_2 = -1
    const auto x = iota_vars(2);
    ExactEvaluator ev(std::vector<std::optional<ExactValue>>(2));
    const NomeSeries d = ev.eval(det(2, mdp_entries(Family::BC, 2, x)), order);
    const NomeSeries w = (euler_constant(Family::BC, 2, 2, order) * ev.eval(w_expr(Family::BC, x), order)).truncate(order);
    SpecializationResult r{d.substitute(1, Rational(-1)), w.substitute(1, Rational(-1)), {}};
    r.verdict = series_equal(r.lhs, r.rhs, order);
    return r;
  }
  fail(ErrorKind::Usage, "unknown specialization '" + name + "' (expected quintuple, winquist or septuple)");
}

}  // namespace thetadet
