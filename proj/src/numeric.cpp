#include "thetadet/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <type_traits>

#include "thetadet/error.hpp"
#include "thetadet/macdonald.hpp"
#include "thetadet/sampling.hpp"
#include "mp_complex.hpp"

namespace thetadet {

namespace {

int factor_count(double start, double r, double eps) {
  // smallest K with start * r^K < eps
  if (start < eps) return 0;
  return static_cast<int>(std::ceil((std::log(eps) - std::log(start)) / std::log(r))) + 1;
}

void check_nome(cplx nome) {
  const double r = std::abs(nome);
  if (!(r > 0.0) || !(r < 1.0)) fail(ErrorKind::Domain, "nome modulus must lie in (0, 1)");
}

template <class C>
C ipow(C z, int k) {
  if (k == 0) return C(1.0);
  if (k < 0) return C(1.0) / ipow(z, -k);
  C r(1.0);
  while (k) {
    if (k & 1) r *= z;
    z *= z;
    k >>= 1;
  }
  return r;
}

double mag(const cplx& z) { return std::abs(z); }
double mag(const MpComplex& z) { return cabs(z); }
cplx to_cplx(const cplx& z) { return z; }
cplx to_cplx(const MpComplex& z) { return z.to_double(); }

template <class C>
C from_rational(const Rational& r) {
  if constexpr (std::is_same_v<C, cplx>) {
    return r.get_d();
  } else {
    return C(r);
  }
}

template <class C>
C theta_t(C x, C nome, double eps) {
  check_nome(to_cplx(nome));
  if (mag(x) == 0.0) fail(ErrorKind::Domain, "theta at x = 0");
  const double r = mag(nome);
  const double ax = mag(x);
  const int k1 = factor_count(ax, r, eps);
  const int k2 = factor_count(r / ax, r, eps);
  const C one(1.0);
  C prod(1.0), t = x;
  for (int k = 0; k < std::max(k1, 1); ++k, t *= nome) prod *= one - t;
  t = nome / x;
  for (int k = 0; k < k2; ++k, t *= nome) prod *= one - t;
  return prod;
}

template <class C>
C poch_t(C a, C nome, double eps) {
  check_nome(to_cplx(nome));
  const int k = factor_count(mag(a), mag(nome), eps);
  const C one(1.0);
  C prod(1.0), t = a;
  for (int i = 0; i < k; ++i, t *= nome) prod *= one - t;
  return prod;
}

template <class C>
C det_t(std::vector<C> m, int n) {
  if (static_cast<int>(m.size()) != n * n) fail(ErrorKind::Usage, "matrix size mismatch");
  C d(1.0);
  auto at = [&](int i, int j) -> C& { return m[static_cast<std::size_t>(i * n + j)]; };
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (mag(at(r, c)) > mag(at(piv, c))) piv = r;
    }
    if (mag(at(piv, c)) == 0.0) return C(0.0);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(c, j));
      d = -d;
    }
    d *= at(c, c);
    for (int r = c + 1; r < n; ++r) {
      const C f = at(r, c) / at(c, c);
      for (int j = c; j < n; ++j) at(r, j) -= f * at(c, j);
    }
  }
  return d;
}

template <class C>
class Eval {
 public:
  Eval(std::vector<C> values, C q, double eps) : values_(std::move(values)), q_(std::move(q)), eps_(eps) {}

  C mono(const Mono& m) const {
    C v = from_rational<C>(m.coeff);
    for (const auto& [i, e] : m.vars) {
      if (i < 0 || i >= static_cast<int>(values_.size())) fail(ErrorKind::Usage, "variable without a value");
      v *= ipow(values_[static_cast<std::size_t>(i)], e);
    }
    return v * ipow(q_, m.qpow);
  }

  C eval(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
      case NodeKind::Mono: return mono(n.mono);
      case NodeKind::Theta:
      case NodeKind::ThetaSum: return track(theta_t(mono(n.mono), ipow(q_, n.step), eps_));
      case NodeKind::Poch: return track(poch_t(mono(n.mono), ipow(q_, n.step), eps_));
      case NodeKind::Sum: {
        C s(0.0);
        for (const auto& c : n.children) s += eval(c);
        return s;
      }
      case NodeKind::Product: {
        C s(1.0);
        for (const auto& c : n.children) s *= eval(c);
        return s;
      }
      case NodeKind::Det: {
        std::vector<C> m;
        for (const auto& c : n.children) m.push_back(eval(c));
        return det_t(std::move(m), n.dim);
      }
    }
    fail(ErrorKind::Internal, "unknown node kind");
  }

  double min_factor() const { return min_factor_; }

 private:
  C track(C v) {
    min_factor_ = std::min(min_factor_, mag(v));
    return v;
  }

  std::vector<C> values_;
  C q_;
  double eps_;
  double min_factor_ = 1e300;
};

// Extended evaluation from a double binding; q is taken as sqrt(p) in double.
Eval<MpComplex> extended(const std::vector<cplx>& values, cplx q) {
  std::vector<MpComplex> v;
  for (const auto& z : values) v.emplace_back(z);
  return Eval<MpComplex>(std::move(v), MpComplex(q), kExtendedEps);
}


std::vector<int> iota_vars(int n) {
  std::vector<int> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = i;
  return x;
}

std::vector<cplx> random_points(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> mod(0.5, 2.0);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
  std::vector<cplx> v;
  for (int i = 0; i < count; ++i) v.push_back(std::polar(mod(rng), arg(rng)));
  return v;
}

NumericReport report(const std::string& id, int n, const NumericBinding& b, cplx l, cplx r, double tol, double minf) {
  NumericReport rep{id, n, b.p, b.seed, relative_residual(l, r), tol, false, l, r};
  rep.degenerate = minf < kDegenerateFactor;
  return rep;
}

template <class F>
NumericReport with_resampling(F&& attempt) {
  NumericReport last;
  for (int a = 0; a < kNumericAttempts; ++a) {
    last = attempt(a);
    if (!last.degenerate) return last;
  }
  return last;
}

}  // namespace

cplx theta_num(cplx x, cplx nome, double eps) { return theta_t<cplx>(x, nome, eps); }

cplx poch_num(cplx a, cplx nome, double eps) { return poch_t<cplx>(a, nome, eps); }

cplx det_num(std::vector<cplx> m, int n) { return det_t<cplx>(std::move(m), n); }

NumericBinding make_nome(cplx p, double eps) {
  const double r = std::abs(p);
  if (!(r > 0.0) || r > kMaxNomeModulus) fail(ErrorKind::Usage, "need 0 < |p| <= 0.9");
  NumericBinding b;
  b.p = p;
  b.q = std::sqrt(p);
  b.eps = eps;
  return b;
}

struct NumericEvaluator::Impl : Eval<cplx> {
  using Eval<cplx>::Eval;
};

NumericEvaluator::NumericEvaluator(std::vector<cplx> values, cplx q, double eps)
    : impl_(std::make_shared<Impl>(std::move(values), q, eps)) {}

cplx NumericEvaluator::mono(const Mono& m) const { return impl_->mono(m); }
cplx NumericEvaluator::eval(const Expr& e) { return impl_->eval(e); }
double NumericEvaluator::min_factor() const { return impl_->min_factor(); }

NumericBinding random_numeric_binding(const CaseInstance& inst, std::uint64_t seed, cplx p, int attempt) {
  NumericBinding b = make_nome(p);
  b.id = inst.id;
  b.n = inst.n;
  b.seed = seed;
  std::mt19937_64 rng(mix_seed(inst.id + "/numeric", inst.n, seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt)));
  b.values = random_points(rng, inst.vars.size());
  return b;
}

std::vector<cplx> derived_values(const CaseInstance& inst, const NumericBinding& b) {
  NumericEvaluator ev(b.values, b.q, b.eps);
  std::vector<cplx> out;
  for (const auto& d : inst.derived) out.push_back(ev.mono(d.second));
  return out;
}

double relative_residual(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

NumericReport verify_numeric(const CaseInstance& inst, const NumericBinding& b, double tol, Precision prec) {
  if (b.values.size() != static_cast<std::size_t>(inst.vars.size())) {
    fail(ErrorKind::Constraint, inst.id + ": binding does not match the case variables");
  }
  if (prec == Precision::Extended) {
    auto ev = extended(b.values, b.q);
    const MpComplex l = ev.eval(inst.lhs);
    const MpComplex r = ev.eval(inst.rhs);
    NumericReport rep = report(inst.id, inst.n, b, to_cplx(l), to_cplx(r), tol, ev.min_factor());
    rep.residual = mag(l - r) / std::max({mag(l), mag(r), 1e-300});
    return rep;
  }
  Eval<cplx> ev(b.values, b.q, b.eps);
  const cplx l = ev.eval(inst.lhs);
  const cplx r = ev.eval(inst.rhs);
  return report(inst.id, inst.n, b, l, r, tol, ev.min_factor());
}

NumericReport verify_numeric_case(const CaseInstance& inst, std::uint64_t seed, cplx p, double tol, Precision prec) {
  return with_resampling([&](int a) { return verify_numeric(inst, random_numeric_binding(inst, seed, p, a), tol, prec); });
}

NumericReport verify_numeric_mdp(Family f, int n, std::uint64_t seed, cplx p, double tol) {
  const std::string id = "mdp_" + family_name(f);
  const int nv = f == Family::A ? n + 1 : n;
  const auto x = iota_vars(n);
  const Expr lhs = det(n, mdp_entries(f, n, x, f == Family::A ? n : -1));
  const EulerParts k = euler_parts(f, n);
  Expr w = w_expr(f, x);
  if (f == Family::A) w = w * theta(Mono::var(n) * Mono::prod(x));
  return with_resampling([&](int a) {
    NumericBinding b = make_nome(p);
    b.id = id;
    b.n = n;
    b.seed = seed;
    std::mt19937_64 rng(mix_seed(id, n, seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(a)));
    b.values = random_points(rng, nv);
    NumericEvaluator ev(b.values, b.q, b.eps);
    const cplx l = ev.eval(lhs) * ev.eval(k.den);
    const cplx r = k.scale.get_d() * ev.eval(k.num) * ev.eval(w);
    return report(id, n, b, l, r, tol, ev.min_factor());
  });
}

NumericReport verify_numeric_mlc(Family f, int n, int version, std::uint64_t seed, cplx p, double tol) {
  const std::string id = "mlc_" + family_name(f) + "_v" + std::to_string(version);
  const MlcShape t = mlc_shape(f, n, version);
  const Parity parity = mlc_parity(f);
  const Expr prod = mlc_product_expr(f, iota_vars(n));
  return with_resampling([&](int a) {
    NumericBinding b = make_nome(p);
    b.id = id;
    b.n = n;
    b.seed = seed;
    std::mt19937_64 rng(mix_seed(id, n, seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(a)));
    b.values = random_points(rng, n);
    NumericEvaluator ev(b.values, b.q, b.eps);
    const cplx l = ev.eval(prod);

    // Per-index range: drop m once |q|^{N m(m-1) - (|cq| + 2E + |xa| L) |m|} is negligible.
    const double lq = -std::log(std::abs(b.q));
    double big = 0;
    for (const auto& v : b.values) big = std::max(big, std::abs(std::log(std::abs(v))));
    const int E = 2 * n + 2;
    int M = 1;
    auto weight = [&](int m) {
      return (t.N * double(m) * (m - 1) - (std::abs(t.cq) + 2.0 * E) * m) * lq - (std::abs(t.xa) * m + E + std::abs(t.xb)) * big;
    };
    while (weight(M) < 45.0 || weight(M) < weight(M - 1)) ++M;

    const cplx q2 = b.q * b.q;
    cplx sum = 0.0;
    std::vector<int> m(static_cast<std::size_t>(n), -M);
    for (;;) {
      int msum = 0;
      for (int v : m) msum += v;
      const bool keep = parity == Parity::SumZero ? msum == 0 : parity == Parity::SumEven ? msum % 2 == 0 : true;
      if (keep) {
        std::vector<cplx> y(static_cast<std::size_t>(n));
        cplx base = t.scale.get_d();
        for (int i = 0; i < n; ++i) {
          const int mi = m[static_cast<std::size_t>(i)];
          const cplx xi = b.values[static_cast<std::size_t>(i)];
          y[static_cast<std::size_t>(i)] = xi * ipow(q2, mi);
          base *= ipow(xi, t.xa * mi + t.xb) * ipow(b.q, t.N * mi * (mi - 1) + t.cq * mi);
        }
        cplx inner = 1.0;
        if (t.inner == MlcInner::PairsA || t.inner == MlcInner::Pairs) {
          for (int i = 0; i < n; ++i) {
            const cplx yi = y[static_cast<std::size_t>(i)];
            if (t.single == MlcSingle::OneMinusY) inner *= 1.0 - yi;
            if (t.single == MlcSingle::OneMinusY2) inner *= 1.0 - yi * yi;
            for (int j = i + 1; j < n; ++j) {
              const cplx yj = y[static_cast<std::size_t>(j)];
              inner *= yj - yi;
              if (t.inner == MlcInner::Pairs) inner *= 1.0 - yi * yj;
            }
          }
        } else {
          std::vector<cplx> h;
          for (int i = 0; i < n; ++i) {
            const cplx yi = y[static_cast<std::size_t>(i)];
            for (int s = 1; s <= n; ++s) {
              switch (t.inner) {
                case MlcInner::DetA: h.push_back(ipow(yi, s - 1)); break;
                case MlcInner::DetB: h.push_back(ipow(yi, s - n) - ipow(yi, n + 1 - s)); break;
                case MlcInner::DetC: h.push_back(ipow(yi, s - n - 1) - ipow(yi, n + 1 - s)); break;
                default: h.push_back(ipow(yi, s - n) + ipow(yi, n - s)); break;
              }
            }
          }
          inner = det_num(std::move(h), n);
        }
        sum += base * inner;
      }
      int i = 0;
      while (i < n && m[static_cast<std::size_t>(i)] == M) m[static_cast<std::size_t>(i++)] = -M;
      if (i == n) break;
      ++m[static_cast<std::size_t>(i)];
    }
    return report(id, n, b, l, sum, tol, ev.min_factor());
  });
}

double qrt_residual(int k, cplx x, cplx p, double eps) {
  if (k < 1 || k > 12) fail(ErrorKind::Usage, "k must lie in 1..12");
  const cplx lhs = theta_num(ipow(x, k), ipow(p, k), eps);
  cplx rhs = 1.0;
  for (int j = 0; j < k; ++j) rhs *= theta_num(x * std::polar(1.0, 2.0 * std::numbers::pi * j / k), p, eps);
  return relative_residual(lhs, rhs);
}

std::vector<std::optional<ExactValue>> agreement_values(const CaseInstance& inst, std::uint64_t seed, int attempt) {
  std::mt19937_64 rng(mix_seed(inst.id + "/agreement", inst.n, seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt)));
  std::uniform_int_distribution<long> den(3, 29);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<std::optional<ExactValue>> v;
  for (int i = 0; i < inst.vars.size(); ++i) {
    const long d = den(rng);
    std::uniform_int_distribution<long> num((d + 1) / 2, 2 * d);
    v.push_back(ExactValue{make_rational(sign(rng) ? num(rng) : -num(rng), d), 0});
  }
  return v;
}

NumericReport backend_agreement(const CaseInstance& inst, std::uint64_t seed, double p, double tol) {
  NumericBinding b = make_nome(cplx(p, 0.0));
  b.id = inst.id;
  b.n = inst.n;
  b.seed = seed;
  auto mp_values = [](const std::vector<std::optional<ExactValue>>& v) {
    std::vector<MpComplex> out;
    for (const auto& x : v) out.emplace_back(x->coeff);
    return out;
  };
  std::vector<std::optional<ExactValue>> values;
  double minf = 0;
  for (int a = 0; a < kNumericAttempts; ++a) {
    values = agreement_values(inst, seed, a);
    b.values.clear();
    for (const auto& v : values) b.values.push_back(v->coeff.get_d());
    ExactEvaluator ex(values);
    Eval<MpComplex> ev(mp_values(values), MpComplex(b.q), kExtendedEps);
    const double side = std::min(mag(ev.eval(inst.lhs)), mag(ev.eval(inst.rhs)));
    minf = side < kAgreementZeroSide ? 0.0 : ev.min_factor();
    if (!ex.degeneracy(inst.lhs) && !ex.degeneracy(inst.rhs) && minf >= kDegenerateFactor) break;
  }
  Eval<MpComplex> ev(mp_values(values), MpComplex(b.q), kExtendedEps);
  const cplx numeric_l = to_cplx(ev.eval(inst.lhs));
  const cplx numeric_r = to_cplx(ev.eval(inst.rhs));

  // Grow the order until two successive partial sums agree on both sides.
  const Rational qr(b.q.real());
  ExactEvaluator ex(values);
  auto sum_at = [&](const NomeSeries& s, int order) {
    // exact arithmetic at the binary value of q: the terms alternate and cancel heavily
    Rational acc(0);
    if (s.is_zero()) return cplx(0.0);
    Rational qe(1);
    for (int k = 0; k < std::abs(s.low()); ++k) qe *= s.low() < 0 ? Rational(1) / qr : qr;
    for (int e = s.low(); e <= order; ++e, qe *= qr) acc += s.coeff(e).constant_term() * qe;
    return cplx(acc.get_d());
  };
  int order = inst.mode == Mode::Polynomial ? 0 : kAgreementStartOrder;
  cplx exact_l = sum_at(ex.eval(inst.lhs, order), order);
  cplx exact_r = sum_at(ex.eval(inst.rhs, order), order);
  while (inst.mode == Mode::Elliptic && order < kAgreementMaxOrder) {
    order += kAgreementStep;
    const cplx l = sum_at(ex.eval(inst.lhs, order), order);
    const cplx r = sum_at(ex.eval(inst.rhs, order), order);
    const double scale = std::max({std::abs(l), std::abs(r), 1e-300});
    const bool settled = std::abs(l - exact_l) <= kAgreementTail * scale && std::abs(r - exact_r) <= kAgreementTail * scale;
    exact_l = l;
    exact_r = r;
    if (settled) break;
  }
  NumericReport rep = report(inst.id, inst.n, b, exact_l, numeric_l, tol, minf);
  rep.residual = std::max(relative_residual(exact_l, numeric_l), relative_residual(exact_r, numeric_r));
  rep.rhs = numeric_r;
  rep.order = order;
  return rep;
}

nlohmann::json numeric_report_to_json(const NumericReport& r) {
  nlohmann::json j = {{"id", r.id},
          {"n", r.n},
          {"p", {r.p.real(), r.p.imag()}},
          {"seed", r.seed},
          {"residual", r.residual},
          {"tol", r.tol},
          {"status", r.status()}};
  if (r.order >= 0) j["order"] = r.order;
  return j;
}

}  // namespace thetadet
