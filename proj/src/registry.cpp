#include "thetadet/registry.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "thetadet/error.hpp"
#include "thetadet/root_systems.hpp"
#include "thetadet/sampling.hpp"
#include "thetadet/series_json.hpp"

namespace thetadet {

namespace {

using Monos = std::vector<Mono>;
using Fun = std::function<Expr(const Mono&)>;

Mono V(int i) { return Mono::var(i); }
Mono one() { return Mono::constant(Rational(1)); }

Mono prod_range(const std::vector<int>& v, int from, int to) {  // 1-based, inclusive
  Mono m = one();
  for (int k = from; k <= to; ++k) m = m * V(v[static_cast<std::size_t>(k - 1)]);
  return m;
}
Mono prod_all(const std::vector<int>& v) { return prod_range(v, 1, static_cast<int>(v.size())); }

Expr one_minus(const Mono& m) { return sum({constant(Rational(1)), mono(-m)}); }
Expr one_plus(const Mono& m) { return sum({constant(Rational(1)), mono(m)}); }
Expr diff(const Mono& a, const Mono& b) { return sum({mono(a), mono(-b)}); }

// theta in elliptic mode, 1 - m at p = 0
Expr lin(Mode mode, const Mono& m) { return mode == Mode::Elliptic ? theta(m) : one_minus(m); }

std::string idx(int j) { return std::to_string(j); }

class Ctx {
 public:
  Ctx(const std::string& id, int n, Mode mode) {
    inst.id = id;
    inst.n = n;
    inst.mode = mode;
  }

  int add(const std::string& var, const std::string& role, RoleKind kind) {
    const int i = inst.vars.add(var);
    auto it = std::find_if(inst.roles.begin(), inst.roles.end(), [&](const Role& r) { return r.name == role; });
    if (it == inst.roles.end()) {
      inst.roles.push_back(Role{role, {}, kind, {}});
      it = inst.roles.end() - 1;
    }
    it->vars.push_back(i);
    return i;
  }
  std::vector<int> fam(const std::string& name, int count, RoleKind kind, int first = 1) {
    std::vector<int> out;
    for (int k = first; k < first + count; ++k) out.push_back(add(name + idx(k), name, kind));
    return out;
  }
  void derive(const std::string& name, const Mono& m) { inst.derived.emplace_back(name, m); }

  CaseInstance finish(Expr lhs, Expr rhs) {
    inst.lhs = std::move(lhs);
    inst.rhs = std::move(rhs);
    return std::move(inst);
  }

  CaseInstance inst;
};

// C prod theta(b_k x), last factor solved from the norm.
Fun a_theta_fn(Ctx& k, int j, const Mono& norm) {
  const Mono c = V(k.add("C" + idx(j), "C", RoleKind::Constant));
  Monos b;
  Mono rest = norm;
  for (int m = 1; m < j; ++m) {
    b.push_back(V(k.add("b" + idx(m) + "_" + idx(j), "b", RoleKind::Parameter)));
    rest = rest / b.back();
  }
  k.derive("b" + idx(j) + "_" + idx(j), rest);
  b.push_back(rest);
  return [c, b](const Mono& x) {
    std::vector<Expr> f{mono(c)};
    for (const auto& bk : b) f.push_back(theta(bk * x));
    return product(std::move(f));
  };
}

// D_j theta function C prod_{k<j} theta(b_k x^{+-1}).
Fun d_theta_fn(Ctx& k, int j) {
  const Mono c = V(k.add("C" + idx(j), "C", RoleKind::Constant));
  Monos b;
  for (int m = 1; m < j; ++m) b.push_back(V(k.add("b" + idx(m) + "_" + idx(j), "b", RoleKind::Parameter)));
  return [c, b](const Mono& x) {
    std::vector<Expr> f{mono(c)};
    for (const auto& bk : b) f.push_back(theta_pm(bk, x));
    return product(std::move(f));
  };
}

struct Poly {
  Monos coeff;
  Expr at(const Mono& x) const {
    std::vector<Expr> t;
    for (std::size_t k = 0; k < coeff.size(); ++k) t.push_back(mono(coeff[k] * x.pow(static_cast<int>(k))));
    return sum(std::move(t));
  }
};

// sum_k d_k x^k of degree `deg`; with a norm the top coefficient is
// (-1)^deg norm d_0. `monic0` fixes d_0 = 1.
Poly poly_fn(Ctx& k, int j, int deg, const std::optional<Mono>& norm, bool monic0 = false) {
  Poly p;
  for (int e = 0; e <= deg; ++e) {
    const std::string name = "d" + idx(j) + "_" + idx(e);
    if (e == 0 && monic0) {
      p.coeff.push_back(one());
    } else if (e == deg && deg > 0 && norm) {
      const Mono top = Rational(deg % 2 == 0 ? 1 : -1) * (*norm * p.coeff.front());
      k.derive(name, top);
      p.coeff.push_back(top);
    } else {
      p.coeff.push_back(V(k.add(name, "d", RoleKind::Constant)));
    }
  }
  return p;
}

Fun as_fun(const Poly& p) {
  return [p](const Mono& x) { return p.at(x); };
}

// det(x_i^{pow(j)} F_j(x_i) + sign x_i^{rpow(j)} F_j(1/x_i)) with
// F_j(x) = prod_k L(c_k x) P_j(x) prod_{k>j} L(a_k x).
Expr reflected_det(Mode mode, const std::vector<int>& x, const Monos& c, const std::vector<Fun>& p,
                   const Monos& a, const std::function<int(int)>& pow, int sign,
                   const std::function<int(int)>& rpow) {
  const int n = static_cast<int>(x.size());
  auto f = [&](int j, const Mono& xm) {
    std::vector<Expr> fs;
    for (const auto& ck : c) fs.push_back(lin(mode, ck * xm));
    if (!p.empty()) fs.push_back(p[static_cast<std::size_t>(j - 1)](xm));
    for (int k = j + 1; k <= static_cast<int>(a.size()); ++k) fs.push_back(lin(mode, a[static_cast<std::size_t>(k - 1)] * xm));
    return product(std::move(fs));
  };
  std::vector<Expr> m;
  for (int i = 0; i < n; ++i) {
    const Mono xi = V(x[static_cast<std::size_t>(i)]);
    for (int j = 1; j <= n; ++j) {
      m.push_back(xi.pow(pow(j)) * f(j, xi) + (Rational(sign) * xi.pow(rpow(j))) * f(j, xi.inverse()));
    }
  }
  return det(n, std::move(m));
}

Monos monos(const std::vector<int>& v) {
  Monos out;
  for (int i : v) out.push_back(V(i));
  return out;
}

// prod_{i<j} a_j x_i^{-1} theta(x_i x_j^{+-1})  (a empty: no a_j factor)
Expr pair_theta_pm(const std::vector<int>& x, const std::vector<int>& a) {
  std::vector<Expr> f;
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Mono m = Mono::var(x[static_cast<std::size_t>(i)], -1);
      if (!a.empty()) m = m * V(a[static_cast<std::size_t>(j)]);
      f.push_back(m * theta_pm(V(x[static_cast<std::size_t>(i)]), V(x[static_cast<std::size_t>(j)])));
    }
  }
  return product(std::move(f));
}

// prod_{i<j} a_j (x_j - x_i)(1 - x_i x_j), or (x_i - x_j)(1 - x_i x_j) when a is empty
Expr pair_poly(const std::vector<int>& x, const std::vector<int>& a) {
  std::vector<Expr> f;
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Mono xi = V(x[static_cast<std::size_t>(i)]), xj = V(x[static_cast<std::size_t>(j)]);
      if (a.empty()) {
        f.push_back(diff(xi, xj));
      } else {
        f.push_back(mono(V(a[static_cast<std::size_t>(j)])));
        f.push_back(diff(xj, xi));
      }
      f.push_back(one_minus(xi * xj));
    }
  }
  return product(std::move(f));
}

// prod_{i<j} L(c_i c_j), or i <= j when `diag`
Expr pair_c(Mode mode, const std::vector<int>& c, bool diag = false) {
  std::vector<Expr> f;
  const int m = static_cast<int>(c.size());
  for (int i = 0; i < m; ++i) {
    for (int j = diag ? i : i + 1; j < m; ++j) f.push_back(lin(mode, V(c[static_cast<std::size_t>(i)]) * V(c[static_cast<std::size_t>(j)])));
  }
  return product(std::move(f));
}

Expr prod_at_inverse(const std::vector<Fun>& p, const std::vector<int>& a) {
  std::vector<Expr> f;
  for (std::size_t i = 0; i < p.size(); ++i) f.push_back(p[i](V(a[i]).inverse()));
  return product(std::move(f));
}

// ---------------------------------------------------------------- classical

Expr classical_product(Family f, const std::vector<int>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<Expr> r;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Mono xi = V(x[static_cast<std::size_t>(i)]), xj = V(x[static_cast<std::size_t>(j)]);
      r.push_back(diff(xj, xi));
      if (f != Family::A) r.push_back(one_minus(xi * xj));
    }
  }
  for (int i = 0; i < n; ++i) {
    const Mono xi = V(x[static_cast<std::size_t>(i)]);
    if (f == Family::B) {
      r.push_back(mono(xi.pow(1 - n)));
      r.push_back(one_minus(xi));
    } else if (f == Family::C) {
      r.push_back(mono(xi.pow(-n)));
      r.push_back(one_minus(xi.pow(2)));
    } else if (f == Family::D) {
      r.push_back(mono(xi.pow(1 - n)));
    }
  }
  if (f == Family::D) r.push_back(constant(Rational(2)));
  return product(std::move(r));
}

CaseInstance build_classical(const std::string& id, Family f, int n) {
  Ctx k(id, n, Mode::Polynomial);
  const auto x = k.fam("x", n, RoleKind::Variable);
  return k.finish(weyl_determinant(f, x), classical_product(f, x));
}

// ---------------------------------------------------------------- theta facts

CaseInstance build_radd(int n) {
  Ctx k("eq_radd", n, Mode::Elliptic);
  const Mono a = V(k.add("a", "a", RoleKind::Parameter));
  const Mono b = V(k.add("b", "b", RoleKind::Parameter));
  const Mono c = V(k.add("c", "c", RoleKind::Parameter));
  const Mono x = V(k.add("x", "x", RoleKind::Variable));
  const Mono d = (a * b * c).inverse();
  k.derive("d", d);
  auto four = [&](const Mono& y) {
    return product({theta(a * y), theta(b * y), theta(c * y), theta(d * y)});
  };
  Expr lhs = x.pow(-2) * four(x) - x.pow(2) * four(x.inverse());
  Expr rhs = (a * x).inverse() * product({theta(a * b), theta(a * c), theta(a * d), theta(x.pow(2))});
  return k.finish(lhs, rhs);
}

CaseInstance build_jti(int n) {
  Ctx k("eq_jti", n, Mode::Elliptic);
  const Mono x = V(k.add("x", "x", RoleKind::Variable));
  return k.finish(theta(x), theta_sum(x));
}

CaseInstance build_txsq(int n) {
  Ctx k("eq_txsq", n, Mode::Elliptic);
  const Mono x = V(k.add("x", "x", RoleKind::Variable));
  Expr rhs = product({theta(x), theta(-x), theta(Mono::q(1) * x), theta(-(Mono::q(1) * x))});
  return k.finish(theta(x.pow(2)), rhs);
}

CaseInstance build_tev(int n) {
  Ctx k("eq_tev", n, Mode::Elliptic);
  Expr lhs = product({theta(Mono::constant(Rational(-1))), theta(Mono::q(1)), theta(-Mono::q(1))});
  return k.finish(lhs, constant(Rational(2)));
}

// ---------------------------------------------------------------- D type

CaseInstance build_bcdet(int n) {
  Ctx k("prop_bcdet", n, Mode::Elliptic);
  const auto x = k.fam("x", n, RoleKind::Variable);
  const auto a = k.fam("a", n, RoleKind::Parameter);
  std::vector<Fun> p;
  for (int j = 1; j <= n; ++j) p.push_back(d_theta_fn(k, j));
  std::vector<Expr> m;
  for (int i = 0; i < n; ++i) {
    const Mono xi = V(x[static_cast<std::size_t>(i)]);
    for (int j = 1; j <= n; ++j) {
      std::vector<Expr> f{p[static_cast<std::size_t>(j - 1)](xi)};
      for (int kk = j + 1; kk <= n; ++kk) f.push_back(theta_pm(V(a[static_cast<std::size_t>(kk - 1)]), xi));
      m.push_back(product(std::move(f)));
    }
  }
  std::vector<Expr> r;
  for (int i = 0; i < n; ++i) r.push_back(p[static_cast<std::size_t>(i)](V(a[static_cast<std::size_t>(i)])));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Mono xi = V(x[static_cast<std::size_t>(i)]), xj = V(x[static_cast<std::size_t>(j)]);
      r.push_back((V(a[static_cast<std::size_t>(j)]) / xj) * theta_pm(xj, xi));
    }
  }
  return k.finish(det(n, std::move(m)), product(std::move(r)));
}

CaseInstance build_frobc(int n) {
  Ctx k("cor_frobc", n, Mode::Elliptic);
  const auto x = k.fam("x", n, RoleKind::Variable);
  const auto a = k.fam("a", n, RoleKind::Parameter);
  // rows multiplied by prod_k theta(a_k x_i^{+-1})
  std::vector<Expr> m;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Expr> f;
      for (int kk = 0; kk < n; ++kk) {
        if (kk != j) f.push_back(theta_pm(V(a[static_cast<std::size_t>(kk)]), V(x[static_cast<std::size_t>(i)])));
      }
      m.push_back(product(std::move(f)));
    }
  }
  std::vector<Expr> r;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Mono xi = V(x[static_cast<std::size_t>(i)]), xj = V(x[static_cast<std::size_t>(j)]);
      const Mono ai = V(a[static_cast<std::size_t>(i)]), aj = V(a[static_cast<std::size_t>(j)]);
      r.push_back((aj / xj) * (theta_pm(xj, xi) * theta_pm(ai, aj)));
    }
  }
  return k.finish(det(n, std::move(m)), product(std::move(r)));
}

// Sylvester form: rows scaled by gamma = P_{n+1}(b),
// M'_ij = gamma A_ij - P_{n+1}(x_i) B_j, det M' = gamma^{n-1} (gamma det M).
Expr sylvester_det(int n, const std::vector<Expr>& a_entries, const std::vector<Expr>& b_row,
                   const std::vector<Expr>& eta, const Expr& gamma) {
  std::vector<Expr> m;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m.push_back(gamma * a_entries[static_cast<std::size_t>(i * n + j)] - eta[static_cast<std::size_t>(i)] * b_row[static_cast<std::size_t>(j)]);
    }
  }
  return det(n, std::move(m));
}

CaseInstance build_bcdetcor(int n) {
  Ctx k("cor_bcdetcor", n, Mode::Elliptic);
  const auto x = k.fam("x", n, RoleKind::Variable);
  const auto a = k.fam("a", n + 1, RoleKind::Parameter);
  const int b = k.add("b", "b", RoleKind::Variable);
  std::vector<Fun> p;
  for (int j = 1; j <= n + 1; ++j) p.push_back(d_theta_fn(k, j));
  auto entry = [&](int j, const Mono& y) {
    std::vector<Expr> f{p[static_cast<std::size_t>(j - 1)](y)};
    for (int kk = j + 1; kk <= n + 1; ++kk) f.push_back(theta_pm(V(a[static_cast<std::size_t>(kk - 1)]), y));
    return product(std::move(f));
  };
  std::vector<Expr> am, brow, eta;
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j <= n; ++j) am.push_back(entry(j, V(x[static_cast<std::size_t>(i)])));
    eta.push_back(p[static_cast<std::size_t>(n)](V(x[static_cast<std::size_t>(i)])));
  }
  for (int j = 1; j <= n; ++j) brow.push_back(entry(j, V(b)));
  const Expr gamma = p[static_cast<std::size_t>(n)](V(b));
  Expr lhs = sylvester_det(n, am, brow, eta, gamma);

  std::vector<int> xs = x;
  xs.push_back(b);
  std::vector<Expr> r{power(gamma, n - 1)};
  for (int i = 0; i <= n; ++i) r.push_back(p[static_cast<std::size_t>(i)](V(a[static_cast<std::size_t>(i)])));
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const Mono xi = V(xs[static_cast<std::size_t>(i)]), xj = V(xs[static_cast<std::size_t>(j)]);
      r.push_back((V(a[static_cast<std::size_t>(j)]) / xj) * theta_pm(xj, xi));
    }
  }
  return k.finish(lhs, product(std::move(r)));
}

// ---------------------------------------------------------------- A type

// prod_{i<j} a_j x_j theta(x_i / x_j)
Expr a_pairs(const std::vector<int>& x, const std::vector<int>& a) {
  std::vector<Expr> r;
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Mono xi = V(x[static_cast<std::size_t>(i)]), xj = V(x[static_cast<std::size_t>(j)]);
      r.push_back((V(a[static_cast<std::size_t>(j)]) * xj) * theta(xi / xj));
    }
  }
  return product(std::move(r));
}

Expr a_det(Mode mode, const std::vector<int>& x, const std::vector<Fun>& p, const std::vector<int>& a) {
  const int n = static_cast<int>(x.size());
  std::vector<Expr> m;
  for (int i = 0; i < n; ++i) {
    const Mono xi = V(x[static_cast<std::size_t>(i)]);
    for (int j = 1; j <= n; ++j) {
      std::vector<Expr> f{p[static_cast<std::size_t>(j - 1)](xi)};
      for (int kk = j + 1; kk <= static_cast<int>(a.size()); ++kk) f.push_back(lin(mode, V(a[static_cast<std::size_t>(kk - 1)]) * xi));
      m.push_back(product(std::move(f)));
    }
  }
  return det(n, std::move(m));
}

CaseInstance build_adet(int n) {
  Ctx k("thm_adet", n, Mode::Elliptic);
  const auto x = k.fam("x", n, RoleKind::Variable);
  const auto a = k.fam("a", n, RoleKind::Parameter);
  const Mono t = V(k.add("t", "t", RoleKind::Parameter));
  std::vector<Fun> p;
  for (int j = 1; j <= n; ++j) p.push_back(a_theta_fn(k, j, t * prod_range(a, 1, j)));
  Expr lhs = a_det(Mode::Elliptic, x, p, a) * theta(t);
  Expr rhs = product({theta(t * prod_all(a) * prod_all(x)), prod_at_inverse(p, a), a_pairs(x, a)});
  return k.finish(lhs, rhs);
}

CaseInstance build_tvcor(int n) {
  Ctx k("cor_tvcor", n, Mode::Elliptic);
  const auto x = k.fam("x", n, RoleKind::Variable);
  const auto a = k.fam("a", n - 1, RoleKind::Parameter);
  const auto c = k.fam("c", n - 1, RoleKind::Parameter, 2);  // c_2..c_n
  const Mono t = V(k.add("t", "t", RoleKind::Parameter));
  auto cm = [&](int j) { return V(c[static_cast<std::size_t>(j - 2)]); };
  auto am = [&](int j) { return V(a[static_cast<std::size_t>(j - 1)]); };
  Monos b;
  for (int j = 1; j <= n; ++j) {
    Mono d = one();
    for (int kk = 1; kk < j; ++kk) d = d * am(kk);
    for (int kk = j + 1; kk <= n; ++kk) d = d * cm(kk);
    b.push_back(t / d);
    k.derive("b" + idx(j), b.back());
  }
  std::vector<Expr> m;
  for (int i = 0; i < n; ++i) {
    const Mono xi = V(x[static_cast<std::size_t>(i)]);
    for (int j = 1; j <= n; ++j) {
      std::vector<Expr> f;
      for (int kk = 1; kk < j; ++kk) f.push_back(theta(am(kk) * xi));
      f.push_back(theta(b[static_cast<std::size_t>(j - 1)] * xi));
      for (int kk = j + 1; kk <= n; ++kk) f.push_back(theta(cm(kk) * xi));
      m.push_back(product(std::move(f)));
    }
  }
  std::vector<Expr> r{theta(t * prod_all(x))};
  for (int i = 2; i <= n; ++i) r.push_back(theta(b[static_cast<std::size_t>(i - 1)] / cm(i)));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const Mono xi = V(x[static_cast<std::size_t>(i - 1)]), xj = V(x[static_cast<std::size_t>(j - 1)]);
      r.push_back((cm(j) * xj) * (theta(xi / xj) * theta(am(i) / cm(j))));
    }
  }
  return k.finish(det(n, std::move(m)), product(std::move(r)));
}

CaseInstance build_froa(int n) {
  Ctx k("cor_froa", n, Mode::Elliptic);
  const auto x = k.fam("x", n, RoleKind::Variable);
  const auto a = k.fam("a", n, RoleKind::Parameter);
  const Mono t = V(k.add("t", "t", RoleKind::Parameter));
  // rows multiplied by theta(t) prod_k theta(a_k x_i)
  std::vector<Expr> m;
  for (int i = 0; i < n; ++i) {
    const Mono xi = V(x[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n; ++j) {
      std::vector<Expr> f{theta(t * V(a[static_cast<std::size_t>(j)]) * xi)};
      for (int kk = 0; kk < n; ++kk) {
        if (kk != j) f.push_back(theta(V(a[static_cast<std::size_t>(kk)]) * xi));
      }
      m.push_back(product(std::move(f)));
    }
  }
  std::vector<Expr> r{power(theta(t), n - 1), theta(t * prod_all(a) * prod_all(x))};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Mono xi = V(x[static_cast<std::size_t>(i)]), xj = V(x[static_cast<std::size_t>(j)]);
      const Mono ai = V(a[static_cast<std::size_t>(i)]), aj = V(a[static_cast<std::size_t>(j)]);
      r.push_back((aj * xj) * (theta(ai / aj) * theta(xi / xj)));
    }
  }
  return k.finish(det(n, std::move(m)), product(std::move(r)));
}

CaseInstance build_adetcor(int n) {
  Ctx k("cor_adetcor", n, Mode::Elliptic);
  const auto x = k.fam("x", n, RoleKind::Variable);
  const auto a = k.fam("a", n + 1, RoleKind::Parameter);
  const int b = k.add("b", "b", RoleKind::Variable);
  const Mono t = V(k.add("t", "t", RoleKind::Parameter));
  std::vector<Fun> p;
  for (int j = 1; j <= n + 1; ++j) p.push_back(a_theta_fn(k, j, t * prod_range(a, 1, j)));
  auto entry = [&](int j, const Mono& y) {
    std::vector<Expr> f{p[static_cast<std::size_t>(j - 1)](y)};
    for (int kk = j + 1; kk <= n + 1; ++kk) f.push_back(theta(V(a[static_cast<std::size_t>(kk - 1)]) * y));
    return product(std::move(f));
  };
  std::vector<Expr> am, brow, eta;
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j <= n; ++j) am.push_back(entry(j, V(x[static_cast<std::size_t>(i)])));
    eta.push_back(p[static_cast<std::size_t>(n)](V(x[static_cast<std::size_t>(i)])));
  }
  for (int j = 1; j <= n; ++j) brow.push_back(entry(j, V(b)));
  const Expr gamma = p[static_cast<std::size_t>(n)](V(b));
  Expr lhs = theta(t) * sylvester_det(n, am, brow, eta, gamma);
  std::vector<int> xs = x;
  xs.push_back(b);
  Expr rhs = product({power(gamma, n - 1), theta(t * V(b) * prod_all(a) * prod_all(x)), prod_at_inverse(p, a),
                      a_pairs(xs, a)});
  return k.finish(lhs, rhs);
}

// ---------------------------------------------------------------- C type family

struct CParams {
  std::vector<int> x, a, c;
  std::vector<Fun> p;
};

// x, a, c and P_j of norm s (c_1..c_m a_{j+1}..a_n)^{-1} q^qpow
CParams c_params(Ctx& k, int n, int m, const Rational& s, int qpow) {
  CParams r;
  r.x = k.fam("x", n, RoleKind::Variable);
  r.a = k.fam("a", n, RoleKind::Parameter);
  r.c = k.fam("c", m, RoleKind::Parameter);
  for (int j = 1; j <= n; ++j) {
    const Mono norm = s * (Mono::q(qpow) * prod_all(r.c) * prod_range(r.a, j + 1, n)).inverse();
    r.p.push_back(a_theta_fn(k, j, norm));
  }
  return r;
}

Expr x_theta_sq(const std::vector<int>& x) {  // prod x_i^{-1} theta(x_i^2)
  std::vector<Expr> f;
  for (int i : x) f.push_back(Mono::var(i, -1) * theta(V(i).pow(2)));
  return product(std::move(f));
}

CaseInstance build_cdet(int n) {
  Ctx k("thm_cdet", n, Mode::Elliptic);
  CParams c = c_params(k, n, n + 2, Rational(1), 0);
  Expr lhs = reflected_det(Mode::Elliptic, c.x, monos(c.c), c.p, monos(c.a), [n](int) { return -n - 1; }, -1,
                           [n](int) { return n + 1; });
  const Mono ca = prod_all(c.c) * prod_all(c.a);
  lhs = lhs * theta(ca);
  Expr rhs = product({mono(prod_all(c.a)), prod_at_inverse(c.p, c.a), pair_c(Mode::Elliptic, c.c), x_theta_sq(c.x),
                      pair_theta_pm(c.x, c.a)});
  return k.finish(lhs, rhs);
}

CaseInstance build_lem(int n) {
  Ctx k("cor_lem", n, Mode::Elliptic);
  const auto x = k.fam("x", n, RoleKind::Variable);
  const auto c = k.fam("c", n + 2, RoleKind::Parameter);
  const Mono call = prod_all(c);
  auto f = [&](const Monos& xs) {
    Mono xp = one();
    for (const auto& xi : xs) xp = xp * xi;
    std::vector<Expr> fs{theta(xp / call)};
    for (const auto& xi : xs) {
      fs.push_back(mono(xi.pow(-n - 1)));
      for (int ci : c) fs.push_back(theta(V(ci) * xi));
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) fs.push_back(xs[j] * theta(xs[i] / xs[j]));
    }
    return product(std::move(fs));
  };
  // prod (1 - R_i) as a signed sum over reflected subsets
  std::vector<Expr> terms;
  for (int s = 0; s < (1 << n); ++s) {
    Monos xs;
    for (int i = 0; i < n; ++i) xs.push_back((s >> i) & 1 ? V(x[static_cast<std::size_t>(i)]).inverse() : V(x[static_cast<std::size_t>(i)]));
    const Expr t = f(xs);
    terms.push_back(__builtin_popcount(static_cast<unsigned>(s)) % 2 ? -t : t);
  }
  Expr rhs = product({mono(-call.inverse()), pair_c(Mode::Elliptic, c), x_theta_sq(x), pair_theta_pm(x, {})});
  return k.finish(sum(std::move(terms)), rhs);
}

CaseInstance build_bcdet2(int n) {
  Ctx k("cor_bcdet2", n, Mode::Elliptic);
  CParams c = c_params(k, n, n + 1, Rational(-1), 0);
  Expr lhs = reflected_det(Mode::Elliptic, c.x, monos(c.c), c.p, monos(c.a), [n](int) { return -n; }, -1,
                           [n](int) { return n + 1; });
  lhs = lhs * theta(-(prod_all(c.c) * prod_all(c.a)));
  std::vector<Expr> r{mono(prod_all(c.a)), prod_at_inverse(c.p, c.a), pair_c(Mode::Elliptic, c.c)};
  for (int ci : c.c) r.push_back(theta(-V(ci)));
  for (int xi : c.x) {
    r.push_back(theta(V(xi)));
    r.push_back(theta(Mono::q(2) * V(xi).pow(2), 4));
  }
  r.push_back(pair_theta_pm(c.x, c.a));
  return k.finish(lhs, product(std::move(r)));
}

CaseInstance build_cvdet(int n) {
  Ctx k("cor_cvdet", n, Mode::Elliptic);
  CParams c = c_params(k, n, n, Rational(1), 1);
  Expr lhs = reflected_det(Mode::Elliptic, c.x, monos(c.c), c.p, monos(c.a), [n](int) { return -n; }, -1,
                           [n](int) { return n + 1; });
  lhs = lhs * theta(Mono::q(1) * prod_all(c.c) * prod_all(c.a));
  std::vector<Expr> r{mono(prod_all(c.a)), theta(Mono::q(1)), prod_at_inverse(c.p, c.a), pair_c(Mode::Elliptic, c.c)};
  // theta(-c_i; p^{1/2}) = theta(-c_i) theta(-p^{1/2} c_i)
  for (int ci : c.c) r.push_back(theta(-V(ci), 1));
  for (int xi : c.x) r.push_back(theta(V(xi), 1));
  r.push_back(pair_theta_pm(c.x, c.a));
  return k.finish(lhs, product(std::move(r)));
}

CaseInstance build_bvdet(int n) {
  Ctx k("cor_bvdet", n, Mode::Elliptic);
  CParams c = c_params(k, n, n, Rational(-1), 0);
  Expr lhs = reflected_det(Mode::Elliptic, c.x, monos(c.c), c.p, monos(c.a), [n](int) { return -n; }, -1,
                           [n](int) { return n; });
  lhs = lhs * theta(-(prod_all(c.c) * prod_all(c.a)));
  std::vector<Expr> r{mono(prod_all(c.a) * prod_all(c.c)), theta(Mono::constant(Rational(-1))),
                      prod_at_inverse(c.p, c.a), pair_c(Mode::Elliptic, c.c)};
  for (int ci : c.c) r.push_back(theta(Mono::q(2) * V(ci).pow(2), 4));
  for (int xi : c.x) r.push_back(Mono::var(xi, -1) * theta(V(xi).pow(2), 4));
  r.push_back(pair_theta_pm(c.x, c.a));
  return k.finish(lhs, product(std::move(r)));
}

CaseInstance build_bdet(int n) {
  Ctx k("cor_bdet", n, Mode::Elliptic);
  CParams c = c_params(k, n, n - 1, Rational(1), 0);
  Expr lhs = reflected_det(Mode::Elliptic, c.x, monos(c.c), c.p, monos(c.a), [n](int) { return 1 - n; }, -1,
                           [n](int) { return n; });
  lhs = lhs * theta(prod_all(c.c) * prod_all(c.a));
  std::vector<Expr> r{mono(Rational(-2) * (prod_all(c.a) * prod_all(c.c))), prod_at_inverse(c.p, c.a),
                      pair_c(Mode::Elliptic, c.c)};
  for (int ci : c.c) {
    r.push_back(theta(-V(ci)));
    r.push_back(theta(Mono::q(2) * V(ci).pow(2), 4));
  }
  for (int xi : c.x) r.push_back(theta(V(xi)));
  r.push_back(pair_theta_pm(c.x, c.a));
  return k.finish(lhs, product(std::move(r)));
}

CaseInstance build_ddet(int n) {
  Ctx k("cor_ddet", n, Mode::Elliptic);
  CParams c = c_params(k, n, n - 2, Rational(1), 0);
  Expr lhs = reflected_det(Mode::Elliptic, c.x, monos(c.c), c.p, monos(c.a), [n](int) { return 1 - n; }, 1,
                           [n](int) { return n - 1; });
  lhs = lhs * theta(prod_all(c.c) * prod_all(c.a));
  Expr rhs = product({mono(Rational(-4) * (prod_all(c.a) * prod_all(c.c))), prod_at_inverse(c.p, c.a),
                      pair_c(Mode::Elliptic, c.c, true), pair_theta_pm(c.x, c.a)});
  return k.finish(lhs, rhs);
}

// ---------------------------------------------------------------- p = 0

CaseInstance build_apoldet(int n) {
  Ctx k("cor_apoldet", n, Mode::Polynomial);
  const auto x = k.fam("x", n, RoleKind::Variable);
  const auto a = k.fam("a", n, RoleKind::Parameter);
  const Mono t = V(k.add("t", "t", RoleKind::Parameter));
  std::vector<Fun> p;
  for (int j = 1; j <= n; ++j) p.push_back(as_fun(poly_fn(k, j, j, t * prod_range(a, 1, j))));
  Expr lhs = a_det(Mode::Polynomial, x, p, a) * one_minus(t);
  std::vector<Expr> r{one_minus(t * prod_all(a) * prod_all(x)), prod_at_inverse(p, a)};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      r.push_back(mono(V(a[static_cast<std::size_t>(j)])));
      r.push_back(diff(V(x[static_cast<std::size_t>(j)]), V(x[static_cast<std::size_t>(i)])));
    }
  }
  return k.finish(lhs, product(std::move(r)));
}

CaseInstance build_apoldet2(int n) {
  Ctx k("cor_apoldet2", n, Mode::Polynomial);
  const auto x = k.fam("x", n, RoleKind::Variable);
  const auto a = k.fam("a", n, RoleKind::Parameter);
  std::vector<Fun> p;
  for (int j = 1; j <= n; ++j) p.push_back(as_fun(poly_fn(k, j, j - 1, std::nullopt)));
  std::vector<Expr> r{prod_at_inverse(p, a)};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      r.push_back(mono(V(a[static_cast<std::size_t>(j)])));
      r.push_back(diff(V(x[static_cast<std::size_t>(j)]), V(x[static_cast<std::size_t>(i)])));
    }
  }
  return k.finish(a_det(Mode::Polynomial, x, p, a), product(std::move(r)));
}

CaseInstance build_adetcorr(int n) {
  Ctx k("cor_adetcorr", n, Mode::Polynomial);
  const auto x = k.fam("x", n, RoleKind::Variable);
  const Mono b = V(k.add("b", "b", RoleKind::Parameter));
  const auto y = k.fam("y", n + 1, RoleKind::Parameter);
  std::vector<Poly> p;
  for (int j = 1; j <= n; ++j) p.push_back(poly_fn(k, j, j - 1, std::nullopt, true));
  auto qf = [&](const Mono& z) {
    std::vector<Expr> f;
    for (int yk : y) f.push_back(one_minus(V(yk) * z));
    return product(std::move(f));
  };
  std::vector<Expr> am, brow, eta;
  for (int i = 0; i < n; ++i) {
    const Mono xi = V(x[static_cast<std::size_t>(i)]);
    for (int j = 1; j <= n; ++j) am.push_back(xi.pow(n + 1 - j) * p[static_cast<std::size_t>(j - 1)].at(xi));
    eta.push_back(qf(xi));
  }
  for (int j = 1; j <= n; ++j) brow.push_back(b.pow(n + 1 - j) * p[static_cast<std::size_t>(j - 1)].at(b));
  const Expr gamma = qf(b);
  std::vector<Expr> r{power(gamma, n - 1), one_minus(b * prod_all(x) * prod_all(y))};
  for (int xi : x) r.push_back(diff(V(xi), b));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) r.push_back(diff(V(x[static_cast<std::size_t>(i)]), V(x[static_cast<std::size_t>(j)])));
  }
  return k.finish(sylvester_det(n, am, brow, eta, gamma), product(std::move(r)));
}

// polynomial analogue of c_params; deg_shift 0 gives degree j with the norm,
// -1 gives free polynomials of degree j - 1
CParams r_params(Ctx& k, int n, int m, const Rational& s, bool normed, bool with_a = true) {
  CParams r;
  r.x = k.fam("x", n, RoleKind::Variable);
  if (with_a) r.a = k.fam("a", n, RoleKind::Parameter);
  r.c = k.fam("c", m, RoleKind::Parameter);
  for (int j = 1; j <= n; ++j) {
    if (normed) {
      const Mono norm = s * (prod_all(r.c) * prod_range(r.a, j + 1, n)).inverse();
      r.p.push_back(as_fun(poly_fn(k, j, j, norm)));
    } else {
      r.p.push_back(as_fun(poly_fn(k, j, j - 1, std::nullopt)));
    }
  }
  return r;
}

Expr x_pow_prod(const std::vector<int>& x, int e) {
  std::vector<Expr> f;
  for (int xi : x) f.push_back(mono(V(xi).pow(e)));
  return product(std::move(f));
}

Expr x_factor(const std::vector<int>& x, int e, int kind) {  // x^e (1 - x^kind), kind 0: none
  std::vector<Expr> f{x_pow_prod(x, e)};
  if (kind > 0) {
    for (int xi : x) f.push_back(one_minus(V(xi).pow(kind)));
  }
  return product(std::move(f));
}

Expr c_plus(const std::vector<int>& c) {
  std::vector<Expr> f;
  for (int ci : c) f.push_back(one_plus(V(ci)));
  return product(std::move(f));
}

CaseInstance build_cdetr(int n) {
  Ctx k("cor_cdetr", n, Mode::Polynomial);
  CParams c = r_params(k, n, n + 2, Rational(1), true);
  Expr lhs = reflected_det(Mode::Polynomial, c.x, monos(c.c), c.p, monos(c.a), [n](int) { return -n - 1; }, -1,
                           [n](int) { return n + 1; });
  lhs = lhs * one_minus(prod_all(c.c) * prod_all(c.a));
  Expr rhs = product({mono(prod_all(c.a)), prod_at_inverse(c.p, c.a), pair_c(Mode::Polynomial, c.c),
                      x_factor(c.x, -n, 2), pair_poly(c.x, c.a)});
  return k.finish(lhs, rhs);
}

CaseInstance build_bdetr(int n) {
  Ctx k("cor_bdetr", n, Mode::Polynomial);
  CParams c = r_params(k, n, n + 1, Rational(-1), true);
  Expr lhs = reflected_det(Mode::Polynomial, c.x, monos(c.c), c.p, monos(c.a), [n](int) { return -n; }, -1,
                           [n](int) { return n + 1; });
  lhs = lhs * one_plus(prod_all(c.c) * prod_all(c.a));
  Expr rhs = product({mono(prod_all(c.a)), prod_at_inverse(c.p, c.a), pair_c(Mode::Polynomial, c.c), c_plus(c.c),
                      x_factor(c.x, 1 - n, 1), pair_poly(c.x, c.a)});
  return k.finish(lhs, rhs);
}

CaseInstance build_ddetr(int n) {
  Ctx k("cor_ddetr", n, Mode::Polynomial);
  CParams c = r_params(k, n, n, Rational(-1), true);
  Expr lhs = reflected_det(Mode::Polynomial, c.x, monos(c.c), c.p, monos(c.a), [n](int) { return -n; }, 1,
                           [n](int) { return n; });
  lhs = lhs * one_plus(prod_all(c.c) * prod_all(c.a));
  Expr rhs = product({mono(Rational(2) * prod_all(c.a)), prod_at_inverse(c.p, c.a),
                      pair_c(Mode::Polynomial, c.c, true), x_factor(c.x, 1 - n, 0), pair_poly(c.x, c.a)});
  return k.finish(lhs, rhs);
}

CaseInstance build_cdetr1(int n) {
  Ctx k("cor_cdetr1", n, Mode::Polynomial);
  CParams c = r_params(k, n, n + 1, Rational(1), false);
  Expr lhs = reflected_det(Mode::Polynomial, c.x, monos(c.c), c.p, monos(c.a), [n](int) { return -n; }, -1,
                           [n](int) { return n; });
  Expr rhs = product({prod_at_inverse(c.p, c.a), pair_c(Mode::Polynomial, c.c), x_factor(c.x, -n, 2),
                      pair_poly(c.x, c.a)});
  return k.finish(lhs, rhs);
}

CaseInstance build_bdetr1(int n) {
  Ctx k("cor_bdetr1", n, Mode::Polynomial);
  CParams c = r_params(k, n, n, Rational(1), false);
  Expr lhs = reflected_det(Mode::Polynomial, c.x, monos(c.c), c.p, monos(c.a), [n](int) { return 1 - n; }, -1,
                           [n](int) { return n; });
  Expr rhs = product({prod_at_inverse(c.p, c.a), pair_c(Mode::Polynomial, c.c), c_plus(c.c), x_factor(c.x, 1 - n, 1),
                      pair_poly(c.x, c.a)});
  return k.finish(lhs, rhs);
}

CaseInstance build_ddetr1(int n) {
  Ctx k("cor_ddetr1", n, Mode::Polynomial);
  CParams c = r_params(k, n, n - 1, Rational(1), false);
  Expr lhs = reflected_det(Mode::Polynomial, c.x, monos(c.c), c.p, monos(c.a), [n](int) { return 1 - n; }, 1,
                           [n](int) { return n - 1; });
  Expr rhs = product({constant(Rational(2)), prod_at_inverse(c.p, c.a), pair_c(Mode::Polynomial, c.c, true),
                      x_factor(c.x, 1 - n, 0), pair_poly(c.x, c.a)});
  return k.finish(lhs, rhs);
}

Expr p_at_zero(const std::vector<Fun>& p) {
  std::vector<Expr> f;
  for (const auto& pj : p) f.push_back(pj(Mono::constant(Rational(0))));
  return product(std::move(f));
}

// The three corollaries without a_j. `kind`: 0 C, 1 B, 2 D.
Expr cor_lhs(int kind, const std::vector<int>& x, const Monos& c, const std::vector<Fun>& p) {
  switch (kind) {
    case 0:
      return reflected_det(Mode::Polynomial, x, c, p, {}, [](int j) { return -j; }, -1, [](int j) { return j; });
    case 1:
      return reflected_det(Mode::Polynomial, x, c, p, {}, [](int j) { return 1 - j; }, -1, [](int j) { return j; });
    default:
      return reflected_det(Mode::Polynomial, x, c, p, {}, [](int j) { return 1 - j; }, 1, [](int j) { return j - 1; });
  }
}

CaseInstance build_rcor(const std::string& id, int kind, int n) {
  Ctx k(id, n, Mode::Polynomial);
  const int m = kind == 0 ? n + 1 : kind == 1 ? n : n - 1;
  CParams c = r_params(k, n, m, Rational(1), false, false);
  Expr lhs = cor_lhs(kind, c.x, monos(c.c), c.p);
  std::vector<Expr> r{p_at_zero(c.p), pair_c(Mode::Polynomial, c.c, kind == 2)};
  if (kind == 0) r.push_back(x_factor(c.x, -n, 2));
  if (kind == 1) {
    r.push_back(c_plus(c.c));
    r.push_back(x_factor(c.x, 1 - n, 1));
  }
  if (kind == 2) {
    r.push_back(constant(Rational(2)));
    r.push_back(x_factor(c.x, 1 - n, 0));
  }
  r.push_back(pair_poly(c.x, {}));
  return k.finish(lhs, product(std::move(r)));
}

// ---------------------------------------------------------------- table

using S = std::vector<std::string>;

std::vector<IdentityCase> make_registry() {
  const Mode E = Mode::Elliptic, P = Mode::Polynomial;
  const std::string ctheta = "C_j: 1 per P_j, scale constant";
  const std::string coeffs = "d_j_k: coefficients of P_j";
  std::vector<IdentityCase> r = {
      {"eq_awd", "Equation awd", "Vandermonde determinant", P, 1, 6, {"x: n"}, "none",
       [](int n) { return build_classical("eq_awd", Family::A, n); }},
      {"eq_bwd", "Equation bwd", "Weyl denominator, type B", P, 1, 6, {"x: n"}, "none",
       [](int n) { return build_classical("eq_bwd", Family::B, n); }},
      {"eq_cwd", "Equation cwd", "Weyl denominator, type C", P, 1, 6, {"x: n"}, "none",
       [](int n) { return build_classical("eq_cwd", Family::C, n); }},
      {"eq_dwd", "Equation dwd", "Weyl denominator, type D", P, 1, 6, {"x: n"}, "none",
       [](int n) { return build_classical("eq_dwd", Family::D, n); }},
      {"eq_radd", "Equation radd", "Addition formula", E, 1, 1, {"a, b, c, x: 1 each", "d: 1; d = 1/(a b c)"}, "none",
       build_radd},
      {"eq_jti", "Equation jti", "Triple product expansion", E, 1, 1, {"x: 1"}, "none", build_jti},
      {"eq_txsq", "Equation txsq", "Duplication", E, 1, 1, {"x: 1"}, "none", build_txsq},
      {"eq_tev", "Equation tev", "Special value", E, 1, 1, {}, "none", build_tev},
      {"prop_bcdet", "Proposition bcdet", "A D type determinant evaluation", E, 1, 5,
       {"x: n", "a: n", ctheta, "b_k_j: j-1 per P_j (D_j theta function)"}, "none", build_bcdet},
      {"cor_frobc", "Corollary frobc", "A D type Cauchy determinant", E, 1, 5, {"x: n", "a: n"},
       "row i times prod_k theta(a_k x_i^{+-1}); both sides times prod_{i,j} theta(a_j x_i^{+-1})", build_frobc},
      {"cor_bcdetcor", "Corollary bcdetcor", "A D type determinant evaluation", E, 1, 4,
       {"x: n", "a: n+1", "b: 1", ctheta, "b_k_j: j-1 per P_j, j = 1..n+1"},
       "rows times P_{n+1}(b); right side times P_{n+1}(b)^{n-1}", build_bcdetcor},
      {"thm_adet", "Theorem adet", "An A type determinant evaluation", E, 1, 5,
       {"x: n", "a: n", "t: 1", ctheta, "b_k_j: j per P_j; b_j_j = t a_1..a_j / prod_{k<j} b_k_j"},
       "left side times theta(t)", build_adet},
      {"cor_tvcor", "Corollary tvcor", "Tarasov-Varchenko determinant", E, 1, 5,
       {"x: n", "a: n-1", "c: n-1 (c_2..c_n)", "t: 1", "b_j: n; b_j = t/(a_1..a_{j-1} c_{j+1}..c_n)"}, "none",
       build_tvcor},
      {"cor_froa", "Corollary froa", "An A type Cauchy determinant evaluation", E, 1, 5, {"x: n", "a: n", "t: 1"},
       "row i times theta(t) prod_k theta(a_k x_i)", build_froa},
      {"cor_adetcor", "Corollary adetcor", "An A type determinant evaluation", E, 1, 4,
       {"x: n", "a: n+1", "b: 1", "t: 1", ctheta, "b_k_j: j per P_j, norm t a_1..a_j"},
       "rows times P_{n+1}(b); left side times theta(t); right side times P_{n+1}(b)^{n-1}", build_adetcor},
      {"thm_cdet", "Theorem cdet", "A C type determinant evaluation", E, 1, 5,
       {"x: n", "a: n", "c: n+2", ctheta, "b_k_j: j per P_j, norm (c_1..c_{n+2} a_{j+1}..a_n)^{-1}"},
       "left side times theta(c_1..c_{n+2} a_1..a_n)", build_cdet},
      {"cor_lem", "Corollary lem", "Reflection sum", E, 1, 4, {"x: n", "c: n+2"}, "none", build_lem},
      {"cor_bcdet2", "Corollary bcdet2", "A BC type determinant evaluation", E, 1, 5,
       {"x: n", "a: n", "c: n+1", ctheta, "b_k_j: j per P_j, norm -(c_1..c_{n+1} a_{j+1}..a_n)^{-1}"},
       "left side times theta(-c_1..c_{n+1} a_1..a_n)", build_bcdet2},
      {"cor_cvdet", "Corollary cvdet", "A C-dual type determinant evaluation", E, 1, 5,
       {"x: n", "a: n", "c: n", ctheta, "b_k_j: j per P_j, norm (q c_1..c_n a_{j+1}..a_n)^{-1}"},
       "left side times theta(q c_1..c_n a_1..a_n)", build_cvdet},
      {"cor_bvdet", "Corollary bvdet", "A B-dual type determinant evaluation", E, 1, 5,
       {"x: n", "a: n", "c: n", ctheta, "b_k_j: j per P_j, norm -(c_1..c_n a_{j+1}..a_n)^{-1}"},
       "left side times theta(-c_1..c_n a_1..a_n)", build_bvdet},
      {"cor_bdet", "Corollary bdet", "A B type determinant evaluation", E, 1, 5,
       {"x: n", "a: n", "c: n-1", ctheta, "b_k_j: j per P_j, norm (c_1..c_{n-1} a_{j+1}..a_n)^{-1}"},
       "left side times theta(c_1..c_{n-1} a_1..a_n)", build_bdet},
      {"cor_ddet", "Corollary ddet", "A D type determinant evaluation", E, 2, 5,
       {"x: n", "a: n", "c: n-2", ctheta, "b_k_j: j per P_j, norm (c_1..c_{n-2} a_{j+1}..a_n)^{-1}"},
       "left side times theta(c_1..c_{n-2} a_1..a_n)", build_ddet},
      {"cor_apoldet", "Corollary apoldet", "An A type polynomial determinant", P, 1, 5,
       {"x: n", "a: n", "t: 1", coeffs + ", degree j, top coefficient from norm t a_1..a_j"}, "left side times (1 - t)",
       build_apoldet},
      {"cor_apoldet2", "Corollary apoldet2", "An A type polynomial determinant", P, 1, 5,
       {"x: n", "a: n", coeffs + ", degree j-1"}, "none", build_apoldet2},
      {"cor_adetcorr", "Corollary adetcorr", "An A type polynomial determinant", P, 1, 5,
       {"x: n", "b: 1", "y: n+1", coeffs + ", degree j-1, constant term 1"},
       "rows times Q(b); right side times Q(b)^{n-1}", build_adetcorr},
      {"cor_cdetr", "Corollary cdetr", "A C type polynomial determinant", P, 1, 5,
       {"x: n", "a: n", "c: n+2", coeffs + ", degree j, norm (c_1..c_{n+2} a_{j+1}..a_n)^{-1}"},
       "left side times (1 - c_1..c_{n+2} a_1..a_n)", build_cdetr},
      {"cor_bdetr", "Corollary bdetr", "A B type polynomial determinant", P, 1, 5,
       {"x: n", "a: n", "c: n+1", coeffs + ", degree j, norm -(c_1..c_{n+1} a_{j+1}..a_n)^{-1}"},
       "left side times (1 + c_1..c_{n+1} a_1..a_n)", build_bdetr},
      {"cor_ddetr", "Corollary ddetr", "A D type polynomial determinant", P, 1, 5,
       {"x: n", "a: n", "c: n", coeffs + ", degree j, norm -(c_1..c_n a_{j+1}..a_n)^{-1}"},
       "left side times (1 + c_1..c_n a_1..a_n)", build_ddetr},
      {"cor_cdetr1", "Corollary cdetr1", "A C type polynomial determinant", P, 1, 5,
       {"x: n", "a: n", "c: n+1", coeffs + ", degree j-1"}, "none", build_cdetr1},
      {"cor_bdetr1", "Corollary bdetr1", "A B type polynomial determinant", P, 1, 5,
       {"x: n", "a: n", "c: n", coeffs + ", degree j-1"}, "none", build_bdetr1},
      {"cor_ddetr1", "Corollary ddetr1", "A D type polynomial determinant", P, 1, 5,
       {"x: n", "a: n", "c: n-1", coeffs + ", degree j-1"}, "none", build_ddetr1},
      {"cor_cdetr1cor", "Corollary cdetr1cor", "A C type polynomial determinant", P, 1, 5,
       {"x: n", "c: n+1", coeffs + ", degree j-1"}, "none",
       [](int n) { return build_rcor("cor_cdetr1cor", 0, n); }},
      {"cor_bdetr1cor", "Corollary bdetr1cor", "A B type polynomial determinant", P, 1, 5,
       {"x: n", "c: n", coeffs + ", degree j-1"}, "none", [](int n) { return build_rcor("cor_bdetr1cor", 1, n); }},
      {"cor_ddetr1cor", "Corollary ddetr1cor", "A D type polynomial determinant", P, 1, 5,
       {"x: n", "c: n-1", coeffs + ", degree j-1"}, "none", [](int n) { return build_rcor("cor_ddetr1cor", 2, n); }},
  };
  return r;
}

std::string rational_str(const Rational& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
}

nlohmann::json value_json(const Rational& c, int qpow) {
  if (qpow == 0) return rational_str(c);
  return {{"coeff", rational_str(c)}, {"qpow", qpow}};
}

}  // namespace

const std::vector<IdentityCase>& list_identities() {
  static const std::vector<IdentityCase> registry = make_registry();
  return registry;
}

const IdentityCase& find_identity(const std::string& id) {
  for (const auto& c : list_identities()) {
    if (c.id == id) return c;
  }
  fail(ErrorKind::UnknownId, "unknown identity id: " + id);
}

CaseInstance instantiate(const IdentityCase& c, int n) {
  if (n < c.n_min || n > c.n_max) {
    fail(ErrorKind::Usage, c.id + ": n must be in " + std::to_string(c.n_min) + ".." + std::to_string(c.n_max));
  }
  return c.build(n);
}

Binding sample_binding(const CaseInstance& inst, std::uint64_t seed, int order) {
  Binding b{inst.id, inst.n, seed, inst.mode == Mode::Polynomial ? 0 : order, {}};
  std::string last;
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::mt19937_64 rng(mix_seed(inst.id, inst.n, seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt)));
    b.values.assign(static_cast<std::size_t>(inst.vars.size()), std::nullopt);
    for (const auto& role : inst.roles) {
      const bool formal = inst.mode == Mode::Polynomial && role.kind == RoleKind::Variable;
      for (int v : role.vars) {
        if (!formal) b.values[static_cast<std::size_t>(v)] = ExactValue{sample_rational(rng), 0};
      }
    }
    ExactEvaluator ev(b.values);
    auto d = ev.degeneracy(inst.lhs);
    if (!d) d = ev.degeneracy(inst.rhs);
    if (!d) return b;
    last = *d;
  }
  fail(ErrorKind::Degenerate, inst.id + ": no generic binding found (" + last + ")");
}

CaseVerdict verify_exact(const CaseInstance& inst, const Binding& binding) {
  if (binding.values.size() != static_cast<std::size_t>(inst.vars.size())) {
    fail(ErrorKind::Constraint, inst.id + ": binding does not match the case variables");
  }
  for (const auto& v : binding.values) {
    if (v && v->coeff == 0) fail(ErrorKind::Constraint, inst.id + ": parameter values must be nonzero");
  }
  const int order = inst.mode == Mode::Polynomial ? 0 : binding.order;
  ExactEvaluator ev(binding.values);
  const NomeSeries l = ev.eval(inst.lhs, order);
  const NomeSeries r = ev.eval(inst.rhs, order);
  return CaseVerdict{inst.id, inst.n, binding.seed, order, series_equal(l, r, order)};
}

CaseVerdict verify_symbolic_small(const CaseInstance& inst, int order, std::uint64_t seed) {
  if (inst.n > 2) fail(ErrorKind::Usage, "symbolic runs need n <= 2");
  std::mt19937_64 rng(mix_seed(inst.id, inst.n, seed));
  std::vector<std::optional<ExactValue>> values(static_cast<std::size_t>(inst.vars.size()));
  int formal = 0;
  for (const auto& role : inst.roles) {
    for (int v : role.vars) {
      if (role.kind == RoleKind::Constant) {
        values[static_cast<std::size_t>(v)] = ExactValue{sample_rational(rng), 0};
      } else {
        ++formal;
      }
    }
  }
  if (formal > 8) {
    fail(ErrorKind::Usage, inst.id + ": " + std::to_string(formal) + " formal variables exceed the budget of 8");
  }
  if (inst.mode == Mode::Polynomial) order = 0;
  ExactEvaluator ev(values);
  const NomeSeries l = ev.eval(inst.lhs, order);
  const NomeSeries r = ev.eval(inst.rhs, order);
  return CaseVerdict{inst.id, inst.n, seed, order, series_equal(l, r, order)};
}

nlohmann::json case_verdict_to_json(const CaseVerdict& v) {
  nlohmann::json j = {{"id", v.id}, {"n", v.n}, {"seed", v.seed}, {"order", v.order}};
  const nlohmann::json verdict = verdict_to_json(v.verdict);
  for (auto& [key, val] : verdict.items()) j[key] = val;
  return j;
}

nlohmann::json binding_to_json(const CaseInstance& inst, const Binding& b) {
  nlohmann::json values = nlohmann::json::object();
  for (int i = 0; i < inst.vars.size(); ++i) {
    const auto& v = b.values[static_cast<std::size_t>(i)];
    values[inst.vars.name(i)] = v ? value_json(v->coeff, v->qpow) : nlohmann::json("formal");
  }
  nlohmann::json derived = nlohmann::json::object();
  ExactEvaluator ev(b.values);
  for (const auto& [name, m] : inst.derived) {
    const MonomialArg a = ev.arg(m);
    derived[name] = a.has_variables() ? nlohmann::json("formal") : value_json(a.coeff, a.qpow);
  }
  return {{"id", b.id}, {"n", b.n}, {"seed", b.seed}, {"order", b.order}, {"values", values}, {"derived", derived}};
}

nlohmann::json identity_to_json(const IdentityCase& c) {
  return {{"id", c.id},
          {"paper_label", c.paper_label},
          {"title", c.title},
          {"mode", c.mode == Mode::Elliptic ? "elliptic" : "p0"},
          {"n_min", c.n_min},
          {"n_max", c.n_max},
          {"params", c.params},
          {"clearing", c.clearing}};
}

// ---------------------------------------------------------------- chains

const std::vector<ChainStep>& specialization_chain() {
  static const std::vector<ChainStep> steps = {
      {"thm_cdet", "cor_bcdet2", 2, ExactValue{Rational(-1), 0}, ChainFactor::ThetaNegOverX},
      {"cor_bcdet2", "cor_cvdet", 1, ExactValue{Rational(-1), 1}, ChainFactor::ThetaNegQ},
      {"cor_bvdet", "cor_bdet", 0, ExactValue{Rational(-1), 0}, ChainFactor::ThetaNegOverX},
      {"cor_bdet", "cor_ddet", -1, ExactValue{Rational(1), 0}, ChainFactor::Theta},
  };
  return steps;
}

Verdict verify_chain_step(const ChainStep& step, int n, std::uint64_t seed, int order) {
  const CaseInstance parent = instantiate(find_identity(step.parent), n);
  const CaseInstance child = instantiate(find_identity(step.child), n);
  const std::string fixed = "c" + std::to_string(n + step.fixed_offset);
  const auto fixed_index = parent.vars.find(fixed);
  if (!fixed_index) fail(ErrorKind::Internal, step.parent + " has no variable " + fixed);

  std::vector<Expr> factor;
  for (int i = 1; i <= n; ++i) {
    const auto xi = child.vars.find("x" + std::to_string(i));
    const Mono x = Mono::var(*xi);
    switch (step.factor) {
      case ChainFactor::ThetaNegOverX: factor.push_back(x.inverse() * theta(-x)); break;
      case ChainFactor::ThetaNegQ: factor.push_back(theta(-(Mono::q(1) * x))); break;
      case ChainFactor::Theta: factor.push_back(theta(x)); break;
    }
  }
  const Expr f = product(std::move(factor));

  std::string last;
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Binding cb = sample_binding(child, seed + 7919ull * static_cast<std::uint64_t>(attempt), order);
    std::vector<std::optional<ExactValue>> pv(static_cast<std::size_t>(parent.vars.size()));
    for (int i = 0; i < parent.vars.size(); ++i) {
      if (i == *fixed_index) {
        pv[static_cast<std::size_t>(i)] = step.value;
        continue;
      }
      const auto ci = child.vars.find(parent.vars.name(i));
      if (!ci) fail(ErrorKind::Internal, step.child + " has no variable " + parent.vars.name(i));
      pv[static_cast<std::size_t>(i)] = cb.values[static_cast<std::size_t>(*ci)];
    }
    ExactEvaluator pe(pv);
    auto d = pe.degeneracy(parent.lhs);
    if (!d) d = pe.degeneracy(parent.rhs);
    if (d) {
      last = *d;
      continue;
    }
    ExactEvaluator ce(cb.values);
    Verdict lv = series_equal(pe.eval(parent.lhs, order), ce.eval(f * child.lhs, order), order);
    if (!lv.equal) {
      lv.note = "left sides differ";
      return lv;
    }
    Verdict rv = series_equal(pe.eval(parent.rhs, order), ce.eval(f * child.rhs, order), order);
    if (!rv.equal) rv.note = "right sides differ";
    return rv;
  }
  fail(ErrorKind::Degenerate, step.parent + " -> " + step.child + ": no generic binding (" + last + ")");
}

Verdict verify_degeneration(const std::string& id, int n) {
  int kind = 0;
  Family classical = Family::C;
  if (id == "cor_cdetr1cor") {
    kind = 0;
    classical = Family::C;
  } else if (id == "cor_bdetr1cor") {
    kind = 1;
    classical = Family::B;
  } else if (id == "cor_ddetr1cor") {
    kind = 2;
    classical = Family::D;
  } else {
    fail(ErrorKind::Usage, id + " has no classical degeneration");
  }
  if (n < 1 || n > 6) fail(ErrorKind::Usage, "n must be in 1..6");
  VarSpace vs;
  const auto x = vs.add_family("x", n);
  std::vector<Fun> ones(static_cast<std::size_t>(n), [](const Mono&) { return constant(Rational(1)); });
  const Expr lhs = cor_lhs(kind, x, {}, ones);
  const Rational sign((n / 2) % 2 == 0 ? 1 : -1);
  ExactEvaluator ev(std::vector<std::optional<ExactValue>>(static_cast<std::size_t>(n)));
  const NomeSeries l = ev.eval(lhs, 0);
  Verdict v = series_equal(l, ev.eval(weyl_determinant(classical, x), 0) * sign, 0);
  if (!v.equal) {
    v.note = "determinant differs from the reversed classical determinant";
    return v;
  }
  v = series_equal(l, NomeSeries::constant(weyl_denominator_product(classical, n), 0) * sign, 0);
  if (!v.equal) v.note = "determinant differs from the classical product";
  return v;
}

}  // namespace thetadet
