#include "thetadet/expr.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "thetadet/error.hpp"

namespace thetadet {

int VarSpace::add(const std::string& name) {
  if (find(name)) fail(ErrorKind::Internal, "duplicate variable name " + name);
  names_.push_back(name);
  return size() - 1;
}

std::vector<int> VarSpace::add_family(const std::string& name, int count) {
  std::vector<int> out;
  for (int i = 1; i <= count; ++i) out.push_back(add(name + std::to_string(i)));
  return out;
}

std::optional<int> VarSpace::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

Mono Mono::var(int index, int exponent) {
  Mono m;
  if (exponent != 0) m.vars.push_back({index, exponent});
  return m;
}

Mono Mono::prod(const std::vector<int>& indices, int exponent) {
  Mono m;
  for (int i : indices) m = m * var(i, exponent);
  return m;
}

Mono Mono::operator*(const Mono& other) const {
  Mono r;
  r.coeff = coeff * other.coeff;
  r.qpow = qpow + other.qpow;
  auto a = vars.begin();
  auto b = other.vars.begin();
  while (a != vars.end() || b != other.vars.end()) {
    if (b == other.vars.end() || (a != vars.end() && a->first < b->first)) {
      r.vars.push_back(*a++);
    } else if (a == vars.end() || b->first < a->first) {
      r.vars.push_back(*b++);
    } else {
      const int e = a->second + b->second;
      if (e != 0) r.vars.push_back({a->first, e});
      ++a;
      ++b;
    }
  }
  return r;
}

Mono Mono::inverse() const {
  if (coeff == 0) fail(ErrorKind::Domain, "inverse of a zero monomial");
  Mono r;
  r.coeff = Rational(1) / coeff;
  r.qpow = -qpow;
  for (const auto& [i, e] : vars) r.vars.push_back({i, -e});
  return r;
}

Mono Mono::pow(int k) const {
  Mono r;
  r.coeff = thetadet::pow(coeff, k);
  r.qpow = qpow * k;
  if (k != 0) {
    for (const auto& [i, e] : vars) r.vars.push_back({i, e * k});
  }
  return r;
}

int Mono::exponent(int index) const {
  for (const auto& [i, e] : vars) {
    if (i == index) return e;
  }
  return 0;
}

Mono operator*(const Rational& c, const Mono& m) { return Mono::constant(c) * m; }

namespace {

Expr make(Node n) { return Expr(std::make_shared<const Node>(std::move(n))); }

Expr leaf(NodeKind kind, const Mono& arg, int step) {
  if (step < 1) fail(ErrorKind::Usage, "nome step must be >= 1");
  Node n;
  n.kind = kind;
  n.mono = arg;
  n.step = step;
  return make(std::move(n));
}

}  // namespace

Expr::Expr() : node_(std::make_shared<const Node>()) {}

NodeKind Expr::kind() const { return node_->kind; }

Expr mono(const Mono& m) {
  Node n;
  n.kind = NodeKind::Mono;
  n.mono = m;
  return make(std::move(n));
}

Expr constant(const Rational& c) { return mono(Mono::constant(c)); }
Expr theta(const Mono& arg, int step) { return leaf(NodeKind::Theta, arg, step); }
Expr theta_sum(const Mono& arg, int step) { return leaf(NodeKind::ThetaSum, arg, step); }
Expr poch(const Mono& arg, int step) { return leaf(NodeKind::Poch, arg, step); }

Expr sum(std::vector<Expr> terms) {
  Node n;
  n.kind = NodeKind::Sum;
  n.children = std::move(terms);
  return make(std::move(n));
}

Expr product(std::vector<Expr> factors) {
  Node n;
  n.kind = NodeKind::Product;
  n.children = std::move(factors);
  return make(std::move(n));
}

Expr det(int dim, std::vector<Expr> entries) {
  if (dim < 1 || static_cast<std::size_t>(dim * dim) != entries.size()) {
    fail(ErrorKind::Usage, "determinant needs n*n entries");
  }
  Node n;
  n.kind = NodeKind::Det;
  n.dim = dim;
  n.children = std::move(entries);
  return make(std::move(n));
}

Expr power(const Expr& e, int k) {
  if (k < 0) fail(ErrorKind::Usage, "negative power of an expression");
  return product(std::vector<Expr>(static_cast<std::size_t>(k), e));
}

Expr theta_pm(const Mono& x, const Mono& y, int step) {
  return product({theta(x * y, step), theta(x / y, step)});
}

Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
Expr operator-(const Expr& a) {
  if (a.kind() == NodeKind::Mono) return mono(-a.node().mono);
  return product({constant(-1), a});
}
Expr operator-(const Expr& a, const Expr& b) { return sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
Expr operator*(const Mono& m, const Expr& e) {
  if (e.kind() == NodeKind::Mono) return mono(m * e.node().mono);
  return product({mono(m), e});
}

Expr substitute(const Expr& e, int index, const Mono& value) {
  const Node& n = e.node();
  Node out = n;
  if (n.kind == NodeKind::Mono || n.kind == NodeKind::Theta || n.kind == NodeKind::ThetaSum ||
      n.kind == NodeKind::Poch) {
    const int k = n.mono.exponent(index);
    if (k == 0) return e;
    out.mono = n.mono * Mono::var(index, -k) * value.pow(k);
    return make(std::move(out));
  }
  for (auto& c : out.children) c = substitute(c, index, value);
  return make(std::move(out));
}

bool ExactEvaluator::Key::operator<(const Key& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (step != o.step) return step < o.step;
  if (qpow != o.qpow) return qpow < o.qpow;
  if (exps != o.exps) return exps < o.exps;
  return coeff < o.coeff;
}

ExactEvaluator::ExactEvaluator(std::vector<std::optional<ExactValue>> values)
    : values_(std::move(values)), slot_(values_.size(), -1) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i]) {
      if (values_[i]->coeff == 0) fail(ErrorKind::Domain, "variable bound to zero");
      continue;
    }
    slot_[i] = nformal_++;
    formal_.push_back(static_cast<int>(i));
  }
  if (nformal_ > kMaxVars) {
    fail(ErrorKind::Usage, "too many formal variables: " + std::to_string(nformal_));
  }
}

MonomialArg ExactEvaluator::arg(const Mono& m) const {
  MonomialArg a;
  a.coeff = m.coeff;
  a.qpow = m.qpow;
  for (const auto& [i, e] : m.vars) {
    if (i < 0 || static_cast<std::size_t>(i) >= values_.size()) {
      fail(ErrorKind::Internal, "variable index out of range");
    }
    const auto& v = values_[static_cast<std::size_t>(i)];
    if (v) {
      a.coeff *= pow(v->coeff, e);
      a.qpow += v->qpow * e;
    } else {
      const int s = slot_[static_cast<std::size_t>(i)];
      a.exps.set(s, a.exps[s] + e);
    }
  }
  return a;
}

int ExactEvaluator::min_qexp(const Expr& e) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Mono:
      return arg(n.mono).qpow;
    case NodeKind::Theta:
      return theta_min_qexp(ThetaCall{arg(n.mono), n.step});
    case NodeKind::ThetaSum:
      return theta_sum_min_qexp(ThetaCall{arg(n.mono), n.step});
    case NodeKind::Poch:
      return pochhammer_min_qexp(arg(n.mono), n.step);
    case NodeKind::Sum: {
      int lo = 0;
      bool first = true;
      for (const auto& c : n.children) {
        const int v = min_qexp(c);
        lo = first ? v : std::min(lo, v);
        first = false;
      }
      return lo;
    }
    case NodeKind::Product: {
      int total = 0;
      for (const auto& c : n.children) total += min_qexp(c);
      return total;
    }
    case NodeKind::Det: {
      int lo = 0;
      bool first = true;
      for (const auto& c : n.children) {
        const int v = min_qexp(c);
        lo = first ? v : std::min(lo, v);
        first = false;
      }
      return n.dim * lo;
    }
  }
  fail(ErrorKind::Internal, "unknown node kind");
}

NomeSeries ExactEvaluator::cached(NodeKind kind, const MonomialArg& a, int step, int order) {
  Key key{kind, a.coeff, a.exps, a.qpow, step};
  auto it = cache_.find(key);
  if (it != cache_.end() && it->second.order() >= order) return it->second.truncate(order);
  NomeSeries s(nformal_, order);
  const ThetaCall call{a, step};
  switch (kind) {
    case NodeKind::Theta:
      s = theta_expand(nformal_, call, order);
      break;
    case NodeKind::ThetaSum:
      s = theta_sum_form(nformal_, call, order);
      break;
    default:
      s = pochhammer_inf(nformal_, a, step, order);
      break;
  }
  cache_.insert_or_assign(key, s);
  return s;
}

NomeSeries ExactEvaluator::eval(const Expr& e, int order) {
  return eval_node(e.node(), order).truncate(order);
}

NomeSeries ExactEvaluator::eval_node(const Node& n, int order) {
  switch (n.kind) {
    case NodeKind::Mono: {
      const MonomialArg a = arg(n.mono);
      return NomeSeries::monomial(a.coeff_poly(nformal_), a.qpow, order);
    }
    case NodeKind::Theta:
    case NodeKind::ThetaSum:
    case NodeKind::Poch:
      return cached(n.kind, arg(n.mono), n.step, order);
    case NodeKind::Sum: {
      NomeSeries acc(nformal_, order);
      for (const auto& c : n.children) acc = acc + eval_node(c.node(), order);
      return acc;
    }
    case NodeKind::Product: {
      std::vector<int> bounds;
      for (const auto& c : n.children) bounds.push_back(min_qexp(c));
      const int total = std::accumulate(bounds.begin(), bounds.end(), 0);
      NomeSeries acc = NomeSeries::one(nformal_, order - total);
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        acc = acc * eval_node(n.children[i].node(), order - (total - bounds[i]));
        if (acc.is_zero()) return NomeSeries(nformal_, order);
      }
      return acc.truncate(order);
    }
    case NodeKind::Det: {
      int lo = 0;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        const int v = min_qexp(n.children[i]);
        lo = i == 0 ? v : std::min(lo, v);
      }
      const int entry_order = order - (n.dim - 1) * lo;
      std::vector<NomeSeries> entries;
      entries.reserve(n.children.size());
      for (const auto& c : n.children) entries.push_back(eval_node(c.node(), entry_order));
      return det_division_free(entries, n.dim).truncate(order);
    }
  }
  fail(ErrorKind::Internal, "unknown node kind");
}

std::optional<std::string> ExactEvaluator::degeneracy(const Expr& e) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Mono:
      return std::nullopt;
    case NodeKind::Theta:
    case NodeKind::ThetaSum: {
      const MonomialArg a = arg(n.mono);
      if (!a.has_variables() && a.coeff == 1 && a.qpow % n.step == 0) {
        return "theta argument q^" + std::to_string(a.qpow) + " is a zero";
      }
      return std::nullopt;
    }
    case NodeKind::Poch: {
      const MonomialArg a = arg(n.mono);
      if (!a.has_variables() && a.coeff == 1 && a.qpow <= 0 && a.qpow % n.step == 0) {
        return "Pochhammer argument q^" + std::to_string(a.qpow) + " gives a zero factor";
      }
      return std::nullopt;
    }
    case NodeKind::Sum: {
      const bool flat = std::all_of(n.children.begin(), n.children.end(),
                                    [](const Expr& c) { return c.kind() == NodeKind::Mono; });
      if (flat && !n.children.empty()) {
        int hi = 0;
        for (const auto& c : n.children) hi = std::max(hi, arg(c.node().mono).qpow);
        if (eval_node(n, hi).is_zero()) return std::string("a sum of monomials vanishes");
        return std::nullopt;
      }
      [[fallthrough]];
    }
    default:
      for (const auto& c : n.children) {
        if (auto d = degeneracy(c)) return d;
      }
      return std::nullopt;
  }
}

NomeSeries det_division_free(const std::vector<NomeSeries>& entries, int n) {
  if (n < 1 || n > 6) fail(ErrorKind::Usage, "determinant size must be in 1..6");
  if (entries.size() != static_cast<std::size_t>(n * n)) fail(ErrorKind::Usage, "determinant needs n*n entries");
  // Laplace expansion along the rows, memoised on the set of columns used by
  // the rows above; each minor is a signed sum over permutations.
  const int full = (1 << n) - 1;
  std::vector<std::optional<NomeSeries>> minor(static_cast<std::size_t>(full + 1));
  // minor[mask]: determinant of rows k..n-1 with the columns outside mask,
  // where k = popcount(mask).
  const int nvars = entries.front().nvars();
  minor[static_cast<std::size_t>(full)] = NomeSeries::one(nvars, std::numeric_limits<int>::max() / 4);
  for (int mask = full - 1; mask >= 0; --mask) {
    const int row = __builtin_popcount(static_cast<unsigned>(mask));
    std::optional<NomeSeries> acc;
    int sign = 1;
    for (int col = 0; col < n; ++col) {
      if (mask & (1 << col)) continue;
      const NomeSeries& rest = *minor[static_cast<std::size_t>(mask | (1 << col))];
      NomeSeries term = entries[static_cast<std::size_t>(row * n + col)] * rest;
      if (sign < 0) term = -term;
      acc = acc ? *acc + term : term;
      sign = -sign;
    }
    minor[static_cast<std::size_t>(mask)] = std::move(acc);
  }
  return *minor[0];
}

}  // namespace thetadet
